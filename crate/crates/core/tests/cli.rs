use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL_VERIFY: &str = r#""verify": {"trace_words": 40, "trace_reps": 40, "oracle_samples": 200,
    "fricke_samples": 2000, "rotation_samples": 100, "flow_samples": 50"#;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("charvar-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn lab(args: &[&str], dir: &Path, config: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_charvar-lab"));
    cmd.args(args).arg("--out").arg(dir.join("out"));
    if let Some(text) = config {
        let path = dir.join("config.json");
        fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn orbit_output_is_byte_identical_across_runs() {
    let dir = scratch("det");
    let cfg = r#"{"seed": 9, "orbit": {"steps": 300, "mode": "random"}}"#;
    let first = lab(&["orbit", "--svg"], &dir, Some(cfg));
    assert!(first.status.success(), "{}", stderr(&first));
    let csv = fs::read(dir.join("out/orbit.csv")).unwrap();
    let svg = fs::read(dir.join("out/orbit.svg")).unwrap();
    let second = lab(&["orbit", "--svg"], &dir, Some(cfg));
    assert!(second.status.success());
    assert_eq!(csv, fs::read(dir.join("out/orbit.csv")).unwrap());
    assert_eq!(svg, fs::read(dir.join("out/orbit.svg")).unwrap());
    assert!(String::from_utf8(csv).unwrap().starts_with("# config: {"));
}

#[test]
fn injected_fault_fails_and_names_the_map() {
    let dir = scratch("fault");
    let cfg = format!("{{{SMALL_VERIFY}, \"fault\": \"N13.W\"}}}}");
    let o = lab(&["verify"], &dir, Some(&cfg));
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let report = fs::read_to_string(dir.join("out/verify.json")).unwrap();
    assert!(report.contains("\"oracle N13.W\""));
    assert!(stdout(&o).contains("N13.W"));
    assert!(!stdout(&o).contains("FAIL oracle N13.T"));
}

#[test]
fn clean_verify_passes() {
    let dir = scratch("clean");
    let o = lab(&["verify"], &dir, Some(&format!("{{{SMALL_VERIFY}}}}}")));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_verdict_does_not_depend_on_seed() {
    let dir = scratch("seeds");
    let cfg = format!("{{{SMALL_VERIFY}}}}}");
    for seed in ["1", "77", "123456789"] {
        let o = lab(&["verify", "--seed", seed], &dir, Some(&cfg));
        assert_eq!(o.status.code(), Some(0), "seed {seed}: {}", stdout(&o));
    }
}

#[test]
fn bad_config_exits_2_naming_the_field() {
    let dir = scratch("bad");
    let o = lab(&["volume"], &dir, Some(r#"{"volume": {"genus": 2}}"#));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("volume.genus"), "{}", stderr(&o));

    let o = lab(&["orbit"], &dir, Some(r#"{"orbit": {"stepz": 3}}"#));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("stepz"), "{}", stderr(&o));

    let o = lab(&["orbit"], &dir, Some(r#"{"program": ["T", "Q"]}"#));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_step_orbit_has_a_single_row() {
    let dir = scratch("zero");
    let o = lab(&["orbit"], &dir, Some(r#"{"orbit": {"steps": 0}}"#));
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.join("out/orbit.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2, "header plus the start point");
}

#[test]
fn unknown_subcommand_is_rejected() {
    let dir = scratch("unknown");
    let o = lab(&["integrate"], &dir, None);
    assert!(!o.status.success());
}
