//! Batch commands over a JSON configuration. Every command is a pure function of the
//! configuration (seed included) and returns the files it would write, so callers can
//! compare outputs byte for byte before touching the disk.

pub mod config;
pub mod output;
pub mod verify;

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;

pub use config::ExperimentConfig;
pub use verify::VerifyReport;

use crate::equidist::{doubling_slope, equidistribute, orbit_angles, rational_screen, EquidistReport, SCREEN_QMAX, SCREEN_TOL};
use crate::error::{LabError, Result};
use crate::flow::{flow_separating, SeparatingDecomposition};
use crate::measures::{
    ball_volume, ergodicity, mc_identity_density, smeared_expectation, volume_series, ErgodicityReport,
    ErgodicitySpec, RelativeSampler, Window,
};
use crate::rng::{derive_seed, stream};
use crate::twist::{coords_from_rep, ellipse_form, orbit, random_program, CharacterPoint};
use crate::word::{Representation, Surface, Twist};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Orbit,
    Equidistribute,
    Ergodicity,
    Volume,
    Flow,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Verify,
        Command::Orbit,
        Command::Equidistribute,
        Command::Ergodicity,
        Command::Volume,
        Command::Flow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Orbit => "orbit",
            Command::Equidistribute => "equidistribute",
            Command::Ergodicity => "ergodicity",
            Command::Volume => "volume",
            Command::Flow => "flow",
        }
    }
}

/// A file a command produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// False when a verification check failed; the binary then exits with status 1.
    pub passed: bool,
    pub summary: String,
}

impl Outcome {
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        for a in &self.artifacts {
            std::fs::write(dir.join(&a.name), &a.contents)?;
        }
        Ok(())
    }

    pub fn artifact(&self, name: &str) -> Option<&str> {
        self.artifacts.iter().find(|a| a.name == name).map(|a| a.contents.as_str())
    }
}

fn artifact(name: &str, contents: String) -> Artifact {
    Artifact {
        name: name.into(),
        contents,
    }
}

pub fn run(cmd: Command, cfg: &ExperimentConfig, svg: bool) -> Result<Outcome> {
    cfg.validate()?;
    match cmd {
        Command::Verify => cmd_verify(cfg),
        Command::Orbit => cmd_orbit(cfg, svg),
        Command::Equidistribute => cmd_equidistribute(cfg, svg),
        Command::Ergodicity => cmd_ergodicity(cfg),
        Command::Volume => cmd_volume(cfg),
        Command::Flow => cmd_flow(cfg),
    }
}

pub fn cmd_verify(cfg: &ExperimentConfig) -> Result<Outcome> {
    let report = verify::run(cfg)?;
    let mut summary = String::new();
    for c in &report.checks {
        summary.push_str(&format!(
            "{} {:<32} max dev {:.3e} (tol {:.0e}, n = {})\n",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.max_dev,
            c.tol,
            c.samples
        ));
    }
    if !report.passed {
        summary.push_str(&format!("failing: {}\n", report.failing.join(", ")));
    }
    Ok(Outcome {
        passed: report.passed,
        artifacts: vec![artifact("verify.json", output::json(&report))],
        summary,
    })
}

const P_START: u64 = 100;
const P_PROGRAM: u64 = 101;
const P_FLOW: u64 = 102;

/// The configured start point, else a sample from the boundary window (when targets are
/// given) or from Haar measure.
fn start_point(cfg: &ExperimentConfig) -> Result<CharacterPoint> {
    if let Some(p) = cfg.start_point() {
        return Ok(p);
    }
    let mut rng = stream(derive_seed(cfg.seed, P_START), 0);
    match &cfg.targets {
        Some(t) => {
            let s = RelativeSampler::new(cfg.surface()?, Window::new(t.clone(), cfg.window))?;
            Ok(s.sample(&mut rng)?.1)
        }
        None => coords_from_rep(&Representation::haar(3, &mut rng)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub config: ExperimentConfig,
    pub steps: usize,
    pub start: CharacterPoint,
    pub max_fricke_residual: f64,
    pub max_boundary_drift: f64,
    /// Largest `|quadric - R|` along the orbit, for single-twist programs.
    pub max_quadric_dev: Option<f64>,
}

pub fn cmd_orbit(cfg: &ExperimentConfig, svg: bool) -> Result<Outcome> {
    let twists = cfg.twists()?;
    let surface = cfg.surface()?;
    let start = start_point(cfg)?;
    let n = cfg.orbit.steps;
    let program = if cfg.orbit.mode == "random" && n > 0 {
        random_program(&twists, n, &mut stream(derive_seed(cfg.seed, P_PROGRAM), 0))
    } else {
        twists.clone()
    };
    let pts = orbit(&program, &start, n)?;
    let b0 = start.boundary(surface);
    let single = twists.iter().all(|t| *t == twists[0]);
    let form = ellipse_form(twists[0], &start).ok();
    let max_quadric_dev = match (&form, single) {
        (Some(f), true) => Some(pts.iter().map(|q| (f.quadric(q) - f.residual).abs()).fold(0.0, f64::max)),
        _ => None,
    };
    let report = OrbitReport {
        config: cfg.clone(),
        steps: n,
        start,
        max_fricke_residual: pts.iter().map(|q| q.fricke().abs()).fold(0.0, f64::max),
        max_boundary_drift: pts.iter().map(|q| q.boundary(surface).max_diff(&b0)).fold(0.0, f64::max),
        max_quadric_dev,
    };
    let echo = cfg.echo();
    let mut artifacts = vec![
        artifact("orbit.csv", output::orbit_csv(&echo, &pts)),
        artifact("orbit.json", output::json(&report)),
    ];
    if svg {
        let (axes, plane): ([&str; 2], Vec<[f64; 2]>) = match &form {
            Some(f) => (f.plane, pts.iter().map(|q| f.plane_point(q)).collect()),
            None => (["x", "z"], pts.iter().map(|q| [q.x, q.z]).collect()),
        };
        let title = format!("orbit of {} under {:?}", surface, cfg.program);
        artifacts.push(artifact("orbit.svg", output::scatter_svg(&echo, &title, axes, &plane)));
    }
    let summary = format!(
        "{} points, max Fricke residual {:.3e}, boundary drift {:.3e}{}\n",
        pts.len(),
        report.max_fricke_residual,
        report.max_boundary_drift,
        max_quadric_dev.map(|d| format!(", quadric deviation {d:.3e}")).unwrap_or_default()
    );
    Ok(Outcome {
        artifacts,
        passed: true,
        summary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EquidistCommandReport {
    pub config: ExperimentConfig,
    pub start: CharacterPoint,
    pub stats: EquidistReport,
    /// `(N, D*_N)` along the doubling sequence ending at the configured point count.
    pub doubling: Vec<(usize, f64)>,
    pub doubling_slope: f64,
    /// Star discrepancy below 0.05 and within twice the reference rotation's.
    pub equidistributed: bool,
}

/// A Haar point whose rotation number passes the rational screen.
pub fn screened_point(twist: Twist, seed: u64) -> Result<CharacterPoint> {
    let mut rng = stream(derive_seed(seed, P_START), 1);
    for _ in 0..10_000 {
        let p = coords_from_rep(&Representation::haar(3, &mut rng))?;
        if let Ok(f) = ellipse_form(twist, &p) {
            if rational_screen(f.rotation_fraction(), SCREEN_QMAX, SCREEN_TOL).is_none() {
                return Ok(p);
            }
        }
    }
    Err(LabError::Invalid("no screened point found".into()))
}

pub fn cmd_equidistribute(cfg: &ExperimentConfig, svg: bool) -> Result<Outcome> {
    let surface = cfg.surface()?;
    let twist = match &cfg.equidistribute.twist {
        Some(t) => Twist::lookup(surface, t)?,
        None => cfg.twists()?[0],
    };
    let start = match cfg.start_point() {
        Some(p) => p,
        None => screened_point(twist, cfg.seed)?,
    };
    let n = cfg.equidistribute.points;
    let stats = equidistribute(twist, &start, n)?;
    // keep the smallest orbit at 64 points or more
    let mut k = cfg.equidistribute.doublings;
    while k > 0 && (n >> k) < 64 {
        k -= 1;
    }
    let n0 = n >> k;
    let (doubling, slope) = if k >= 2 {
        doubling_slope(twist, &start, n0, k)?
    } else {
        (vec![(n, stats.star_discrepancy)], f64::NAN)
    };
    let equidistributed = stats.resonance.is_none()
        && stats.star_discrepancy < 0.05
        && stats.star_discrepancy <= 2.0 * stats.reference_discrepancy;
    let summary = match stats.resonance {
        Some((p, q)) => format!(
            "{twist}: resonant, rotation number {p}/{q}; {} distinct points\n",
            stats.distinct_points
        ),
        None => format!(
            "{twist}: nu {:.6}, D* {:.4e} (reference {:.4e}), KS {:.4e}, log-log slope {:.3}\n",
            stats.nu, stats.star_discrepancy, stats.reference_discrepancy, stats.ks_distance, slope
        ),
    };
    let report = EquidistCommandReport {
        config: cfg.clone(),
        start,
        stats,
        doubling,
        doubling_slope: slope,
        equidistributed,
    };
    let echo = cfg.echo();
    let mut artifacts = vec![artifact("equidistribute.json", output::json(&report))];
    if svg {
        let form = ellipse_form(twist, &start)?;
        let (_, plane, _) = orbit_angles(twist, &start, n)?;
        let title = format!("{twist} orbit, {n} points");
        artifacts.push(artifact("equidistribute.svg", output::scatter_svg(&echo, &title, form.plane, &plane)));
    }
    Ok(Outcome {
        artifacts,
        passed: true,
        summary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicityCommandReport {
    pub config: ExperimentConfig,
    pub experiment: ErgodicityReport,
    /// The same comparison for the first twist alone, which should be flagged.
    pub negative_control: ErgodicityReport,
    pub consistent: bool,
    pub control_flagged: bool,
}

pub fn cmd_ergodicity(cfg: &ExperimentConfig) -> Result<Outcome> {
    let surface = cfg.surface()?;
    if surface == Surface::N31 {
        return Err(LabError::Config {
            field: "surface".into(),
            message: "ergodicity runs on N13 or N22".into(),
        });
    }
    let twists = cfg.twists()?;
    let mut distinct = twists.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(LabError::Config {
            field: "program".into(),
            message: format!("needs at least two distinct twists; {surface} has {:?}", surface.twists()),
        });
    }
    let e = &cfg.ergodicity;
    let targets = cfg.targets.clone().unwrap_or_else(|| vec![0.0; surface.boundary_words().len()]);
    let spec = ErgodicitySpec {
        surface,
        twists,
        window: Window::new(targets, cfg.window),
        start_width: e.start_width,
        steps: e.steps,
        time_batches: e.time_batches,
        space_batches: e.space_batches,
        space_batch_size: e.space_batch_size,
        seed: cfg.seed,
    };
    let experiment = ergodicity(&spec)?;
    let control_spec = ErgodicitySpec {
        twists: vec![spec.twists[0]],
        ..spec
    };
    let negative_control = ergodicity(&control_spec)?;
    let report = ErgodicityCommandReport {
        config: cfg.clone(),
        consistent: experiment.flagged.is_empty(),
        control_flagged: !negative_control.flagged.is_empty(),
        experiment,
        negative_control,
    };
    let summary = format!(
        "max |z| {:.2} over {} functions ({}); single-twist control max |z| {:.1}\n",
        report.experiment.max_abs_z,
        report.experiment.scores.len(),
        if report.consistent { "consistent" } else { "inconsistent" },
        report.negative_control.max_abs_z
    );
    Ok(Outcome {
        artifacts: vec![artifact("ergodicity.json", output::json(&report))],
        passed: true,
        summary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub config: ExperimentConfig,
    pub k: u32,
    pub epsilon: f64,
    pub samples: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub series_value: f64,
    pub seed: u64,
    pub series_terms: u64,
    pub series_truncation_bound: f64,
    pub ball_volume: f64,
    /// Exact expectation of the estimator at this bandwidth.
    pub smeared_value: f64,
    /// `smeared_value - series_value`.
    pub bias: f64,
    pub combined_sigma: f64,
    pub agrees: bool,
    pub haar_normalization: &'static str,
}

pub fn cmd_volume(cfg: &ExperimentConfig) -> Result<Outcome> {
    let v = &cfg.volume;
    let series = volume_series(v.genus, v.series_tol)?;
    let est = mc_identity_density(v.genus, v.epsilon, v.samples, cfg.seed)?;
    let smeared = smeared_expectation(v.genus, v.epsilon);
    let bias = smeared - series.value;
    let sigma = (est.std_error.powi(2) + bias * bias).sqrt();
    let agrees = (est.estimate - series.value).abs() < 3.0 * sigma;
    let report = VolumeReport {
        config: cfg.clone(),
        k: v.genus,
        epsilon: v.epsilon,
        samples: v.samples,
        estimate: est.estimate,
        std_error: est.std_error,
        series_value: series.value,
        seed: cfg.seed,
        series_terms: series.term_count,
        series_truncation_bound: series.truncation_bound,
        ball_volume: ball_volume(v.epsilon),
        smeared_value: smeared,
        bias,
        combined_sigma: sigma,
        agrees,
        haar_normalization: "total mass 1",
    };
    let summary = format!(
        "k = {}: series {:.10}, estimate {:.6} +- {:.2e}, bias {:+.3e}, {}\n",
        v.genus,
        series.value,
        est.estimate,
        est.std_error,
        bias,
        if agrees { "agrees within 3 combined sigma" } else { "DISAGREES" }
    );
    Ok(Outcome {
        artifacts: vec![artifact("volume.json", output::json(&report))],
        passed: agrees,
        summary,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowReport {
    pub config: ExperimentConfig,
    pub checks: Vec<verify::Check>,
    pub passed: bool,
}

pub fn cmd_flow(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut flow_cfg = cfg.clone();
    flow_cfg.verify.flow_samples = cfg.flow.samples;
    let checks = verify::flow_checks(&flow_cfg)?;
    let passed = checks.iter().all(|c| c.pass);
    // one separating trajectory over a full turn
    let mut rng = stream(derive_seed(cfg.seed, P_FLOW), 0);
    let rho = Representation::haar(3, &mut rng);
    let dec = SeparatingDecomposition::example();
    let m = cfg.flow.times.max(1);
    let rows = (0..=m)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / m as f64;
            Ok((t, coords_from_rep(&flow_separating(&dec, &rho, t)?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = String::new();
    for c in &checks {
        summary.push_str(&format!(
            "{} {:<28} max dev {:.3e}\n",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.max_dev
        ));
    }
    let report = FlowReport {
        config: cfg.clone(),
        checks,
        passed,
    };
    Ok(Outcome {
        artifacts: vec![
            artifact("flow.json", output::json(&report)),
            artifact("flow.csv", output::series_csv(&cfg.echo(), "t", &rows)),
        ],
        passed,
        summary,
    })
}
