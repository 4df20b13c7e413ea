//! Deterministic text outputs: CSV with a config comment line, pretty JSON, and a
//! minimal scatter SVG.

use std::fmt::Write;

use serde::Serialize;

use crate::twist::CharacterPoint;

/// `{:.16e}`, seventeen significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV of an orbit: one row per point with its Fricke residual.
pub fn orbit_csv(config_echo: &str, points: &[CharacterPoint]) -> String {
    let mut s = String::new();
    writeln!(s, "# config: {config_echo}").unwrap();
    s.push_str("step,a,b,c,x,y,z,d,fricke_residual\n");
    for (i, p) in points.iter().enumerate() {
        write!(s, "{i}").unwrap();
        for v in p.to_array() {
            write!(s, ",{}", num(v)).unwrap();
        }
        writeln!(s, ",{}", num(p.fricke())).unwrap();
    }
    s
}

/// CSV with a leading real column (e.g. a flow time).
pub fn series_csv(config_echo: &str, label: &str, rows: &[(f64, CharacterPoint)]) -> String {
    let mut s = String::new();
    writeln!(s, "# config: {config_echo}").unwrap();
    writeln!(s, "{label},a,b,c,x,y,z,d").unwrap();
    for (t, p) in rows {
        s.push_str(&num(*t));
        for v in p.to_array() {
            write!(s, ",{}", num(v)).unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Scatter plot of `points`, scaled to fit, with axis labels.
pub fn scatter_svg(config_echo: &str, title: &str, axes: [&str; 2], points: &[[f64; 2]]) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 40.0;
    let finite = points.iter().filter(|p| p[0].is_finite() && p[1].is_finite());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in finite.clone() {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = |i: usize| if hi[i] > lo[i] { hi[i] - lo[i] } else { 1.0 };
    let full = SIZE + 2.0 * PAD;
    let mut s = String::new();
    writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(s, "<!-- config: {} -->", config_echo.replace("--", "- -")).unwrap();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{full}\" height=\"{full}\" viewBox=\"0 0 {full} {full}\">"
    )
    .unwrap();
    writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
    writeln!(s, "<text x=\"{PAD}\" y=\"24\" font-size=\"14\">{}</text>", escape(title)).unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>",
        full / 2.0,
        full - 8.0,
        escape(axes[0])
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"12\" y=\"{}\" font-size=\"12\">{}</text>",
        full / 2.0,
        escape(axes[1])
    )
    .unwrap();
    writeln!(s, "<g fill=\"#1f4e99\">").unwrap();
    for p in finite {
        let x = PAD + (p[0] - lo[0]) / span(0) * SIZE;
        let y = PAD + SIZE - (p[1] - lo[1]) / span(1) * SIZE;
        writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"1.2\"/>").unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
