//! The formula verification suite behind `verify`.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::flow::{
    check_gluing, flow_hnn, flow_separating, twist_equals_flow, Decomposition, HnnDecomposition,
    SeparatingDecomposition,
};
use crate::rng::{derive_seed, stream};
use crate::trace::trace_of_word;
use crate::twist::{apply_twist, coords_from_rep, oracle_image, printed, rotation_check_image, CharacterPoint};
use crate::word::{Letter, Representation, Twist, Word};

pub const TRACE_TOL: f64 = 1e-9;
pub const ORACLE_TOL: f64 = 1e-8;
pub const BOUNDARY_TOL: f64 = 1e-10;
pub const FRICKE_TOL: f64 = 1e-9;
pub const ROTATION_TOL: f64 = 1e-8;
pub const MATRIX_TOL: f64 = 1e-12;
pub const SIGN_TOL: f64 = 1e-12;
pub const FLOW_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, samples: usize, max_dev: f64, tol: f64) -> Check {
        Check {
            name: name.into(),
            samples,
            max_dev,
            tol,
            pass: max_dev <= tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: ExperimentConfig,
    pub coverage: Vec<String>,
    pub checks: Vec<Check>,
    /// Published formulas compared with the oracle; informational, see the notes.
    pub printed_audit: Vec<printed::AuditLine>,
    pub failing: Vec<String>,
    pub passed: bool,
}

const P_TRACE_WORDS: u64 = 10;
const P_TRACE_REPS: u64 = 11;
const P_ORACLE: u64 = 12;
const P_FRICKE: u64 = 13;
const P_ROTATION: u64 = 14;
const P_FLOW: u64 = 15;
const P_AUDIT: u64 = 16;

/// The coordinate map under test, optionally with a corrupted coefficient.
fn map_under_test(fault: Option<&str>, t: Twist, p: &CharacterPoint) -> CharacterPoint {
    let mut img = apply_twist(t, p);
    if fault == Some(t.label().as_str()) {
        img.d += 1e-3 * p.a * p.c;
    }
    img
}

fn haar_reps(seed: u64, purpose: u64, n: usize) -> Vec<Representation> {
    let mut rng = stream(derive_seed(seed, purpose), 0);
    (0..n).map(|_| Representation::haar(3, &mut rng)).collect()
}

/// A freely reduced word on three generators of length between 1 and `max_len`.
pub fn random_word<R: Rng + ?Sized>(max_len: usize, rng: &mut R) -> Word {
    loop {
        let len = rng.random_range(1..=max_len);
        let letters = (0..len).map(|_| {
            let g = rng.random_range(0..3u8);
            if rng.random::<bool>() {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            }
        });
        let w = Word::from_letters(letters);
        if !w.is_empty() {
            return w;
        }
    }
}

/// Symbolic against numeric traces of random words.
pub fn trace_check(cfg: &ExperimentConfig) -> Result<Check> {
    let v = &cfg.verify;
    let reps = haar_reps(cfg.seed, P_TRACE_REPS, v.trace_reps);
    let coords: Vec<[f64; 7]> = reps
        .iter()
        .map(|r| coords_from_rep(r).map(|p| p.to_array()))
        .collect::<Result<_>>()?;
    let mut rng = stream(derive_seed(cfg.seed, P_TRACE_WORDS), 0);
    let words: Vec<Word> = (0..v.trace_words).map(|_| random_word(v.max_word_len, &mut rng)).collect();
    let devs: Vec<f64> = words
        .par_iter()
        .map(|w| {
            let poly = trace_of_word(w)?;
            let mut worst: f64 = 0.0;
            for (rho, c) in reps.iter().zip(&coords) {
                let num = w.evaluate(rho)?.trace();
                worst = worst.max((poly.eval(c) - num).abs());
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let worst = devs.into_iter().fold(0.0, f64::max);
    Ok(Check::new("trace calculus", v.trace_words * v.trace_reps, worst, TRACE_TOL))
}

pub fn oracle_checks(cfg: &ExperimentConfig, fault: Option<&str>) -> Result<Vec<Check>> {
    let reps = haar_reps(cfg.seed, P_ORACLE, cfg.verify.oracle_samples);
    let mut out = Vec::new();
    for t in Twist::ALL {
        let (mut dev, mut bdev): (f64, f64) = (0.0, 0.0);
        for rho in &reps {
            let p = coords_from_rep(rho)?;
            let img = map_under_test(fault, t, &p);
            dev = dev.max(img.max_diff(&oracle_image(t, rho)?));
            let s = t.surface();
            bdev = bdev.max(p.boundary(s).max_diff(&img.boundary(s)));
        }
        out.push(Check::new(format!("oracle {t}"), reps.len(), dev, ORACLE_TOL));
        out.push(Check::new(format!("boundary {t}"), reps.len(), bdev, BOUNDARY_TOL));
    }
    Ok(out)
}

pub fn fricke_checks(cfg: &ExperimentConfig, fault: Option<&str>) -> Result<Vec<Check>> {
    let n = cfg.verify.fricke_samples;
    let seed = derive_seed(cfg.seed, P_FRICKE);
    let chunk = 4096;
    let parts: Vec<[f64; 6]> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, b as u64);
            let mut worst = [0.0f64; 6];
            for _ in 0..chunk.min(n - b * chunk) {
                let p = coords_from_rep(&Representation::haar(3, &mut rng))?;
                worst[0] = worst[0].max(p.fricke().abs());
                for (i, t) in Twist::ALL.iter().enumerate() {
                    worst[i + 1] = worst[i + 1].max(map_under_test(fault, *t, &p).fricke().abs());
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let worst = |i: usize| parts.iter().map(|w| w[i]).fold(0.0, f64::max);
    let mut out = vec![Check::new("fricke", n, worst(0), FRICKE_TOL)];
    for (i, t) in Twist::ALL.iter().enumerate() {
        out.push(Check::new(format!("fricke after {t}"), n, worst(i + 1), FRICKE_TOL));
    }
    Ok(out)
}

pub fn rotation_checks(cfg: &ExperimentConfig, fault: Option<&str>) -> Result<Vec<Check>> {
    let want = cfg.verify.rotation_samples;
    let mut out = Vec::new();
    for (ti, t) in Twist::ALL.into_iter().enumerate() {
        let mut rng = stream(derive_seed(cfg.seed, P_ROTATION), ti as u64);
        let (mut dev, mut mat, mut sign): (f64, f64, f64) = (0.0, 0.0, 0.0);
        let mut got = 0;
        let mut tries = 0;
        while got < want && tries < 100 * want.max(1) {
            tries += 1;
            let p = coords_from_rep(&Representation::haar(3, &mut rng))?;
            let img = map_under_test(fault, t, &p);
            let Ok(r) = rotation_check_image(t, &p, &img) else { continue };
            got += 1;
            dev = dev.max(r.max_dev);
            mat = mat.max(r.det_err()).max(r.trace_err());
            // R >= 0 and both Fricke factors <= 0
            sign = sign.max(-r.residual).max(r.factors[0]).max(r.factors[1]);
        }
        // too few non-degenerate points is itself a failure
        let short = if got < want { f64::INFINITY } else { 0.0 };
        out.push(Check::new(format!("rotation {t}"), got, dev.max(short), ROTATION_TOL));
        out.push(Check::new(format!("rotation matrix {t}"), got, mat, MATRIX_TOL));
        out.push(Check::new(format!("residual sign {t}"), got, sign.max(0.0), SIGN_TOL));
    }
    Ok(out)
}

/// Periodicity, twist-equals-flow, the one-parameter group law and gluing, for both
/// decomposition types.
pub fn flow_checks(cfg: &ExperimentConfig) -> Result<Vec<Check>> {
    let n = cfg.verify.flow_samples;
    let sep = SeparatingDecomposition::example();
    let hnn = HnnDecomposition::n22_along_x();
    let mut rng = stream(derive_seed(cfg.seed, P_FLOW), 0);
    let mut dev = [0.0f64; 7];
    let c = |r: &Representation| coords_from_rep(r);
    for _ in 0..n {
        let rho = Representation::haar(3, &mut rng);
        let s: f64 = rng.random_range(0.0..2.0 * PI);
        let t: f64 = rng.random_range(0.0..2.0 * PI);
        let fs = flow_separating(&sep, &rho, t)?;
        dev[0] = dev[0].max(c(&flow_separating(&sep, &rho, t + PI)?)?.max_diff(&c(&fs)?));
        let fh = flow_hnn(&hnn, &rho, t)?;
        dev[1] = dev[1].max(c(&flow_hnn(&hnn, &rho, t + 2.0 * PI)?)?.max_diff(&c(&fh)?));
        dev[2] = dev[2].max(twist_equals_flow(Decomposition::Separating(&sep), &rho)?.max_dev);
        dev[3] = dev[3].max(twist_equals_flow(Decomposition::Hnn(&hnn), &rho)?.max_dev);
        let two = flow_separating(&sep, &flow_separating(&sep, &rho, s)?, t)?;
        dev[4] = dev[4].max(c(&two)?.max_diff(&c(&flow_separating(&sep, &rho, s + t)?)?));
        let two = flow_hnn(&hnn, &flow_hnn(&hnn, &rho, s)?, t)?;
        dev[5] = dev[5].max(c(&two)?.max_diff(&c(&flow_hnn(&hnn, &rho, s + t)?)?));
        let (rho_a, b) = hnn.split(&fh)?;
        let g = check_gluing(&hnn, &rho_a, &b)?;
        if !(g.glued && g.solvable) {
            dev[6] = f64::INFINITY;
        }
    }
    let names = [
        "flow separating period pi",
        "flow hnn period 2pi",
        "twist = flow separating",
        "twist = flow hnn",
        "flow group law separating",
        "flow group law hnn",
        "hnn gluing",
    ];
    Ok(names
        .iter()
        .zip(dev)
        .map(|(name, d)| Check::new(*name, n, d, if d.is_infinite() { 0.0 } else { FLOW_TOL }))
        .collect())
}

/// Runs the whole suite.
pub fn run(cfg: &ExperimentConfig) -> Result<VerifyReport> {
    let fault = cfg.verify.fault.as_deref();
    let mut checks = vec![trace_check(cfg)?];
    checks.extend(oracle_checks(cfg, fault)?);
    checks.extend(fricke_checks(cfg, fault)?);
    checks.extend(rotation_checks(cfg, fault)?);
    checks.extend(flow_checks(cfg)?);
    let audit_reps = haar_reps(cfg.seed, P_AUDIT, 200);
    let printed_audit = printed::audit(&audit_reps, ORACLE_TOL)?;
    let mut coverage: Vec<String> = Twist::ALL.iter().map(|t| format!("twist {t}")).collect();
    coverage.extend(["flow separating", "flow hnn", "trace calculus", "fricke relation"].map(String::from));
    let failing: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    Ok(VerifyReport {
        config: cfg.clone(),
        coverage,
        passed: failing.is_empty(),
        failing,
        checks,
        printed_audit,
    })
}
