//! Push-forward of Haar measure under the presentation map `x -> x_1^2 ... x_k^2`.
//!
//! Haar measure is normalized to total mass 1 throughout, so the value of the volume
//! density at the identity is `sum_n e_n n^(2-k)` with `e_n = +1` for odd `n` (real
//! irreducibles) and `(-1)^k` for even `n` (quaternionic ones).

pub mod ergodic;
pub mod relative;

pub use ergodic::{ergodicity, ErgodicityReport, ErgodicitySpec, DICTIONARY};
pub use relative::{RelativeSampler, Window};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::rng::stream;
use crate::su2::Su2;
use crate::word::{Representation, Word};

/// Samples per parallel batch; batch `i` uses random stream `i`.
pub const BATCH: usize = 1 << 16;

const FS_NODES: usize = 4096;

/// Frobenius-Schur indicator of the `n`-dimensional irreducible representation,
/// computed by quadrature of `chi_n(w^2)` against the Weyl measure.
pub fn fs_indicator(n: u32) -> Result<i8> {
    if n == 0 {
        return Err(LabError::Invalid("irrep dimension must be >= 1".into()));
    }
    let raw = fs_integral(n);
    for v in [-1i8, 0, 1] {
        if (raw - v as f64).abs() <= 0.1 {
            return Ok(v);
        }
    }
    Err(LabError::QuadratureUnresolved { n, value: raw })
}

/// `(2/pi) int_0^pi chi_n(2 theta) sin^2(theta) d theta`, by the midpoint rule, which is
/// exact for trigonometric polynomials of degree below `2 * FS_NODES`.
pub fn fs_integral(n: u32) -> f64 {
    let h = PI / FS_NODES as f64;
    let mut s = 0.0;
    for i in 0..FS_NODES {
        let th = (i as f64 + 0.5) * h;
        s += character(n, 2.0 * th) * th.sin().powi(2);
    }
    2.0 / PI * s * h
}

/// `chi_n` at an element of angle `phi`: `sin(n phi) / sin(phi)`, via the Chebyshev
/// recurrence so that `phi` near a multiple of `pi` is harmless.
pub fn character(n: u32, phi: f64) -> f64 {
    let c = 2.0 * phi.cos();
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..n {
        let next = c * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Serialize)]
pub struct VolumeSeriesResult {
    pub k: u32,
    /// Plain partial sum of the first `term_count` terms.
    pub partial_sum: f64,
    /// Partial sum plus the tail estimate.
    pub value: f64,
    pub term_count: u64,
    /// The limit lies within `value +- truncation_bound`.
    pub truncation_bound: f64,
}

/// `f_k(1) = sum_m e_m m^(2-k)`, to within `tol`.
///
/// Even `k` gives `zeta(k-2)`: the tail after `M` terms lies between the integrals
/// `(M+1)^(1-s)/(s-1)` and `M^(1-s)/(s-1)`, and the midpoint is used. Odd `k` gives the
/// alternating `eta(k-2)`, whose limit lies between consecutive partial sums.
pub fn volume_series(k: u32, tol: f64) -> Result<VolumeSeriesResult> {
    if k < 4 {
        return Err(LabError::DivergentSeries { k });
    }
    if !(tol > 0.0) {
        return Err(LabError::Invalid("tol must be positive".into()));
    }
    let s = (k - 2) as f64;
    let even = k.is_multiple_of(2);
    let bound_at = |m: f64| {
        if even {
            (m.powf(1.0 - s) - (m + 1.0).powf(1.0 - s)) / (2.0 * (s - 1.0))
        } else {
            (m + 1.0).powf(-s) / 2.0
        }
    };
    // smallest M with bound <= tol, by doubling then bisection
    let mut hi = 1u64;
    while bound_at(hi as f64) > tol {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if bound_at(mid as f64) > tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = hi;
    // sum smallest terms first
    let mut partial = 0.0;
    for j in (1..=m).rev() {
        let sign = if j % 2 == 1 || even { 1.0 } else { -1.0 };
        partial += sign * (j as f64).powf(-s);
    }
    let mf = m as f64;
    let tail = if even {
        (mf.powf(1.0 - s) + (mf + 1.0).powf(1.0 - s)) / (2.0 * (s - 1.0))
    } else {
        // next term has sign of m+1; the average of S_M and S_{M+1}
        let sign = if (m + 1) % 2 == 1 { 1.0 } else { -1.0 };
        sign * (mf + 1.0).powf(-s) / 2.0
    };
    Ok(VolumeSeriesResult {
        k,
        partial_sum: partial,
        value: partial + tail,
        term_count: m,
        truncation_bound: bound_at(mf),
    })
}

/// Normalized Haar volume of `{g : angle(g) < eps}`, `(2 eps - sin 2 eps) / (2 pi)`.
pub fn ball_volume(eps: f64) -> f64 {
    (2.0 * eps - (2.0 * eps).sin()) / (2.0 * PI)
}

/// Exact expectation of the ball estimator, `(1/vol) int_{ball} f_k`, from the
/// character expansion; its gap to `f_k(1)` is the smoothing bias.
pub fn smeared_expectation(k: u32, eps: f64) -> f64 {
    let mut s = 0.0;
    let nmax = 200_000u32;
    for n in (1..=nmax).rev() {
        let sign = if n % 2 == 1 || k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let nf = n as f64;
        let first = if n == 1 {
            eps
        } else {
            ((nf - 1.0) * eps).sin() / (nf - 1.0)
        };
        let ball = (first - ((nf + 1.0) * eps).sin() / (nf + 1.0)) / PI;
        s += sign * nf.powf(1.0 - k as f64) * ball;
    }
    s / ball_volume(eps)
}

/// Order of the smoothing bias in `eps`: the density has a conical point at the
/// identity when `k = 4` and is smooth there for `k >= 5`.
pub fn bias_order(k: u32) -> u32 {
    if k == 4 {
        1
    } else {
        2
    }
}

/// Eliminates the leading bias term from estimates at `eps` and `eps / 2`.
pub fn richardson(coarse: f64, fine: f64, order: u32) -> f64 {
    let r = 2f64.powi(order as i32);
    (r * fine - coarse) / (r - 1.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub k: u32,
    pub epsilon: f64,
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
}

fn estimate_from_hits(k: u32, eps: f64, samples: u64, hits: u64) -> DensityEstimate {
    let n = samples as f64;
    let p = hits as f64 / n;
    let vol = ball_volume(eps);
    let se = if samples > 1 {
        (p * (1.0 - p) / (n - 1.0)).sqrt().max(1.0 / n) / vol
    } else {
        f64::INFINITY
    };
    DensityEstimate {
        k,
        epsilon: eps,
        samples,
        hits,
        estimate: p / vol,
        std_error: se,
    }
}

fn check_density_args(k: u32, eps: f64, samples: u64) -> Result<()> {
    if k < 4 {
        return Err(LabError::DivergentSeries { k });
    }
    if !(eps > 0.0 && eps < PI / 4.0) {
        return Err(LabError::Invalid(format!("epsilon {eps} outside (0, pi/4)")));
    }
    if samples < 10_000 {
        return Err(LabError::Invalid("need at least 1e4 samples".into()));
    }
    Ok(())
}

/// Counts hits over deterministic batches; `draw` maps one stream to one hit flag.
fn count_hits<F>(samples: u64, seed: u64, draw: F) -> u64
where
    F: Fn(&mut crate::rng::LabRng) -> bool + Sync,
{
    let nb = samples.div_ceil(BATCH as u64);
    let counts: Vec<u64> = (0..nb)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, b);
            let len = (samples - b * BATCH as u64).min(BATCH as u64);
            (0..len).filter(|_| draw(&mut rng)).count() as u64
        })
        .collect();
    counts.iter().sum()
}

/// Monte Carlo density of `x_1^2 ... x_k^2` at the identity with the ball kernel.
pub fn mc_identity_density(k: u32, eps: f64, samples: u64, seed: u64) -> Result<DensityEstimate> {
    check_density_args(k, eps, samples)?;
    let cos_eps = eps.cos();
    let hits = count_hits(samples, seed, |rng| {
        let mut acc = Su2::IDENTITY;
        for _ in 0..k {
            let g = Su2::haar(rng);
            acc = acc.mul_raw(&g.mul_raw(&g));
        }
        // angle < eps  <=>  q0 > cos(eps), q0 normalized
        acc.q[0] / acc.norm() > cos_eps
    });
    Ok(estimate_from_hits(k, eps, samples, hits))
}

/// Same estimator for an arbitrary presentation word on `gens` Haar generators; `k` is
/// the genus used for the bandwidth checks and reporting.
pub fn mc_word_density(
    word: &Word,
    gens: usize,
    k: u32,
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    check_density_args(k, eps, samples)?;
    if word.arity() > gens {
        return Err(LabError::Arity {
            index: word.arity() - 1,
            arity: gens,
        });
    }
    let hits = count_hits(samples, seed, |rng| {
        let rho = Representation::haar(gens, rng);
        word.evaluate(&rho).map(|g| g.angle() < eps).unwrap_or(false)
    });
    Ok(estimate_from_hits(k, eps, samples, hits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fs_parity_rule() {
        for n in 1..=20 {
            let want = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(fs_indicator(n).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn character_at_identity_is_dimension() {
        for n in 1..10 {
            assert_eq!(character(n, 0.0), n as f64);
        }
        assert!((character(3, 0.7) - (2.1f64).sin() / 0.7f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn series_matches_partial_summation_oracle() {
        // independent route: direct sums to 2e6 with the classical tails
        let mut odd2 = 0.0;
        let mut even2 = 0.0;
        let mut alt3 = 0.0;
        for n in (1..=2_000_000u64).rev() {
            let nf = n as f64;
            if n % 2 == 1 {
                odd2 += 1.0 / (nf * nf);
            } else {
                even2 += 1.0 / (nf * nf);
            }
            alt3 += if n % 2 == 1 { 1.0 } else { -1.0 } / (nf * nf * nf);
        }
        // pi^2/8 and pi^2/24, each short by about 1/(2N)
        let tail = 1.0 / (2.0 * 2_000_000.0);
        assert!((odd2 + tail - PI * PI / 8.0).abs() < 1e-12);
        assert!((even2 + tail - PI * PI / 24.0).abs() < 1e-12);
        let v4 = volume_series(4, 1e-10).unwrap();
        let v5 = volume_series(5, 1e-10).unwrap();
        assert!((v4.value - PI * PI / 6.0).abs() < 1e-10);
        assert!((v5.value - alt3).abs() < 1e-10);
        assert!((v5.value - 0.901_542_677_369_695_7).abs() < 1e-10);
    }

    #[test]
    fn series_bracket_contains_finer_values() {
        for k in 4..9 {
            let coarse = volume_series(k, 1e-4).unwrap();
            let fine = volume_series(k, 1e-12).unwrap();
            assert!((coarse.value - fine.value).abs() <= coarse.truncation_bound + 1e-12);
        }
        assert!(matches!(volume_series(3, 1e-6), Err(LabError::DivergentSeries { k: 3 })));
    }

    #[test]
    fn series_tends_to_one() {
        let v = volume_series(40, 1e-12).unwrap();
        assert!((v.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn smeared_expectation_converges_to_series() {
        let f4 = PI * PI / 6.0;
        let b1 = smeared_expectation(4, 0.15) - f4;
        let b2 = smeared_expectation(4, 0.075) - f4;
        // first-order bias for k = 4
        assert!((b1 / b2 - 2.0).abs() < 0.1, "{b1} {b2}");
        let f5 = volume_series(5, 1e-12).unwrap().value;
        let c1 = smeared_expectation(5, 0.3) - f5;
        let c2 = smeared_expectation(5, 0.15) - f5;
        assert!((c1 / c2 - 4.0).abs() < 0.3, "{c1} {c2}");
        let ex = richardson(smeared_expectation(4, 0.15), smeared_expectation(4, 0.075), 1);
        assert!((ex - f4).abs() < (b2.abs() / 10.0));
    }

    #[test]
    fn ball_volume_matches_quadrature() {
        let eps = 0.4;
        let n = 100_000;
        let h = eps / n as f64;
        let q: f64 = (0..n).map(|i| ((i as f64 + 0.5) * h).sin().powi(2)).sum::<f64>() * h * 2.0 / PI;
        assert!((q - ball_volume(eps)).abs() < 1e-10);
    }

    #[test]
    fn estimator_agrees_with_exact_smearing() {
        let d = mc_identity_density(5, 0.3, 1_000_000, 17).unwrap();
        let e = smeared_expectation(5, 0.3);
        assert!((d.estimate - e).abs() < 4.0 * d.std_error, "{d:?} vs {e}");
    }

    #[test]
    fn conjugated_presentation_gives_same_density() {
        let word = crate::word::w("EAABBCCDDe");
        let plain = crate::word::w("AABBCCDD");
        let a = mc_word_density(&plain, 4, 4, 0.3, 200_000, 3).unwrap();
        let b = mc_word_density(&word, 5, 4, 0.3, 200_000, 4).unwrap();
        let s = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.estimate - b.estimate).abs() < 3.0 * s);
    }

    #[test]
    fn deterministic_under_thread_count() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = one.install(|| mc_identity_density(4, 0.2, 300_000, 9).unwrap());
        let b = mc_identity_density(4, 0.2, 300_000, 9).unwrap();
        assert_eq!(a.hits, b.hits);
    }
}
