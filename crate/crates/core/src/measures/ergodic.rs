//! Time averages along random twist orbits against space averages over a boundary
//! window. This is statistical evidence only; nothing here proves ergodicity.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::relative::{Acceptance, RelativeSampler, Window};
use crate::error::{LabError, Result};
use crate::rng::{derive_seed, stream};
use crate::twist::orbit::BLOWUP_TOL;
use crate::twist::{apply_twist, check_surface, CharacterPoint};
use crate::word::{Surface, Twist};

/// Test functions, by name.
pub const DICTIONARY: [&str; 15] = [
    "a", "x", "z", "d", "a^2", "x^2", "z^2", "d^2", "ax", "az", "ad", "xz", "xd", "zd", "axzd",
];

fn features(p: &CharacterPoint) -> [f64; 15] {
    let CharacterPoint { a, x, z, d, .. } = *p;
    [
        a,
        x,
        z,
        d,
        a * a,
        x * x,
        z * z,
        d * d,
        a * x,
        a * z,
        a * d,
        x * z,
        x * d,
        z * d,
        a * x * z * d,
    ]
}

const PURPOSE_START: u64 = 1;
const PURPOSE_TIME: u64 = 2;
const PURPOSE_SPACE: u64 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicitySpec {
    pub surface: Surface,
    /// Twists drawn i.i.d. uniformly at each step.
    pub twists: Vec<Twist>,
    pub window: Window,
    /// Width of the window the starting point is drawn from.
    pub start_width: f64,
    pub steps: usize,
    pub time_batches: usize,
    pub space_batches: usize,
    pub space_batch_size: usize,
    pub seed: u64,
}

impl ErgodicitySpec {
    /// The reference experiment on N13 at boundary traces `(0, 0, 0)`.
    pub fn n13_reference(seed: u64) -> ErgodicitySpec {
        ErgodicitySpec {
            surface: Surface::N13,
            twists: vec![Twist::N13T, Twist::N13U, Twist::N13W],
            window: Window::new(vec![0.0; 3], 0.05),
            start_width: 1e-4,
            steps: 1_000_000,
            time_batches: 100,
            space_batches: 16,
            space_batch_size: 4000,
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionScore {
    pub name: &'static str,
    pub time_mean: f64,
    pub time_se: f64,
    pub space_mean: f64,
    pub space_se: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicityReport {
    pub surface: Surface,
    pub twists: Vec<String>,
    pub start: CharacterPoint,
    pub steps: usize,
    pub acceptance: Acceptance,
    pub scores: Vec<FunctionScore>,
    pub max_abs_z: f64,
    /// Dictionary entries with `|z| > 3`.
    pub flagged: Vec<&'static str>,
}

/// Compensated running sum.
#[derive(Clone, Copy, Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Mean of batch means and its standard error.
fn batch_stats(means: &[[f64; 15]], i: usize) -> (f64, f64) {
    let n = means.len() as f64;
    let m = means.iter().map(|b| b[i]).sum::<f64>() / n;
    let var = means.iter().map(|b| (b[i] - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

fn time_batches(spec: &ErgodicitySpec, start: CharacterPoint) -> Result<Vec<[f64; 15]>> {
    let per = spec.steps / spec.time_batches;
    let mut rng = stream(derive_seed(spec.seed, PURPOSE_TIME), 0);
    let mut p = start;
    let mut out = Vec::with_capacity(spec.time_batches);
    let mut step = 0;
    for _ in 0..spec.time_batches {
        let mut sums = [Sum::default(); 15];
        for _ in 0..per {
            let t = spec.twists[rng.random_range(0..spec.twists.len())];
            p = apply_twist(t, &p);
            step += 1;
            let r = p.fricke().abs();
            if !(r <= BLOWUP_TOL) {
                return Err(LabError::OrbitBlowUp { step, residual: r });
            }
            for (s, v) in sums.iter_mut().zip(features(&p)) {
                s.add(v);
            }
        }
        out.push(std::array::from_fn(|i| sums[i].value() / per as f64));
    }
    Ok(out)
}

fn space_batches(spec: &ErgodicitySpec, sampler: &RelativeSampler) -> Result<Vec<[f64; 15]>> {
    let seed = derive_seed(spec.seed, PURPOSE_SPACE);
    (0..spec.space_batches as u64)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, b);
            let mut sums = [Sum::default(); 15];
            for _ in 0..spec.space_batch_size {
                let (_, p, _) = sampler.sample(&mut rng)?;
                for (s, v) in sums.iter_mut().zip(features(&p)) {
                    s.add(v);
                }
            }
            Ok(std::array::from_fn(|i| sums[i].value() / spec.space_batch_size as f64))
        })
        .collect()
}

/// Runs the time-versus-space comparison described by `spec`.
pub fn ergodicity(spec: &ErgodicitySpec) -> Result<ErgodicityReport> {
    if spec.steps == 0 {
        return Err(LabError::Invalid("zero-length orbit".into()));
    }
    if spec.time_batches < 2 || spec.space_batches < 2 || spec.space_batch_size == 0 {
        return Err(LabError::Invalid("need at least two batches on each side".into()));
    }
    if spec.steps < spec.time_batches {
        return Err(LabError::Invalid("fewer steps than time batches".into()));
    }
    if check_surface(&spec.twists)? != spec.surface {
        return Err(LabError::Domain {
            surface: spec.surface.name().into(),
            twist: spec.twists[0].label(),
        });
    }
    let sampler = RelativeSampler::new(spec.surface, spec.window.clone())?;
    let acceptance = sampler.calibrate(&mut stream(derive_seed(spec.seed, PURPOSE_SPACE), u64::MAX))?;
    let start_sampler = RelativeSampler::new(
        spec.surface,
        Window::new(spec.window.targets.clone(), spec.start_width),
    )?;
    let (_, start, _) = start_sampler.sample(&mut stream(derive_seed(spec.seed, PURPOSE_START), 0))?;

    let time = time_batches(spec, start)?;
    let space = space_batches(spec, &sampler)?;
    let scores: Vec<FunctionScore> = DICTIONARY
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let (tm, ts) = batch_stats(&time, i);
            let (sm, ss) = batch_stats(&space, i);
            let se = (ts * ts + ss * ss).sqrt();
            FunctionScore {
                name,
                time_mean: tm,
                time_se: ts,
                space_mean: sm,
                space_se: ss,
                z: if se > 0.0 { (tm - sm) / se } else { f64::INFINITY },
            }
        })
        .collect();
    let max_abs_z = scores.iter().map(|s| s.z.abs()).fold(0.0, f64::max);
    let flagged = scores.iter().filter(|s| !(s.z.abs() <= 3.0)).map(|s| s.name).collect();
    Ok(ErgodicityReport {
        surface: spec.surface,
        twists: spec.twists.iter().map(|t| t.label()).collect(),
        start,
        steps: spec.steps,
        acceptance,
        scores,
        max_abs_z,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(twists: Vec<Twist>) -> ErgodicitySpec {
        ErgodicitySpec {
            twists,
            steps: 20_000,
            time_batches: 20,
            space_batches: 4,
            space_batch_size: 500,
            ..ErgodicitySpec::n13_reference(5)
        }
    }

    #[test]
    fn single_twist_is_flagged() {
        let r = ergodicity(&small(vec![Twist::N13T])).unwrap();
        assert!(r.max_abs_z > 3.0);
        assert!(r.flagged.contains(&"a"));
    }

    #[test]
    fn zero_length_and_foreign_twists_rejected() {
        let mut s = small(vec![Twist::N13T, Twist::N13U]);
        s.steps = 0;
        assert!(ergodicity(&s).is_err());
        assert!(ergodicity(&small(vec![Twist::N22U])).is_err());
    }

    #[test]
    fn start_point_sits_on_target_level_set() {
        let r = ergodicity(&small(vec![Twist::N13T, Twist::N13U])).unwrap();
        let b = r.start.boundary(Surface::N13);
        assert!(b.traces.iter().all(|t| t.abs() <= 1e-4));
    }

    #[test]
    fn compensated_sum_is_exact_on_cancellation() {
        let mut s = Sum::default();
        for v in [1e16, 1.0, -1e16, 1.0] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}
