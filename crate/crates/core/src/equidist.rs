//! Equidistribution of single-twist orbits on their ellipses.
//!
//! A twist acts on its ellipse as a rotation by the fraction
//! `arccos(nu/2) / pi` of a turn, so the angle parameters of an orbit should be
//! equidistributed whenever that number is irrational. Orbits are compared with a
//! directly generated rotation sequence of the same angle.

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::twist::{ellipse_form, CharacterPoint, OrbitIter};
use crate::word::Twist;

/// Denominator bound of the rational screen.
pub const SCREEN_QMAX: u64 = 50;
/// Distance to a rational below which an angle counts as resonant.
pub const SCREEN_TOL: f64 = 1e-6;

/// Star discrepancy of points in `[0, 1)` against the uniform law. On the unit
/// interval this coincides with the Kolmogorov-Smirnov distance.
pub fn star_discrepancy(xs: &[f64]) -> f64 {
    let (plus, minus) = one_sided(xs);
    plus.max(minus)
}

/// Kolmogorov-Smirnov distance to the uniform law on `[0, 1)`.
pub fn ks_distance(xs: &[f64]) -> f64 {
    // sup |F_n(t) - t| evaluated on both sides of each jump
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).abs().max(((i + 1) as f64 / n - x).abs()))
        .fold(0.0, f64::max)
}

/// Discrepancy over arcs of the circle (Kuiper's statistic), invariant under rotation.
pub fn circle_discrepancy(xs: &[f64]) -> f64 {
    let (plus, minus) = one_sided(xs);
    plus + minus
}

fn one_sided(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        plus = plus.max((i + 1) as f64 / n - x);
        minus = minus.max(x - i as f64 / n);
    }
    (plus, minus)
}

/// Continued-fraction convergents `p/q` of `alpha` with `q <= qmax`.
pub fn convergents(alpha: f64, qmax: u64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1u64, 1i64, 0u64);
    let mut x = alpha;
    for _ in 0..64 {
        let a = x.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as u64 * q1 + q0);
        if q2 > qmax {
            break;
        }
        out.push((p2, q2));
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        x = 1.0 / frac;
    }
    out
}

/// First convergent with denominator at most `qmax` within `tol` of `alpha`.
pub fn rational_screen(alpha: f64, qmax: u64, tol: f64) -> Option<(i64, u64)> {
    convergents(alpha, qmax)
        .into_iter()
        .find(|&(p, q)| (alpha - p as f64 / q as f64).abs() < tol)
}

/// `x0 + i step mod 1` for `i < n`.
pub fn rotation_sequence(x0: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (x0 + i as f64 * step).rem_euclid(1.0)).collect()
}

/// Number of distinct points on the circle, up to `tol`.
pub fn distinct_points(xs: &[f64], tol: f64) -> usize {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mut count = 0;
    for (i, &x) in v.iter().enumerate() {
        if i == 0 || x - v[i - 1] > tol {
            count += 1;
        }
    }
    // the first and last cluster may meet across zero
    if count > 1 && v[0] + 1.0 - v[v.len() - 1] <= tol {
        count -= 1;
    }
    count.max(usize::from(!v.is_empty()))
}

#[derive(Debug, Clone, Serialize)]
pub struct EquidistReport {
    pub twist: Twist,
    pub nu: f64,
    /// Signed step of the angle parameter per application, in turns.
    pub step: f64,
    pub rotation_fraction: f64,
    /// Rational `p/q` the rotation number sits on, if any.
    pub resonance: Option<(i64, u64)>,
    pub points: usize,
    pub distinct_points: usize,
    pub star_discrepancy: f64,
    pub ks_distance: f64,
    pub circle_discrepancy: f64,
    /// Star discrepancy of the pure rotation with the same start and step.
    pub reference_discrepancy: f64,
    /// Largest gap between orbit angles and the reference sequence.
    pub reference_max_dev: f64,
    pub max_quadric_dev: f64,
}

/// Angle fractions and plane points of the first `n` orbit points.
pub fn orbit_angles(twist: Twist, pt: &CharacterPoint, n: usize) -> Result<(Vec<f64>, Vec<[f64; 2]>, f64)> {
    if n == 0 {
        return Err(LabError::Invalid("need at least one orbit point".into()));
    }
    let form = ellipse_form(twist, pt)?;
    let mut angles = Vec::with_capacity(n);
    let mut plane = Vec::with_capacity(n);
    let mut worst: f64 = 0.0;
    for q in OrbitIter::new(&[twist], *pt, n - 1)? {
        let q = q?;
        angles.push(form.angle_fraction(&q));
        plane.push(form.plane_point(&q));
        worst = worst.max((form.quadric(&q) - form.residual).abs());
    }
    Ok((angles, plane, worst))
}

/// Equidistribution statistics of the `n`-point orbit of `pt` under `twist`.
pub fn equidistribute(twist: Twist, pt: &CharacterPoint, n: usize) -> Result<EquidistReport> {
    let form = ellipse_form(twist, pt)?;
    let (angles, _, worst) = orbit_angles(twist, pt, n)?;
    let r = form.rotation_fraction();
    // the sense of rotation depends on the chart; read it off the first step
    let step = if angles.len() > 1 {
        let s = (angles[1] - angles[0]).rem_euclid(1.0);
        if (s - r).abs() <= (s - (1.0 - r)).abs() {
            r
        } else {
            -r
        }
    } else {
        r
    };
    let reference = rotation_sequence(angles[0], step, n);
    let reference_max_dev = angles
        .iter()
        .zip(&reference)
        .map(|(a, b)| {
            let d = (a - b).rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max);
    Ok(EquidistReport {
        twist,
        nu: form.nu,
        step,
        rotation_fraction: r,
        resonance: rational_screen(r, SCREEN_QMAX, SCREEN_TOL),
        points: n,
        distinct_points: distinct_points(&angles, 1e-6),
        star_discrepancy: star_discrepancy(&angles),
        ks_distance: ks_distance(&angles),
        circle_discrepancy: circle_discrepancy(&angles),
        reference_discrepancy: star_discrepancy(&reference),
        reference_max_dev,
        max_quadric_dev: worst,
    })
}

/// Least-squares slope of `log D*` against `log N` for `N = n0, 2 n0, ...`.
pub fn doubling_slope(twist: Twist, pt: &CharacterPoint, n0: usize, doublings: u32) -> Result<(Vec<(usize, f64)>, f64)> {
    let nmax = n0 << doublings;
    let (angles, _, _) = orbit_angles(twist, pt, nmax)?;
    let pts: Vec<(usize, f64)> = (0..=doublings)
        .map(|j| {
            let n = n0 << j;
            (n, star_discrepancy(&angles[..n]))
        })
        .collect();
    let xy: Vec<(f64, f64)> = pts.iter().map(|&(n, d)| ((n as f64).ln(), d.ln())).collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok((pts, sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::Su2;
    use crate::twist::coords_from_rep;
    use crate::word::Representation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn discrepancy_of_regular_grid() {
        let n = 1000;
        let grid: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        assert!((star_discrepancy(&grid) - 0.5 / n as f64).abs() < 1e-15);
        assert!((ks_distance(&grid) - star_discrepancy(&grid)).abs() < 1e-15);
        let left: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        // a rotation of the grid has the same circle discrepancy
        assert!((circle_discrepancy(&left) - circle_discrepancy(&grid)).abs() < 1e-12);
    }

    #[test]
    fn convergents_of_known_numbers() {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let c = convergents(phi, 50);
        assert_eq!(c.last(), Some(&(21, 34)));
        assert_eq!(convergents(std::f64::consts::PI - 3.0, 200).last(), Some(&(16, 113)));
        assert_eq!(rational_screen(0.25, 50, 1e-6), Some((1, 4)));
        assert_eq!(rational_screen(phi, 50, 1e-6), None);
        assert_eq!(rational_screen(3.0 / 7.0 + 1e-8, 50, 1e-6), Some((3, 7)));
    }

    #[test]
    fn screen_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..2000 {
            use rand::Rng;
            let q: u64 = rng.random_range(1..=60);
            let p = rng.random_range(0..=q) as f64;
            let alpha = (p / q as f64 + rng.random_range(-2e-6..2e-6)).clamp(0.0, 1.0);
            let brute = (1..=50u64).any(|q| (alpha * q as f64 - (alpha * q as f64).round()).abs() / (q as f64) < 1e-6);
            assert_eq!(rational_screen(alpha, 50, 1e-6).is_some(), brute, "{alpha}");
        }
    }

    #[test]
    fn generic_orbits_equidistribute() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut done = 0;
        while done < 5 {
            let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
            for t in Twist::ALL {
                let Ok(r) = equidistribute(t, &p, 10_000) else { continue };
                if r.resonance.is_some() {
                    continue;
                }
                assert!(r.star_discrepancy < 0.05, "{r:?}");
                assert!(r.star_discrepancy <= 2.0 * r.reference_discrepancy, "{r:?}");
                assert!(r.reference_max_dev < 1e-6, "{r:?}");
                done += 1;
            }
        }
    }

    #[test]
    fn quarter_turn_is_resonant() {
        // AAB with trace sqrt 2 makes the T twist a quarter turn
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Su2::haar(&mut rng);
        let target = Su2::from_angle_axis(std::f64::consts::FRAC_PI_4, [0.3, -0.5, 0.8]);
        let b = a.mul(&a).inv().mul(&target);
        let p = coords_from_rep(&Representation::new(vec![a, b, Su2::haar(&mut rng)])).unwrap();
        let r = equidistribute(Twist::N13T, &p, 1000).unwrap();
        assert_eq!(r.resonance, Some((1, 4)));
        assert!(r.distinct_points <= 4);
    }

    #[test]
    fn doubling_halves_discrepancy() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let mut slopes = Vec::new();
        while slopes.len() < 4 {
            let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
            let Ok(f) = ellipse_form(Twist::N13U, &p) else { continue };
            if rational_screen(f.rotation_fraction(), 50, 1e-6).is_some() {
                continue;
            }
            slopes.push(doubling_slope(Twist::N13U, &p, 1000, 5).unwrap().1);
        }
        let mean = slopes.iter().sum::<f64>() / slopes.len() as f64;
        assert!((mean + 1.0).abs() < 0.4, "{slopes:?}");
    }
}
