//! SU(2) as the unit quaternions.
//!
//! An element `q0 + q1 i + q2 j + q3 k` corresponds to the matrix
//! `q0 I + q1 (i sigma_x) + ...`, so the matrix trace is `2 q0` and the rotation
//! angle `f(g) = arccos(tr g / 2)` lies in `[0, pi]`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// Imaginary parts shorter than this make the variation undefined.
pub const CENTRAL_TOL: f64 = 1e-10;

/// Number of products after which chained multiplication renormalizes.
pub const RENORM_EVERY: usize = 64;

/// A unit quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2 {
    pub q: [f64; 4],
}

/// A pure imaginary quaternion, i.e. an element of su(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Algebra {
    pub v: [f64; 3],
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { q: [1.0, 0.0, 0.0, 0.0] };

    /// Builds an element and projects it back onto the sphere.
    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Su2 {
        Su2 { q: [q0, q1, q2, q3] }.normalized()
    }

    /// Unnormalized constructor for values already known to be unit.
    pub const fn from_raw(q: [f64; 4]) -> Su2 {
        Su2 { q }
    }

    pub fn norm(&self) -> f64 {
        self.q.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn normalized(self) -> Su2 {
        let n = self.norm();
        Su2 {
            q: [self.q[0] / n, self.q[1] / n, self.q[2] / n, self.q[3] / n],
        }
    }

    /// Hamilton product without renormalization.
    #[inline]
    pub fn mul_raw(&self, h: &Su2) -> Su2 {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = h.q;
        Su2 {
            q: [
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            ],
        }
    }

    /// Group law, renormalized.
    pub fn mul(&self, h: &Su2) -> Su2 {
        self.mul_raw(h).normalized()
    }

    /// Inverse, which for a unit quaternion is the conjugate.
    #[inline]
    pub fn inv(&self) -> Su2 {
        Su2 {
            q: [self.q[0], -self.q[1], -self.q[2], -self.q[3]],
        }
    }

    pub fn neg(&self) -> Su2 {
        Su2 {
            q: [-self.q[0], -self.q[1], -self.q[2], -self.q[3]],
        }
    }

    /// `h g h^-1`.
    pub fn conj_by(&self, h: &Su2) -> Su2 {
        h.mul_raw(self).mul_raw(&h.inv()).normalized()
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        2.0 * self.q[0]
    }

    /// `arccos(tr/2)` with the argument clamped into `[-1, 1]`.
    pub fn angle(&self) -> f64 {
        self.q[0].clamp(-1.0, 1.0).acos()
    }

    /// Normalized imaginary part `u`, so that `g = cos f(g) + sin f(g) u`.
    pub fn variation(&self) -> Result<Algebra, LabError> {
        let v = [self.q[1], self.q[2], self.q[3]];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n < CENTRAL_TOL {
            return Err(LabError::CentralElement { imag_norm: n });
        }
        Ok(Algebra {
            v: [v[0] / n, v[1] / n, v[2] / n],
        })
    }

    /// Largest componentwise difference.
    pub fn max_diff(&self, h: &Su2) -> f64 {
        (0..4).map(|i| (self.q[i] - h.q[i]).abs()).fold(0.0, f64::max)
    }

    /// Haar-random element: four standard normals, normalized.
    pub fn haar<R: Rng + ?Sized>(rng: &mut R) -> Su2 {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                return Su2 {
                    q: [q[0] / n, q[1] / n, q[2] / n, q[3] / n],
                };
            }
        }
    }

    /// Element of angle `theta` about the unit axis `axis`.
    pub fn from_angle_axis(theta: f64, axis: [f64; 3]) -> Su2 {
        exp_scaled(&Algebra::new(axis), theta)
    }
}

impl Algebra {
    /// Normalizes `v`; callers pass nonzero vectors.
    pub fn new(v: [f64; 3]) -> Algebra {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        Algebra {
            v: [v[0] / n, v[1] / n, v[2] / n],
        }
    }

    pub fn norm(&self) -> f64 {
        (self.v[0] * self.v[0] + self.v[1] * self.v[1] + self.v[2] * self.v[2]).sqrt()
    }

    /// Adjoint action `h u h^-1`.
    pub fn conj_by(&self, h: &Su2) -> Algebra {
        let u = Su2::from_raw([0.0, self.v[0], self.v[1], self.v[2]]);
        let w = h.mul_raw(&u).mul_raw(&h.inv());
        Algebra {
            v: [w.q[1], w.q[2], w.q[3]],
        }
    }
}

/// `exp(t u) = cos t + sin t u` for a unit `u`.
pub fn exp_scaled(u: &Algebra, t: f64) -> Su2 {
    let (s, c) = t.sin_cos();
    Su2 {
        q: [c, s * u.v[0], s * u.v[1], s * u.v[2]],
    }
}

/// Ordered product of a sequence, renormalizing every [`RENORM_EVERY`] factors.
pub fn product<'a, I: IntoIterator<Item = &'a Su2>>(factors: I) -> Su2 {
    let mut acc = Su2::IDENTITY;
    for (i, g) in factors.into_iter().enumerate() {
        acc = acc.mul_raw(g);
        if (i + 1) % RENORM_EVERY == 0 {
            acc = acc.normalized();
        }
    }
    acc.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn quaternion_units_multiply() {
        let i = Su2::from_raw([0.0, 1.0, 0.0, 0.0]);
        let j = Su2::from_raw([0.0, 0.0, 1.0, 0.0]);
        assert_eq!(i.mul(&j).q, [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(Su2::IDENTITY.mul(&i).q, i.q);
    }

    #[test]
    fn trace_and_angle_at_landmarks() {
        let i = Su2::from_raw([0.0, 1.0, 0.0, 0.0]);
        assert_eq!(Su2::IDENTITY.trace(), 2.0);
        assert_eq!(i.trace(), 0.0);
        assert_eq!(Su2::IDENTITY.neg().trace(), -2.0);
        assert_eq!(Su2::IDENTITY.angle(), 0.0);
        assert!((i.angle() - PI / 2.0).abs() < 1e-15);
        assert!((Su2::IDENTITY.neg().angle() - PI).abs() < 1e-15);
    }

    #[test]
    fn variation_of_diagonal_element() {
        let g = Su2::from_angle_axis(PI / 3.0, [1.0, 0.0, 0.0]);
        let u = g.variation().unwrap();
        assert!((u.v[0] - 1.0).abs() < 1e-15);
        // -g has the same imaginary direction flipped
        let un = g.neg().variation().unwrap();
        assert!((un.v[0] + 1.0).abs() < 1e-15);
        assert!(Su2::IDENTITY.variation().is_err());
        assert!(Su2::IDENTITY.neg().variation().is_err());
    }

    #[test]
    fn exp_half_and_full_turn() {
        let u = Algebra::new([0.3, -0.4, 0.5]);
        assert!(exp_scaled(&u, 0.0).max_diff(&Su2::IDENTITY) < 1e-15);
        assert!(exp_scaled(&u, PI).max_diff(&Su2::IDENTITY.neg()) < 1e-15);
        assert!(exp_scaled(&u, 2.0 * PI).max_diff(&Su2::IDENTITY) < 1e-15);
    }

    #[test]
    fn reconstruction_from_angle_and_variation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let g = Su2::haar(&mut rng);
            let h = exp_scaled(&g.variation().unwrap(), g.angle());
            assert!(g.max_diff(&h) < 1e-10);
        }
    }

    #[test]
    fn haar_trace_moments() {
        // Weyl measure: E[tr] = 0, E[tr^2] = 1
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let t = Su2::haar(&mut rng).trace();
            s1 += t;
            s2 += t * t;
        }
        assert!((s1 / n as f64).abs() < 0.005);
        assert!((s2 / n as f64 - 1.0).abs() < 0.005);
    }

    #[test]
    fn independent_streams_uncorrelated() {
        let mut r1 = ChaCha8Rng::seed_from_u64(11);
        let mut r2 = ChaCha8Rng::seed_from_u64(12);
        let n = 100_000;
        let xs: Vec<(f64, f64)> = (0..n)
            .map(|_| (Su2::haar(&mut r1).trace(), Su2::haar(&mut r2).trace()))
            .collect();
        let mx = xs.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let my = xs.iter().map(|p| p.1).sum::<f64>() / n as f64;
        let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
        for (x, y) in &xs {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
            syy += (y - my) * (y - my);
        }
        assert!((sxy / (sxx * syy).sqrt()).abs() < 0.01);
    }

    #[test]
    fn haar_trace_matches_weyl_density_ks() {
        // CDF of tr = 2 cos(theta) under (2/pi) sin^2(theta):
        // P(theta <= s) = (s - sin(s) cos(s)) / pi, and tr <= t iff theta >= arccos(t/2)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 1_000_000;
        let mut ts: Vec<f64> = (0..n).map(|_| Su2::haar(&mut rng).trace()).collect();
        ts.sort_by(f64::total_cmp);
        let cdf = |t: f64| {
            let s = (t / 2.0).clamp(-1.0, 1.0).acos();
            1.0 - (s - s.sin() * s.cos()) / PI
        };
        let mut d: f64 = 0.0;
        for (i, &t) in ts.iter().enumerate() {
            let f = cdf(t);
            d = d.max((f - i as f64 / n as f64).abs());
            d = d.max(((i + 1) as f64 / n as f64 - f).abs());
        }
        // 1% critical value is 1.628 / sqrt(n)
        assert!(d < 1.628 / (n as f64).sqrt(), "KS = {d}");
    }
}
