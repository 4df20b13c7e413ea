use rand::Rng;

use super::{apply_twist, check_surface, CharacterPoint};
use crate::error::{LabError, Result};
use crate::word::Twist;

/// Fricke residual above which an orbit is declared numerically broken.
pub const BLOWUP_TOL: f64 = 1e-6;

/// Lazily iterates an orbit, applying `program[i % len]` at step `i`. Yields the
/// starting point first and stops after `n` steps or at the first blow-up.
pub struct OrbitIter<'a> {
    program: &'a [Twist],
    pt: CharacterPoint,
    step: usize,
    n: usize,
    failed: bool,
}

impl<'a> OrbitIter<'a> {
    pub fn new(program: &'a [Twist], pt: CharacterPoint, n: usize) -> Result<OrbitIter<'a>> {
        check_surface(program)?;
        Ok(OrbitIter {
            program,
            pt,
            step: 0,
            n,
            failed: false,
        })
    }
}

impl Iterator for OrbitIter<'_> {
    type Item = Result<CharacterPoint>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.step > self.n {
            return None;
        }
        if self.step > 0 {
            let t = self.program[(self.step - 1) % self.program.len()];
            self.pt = apply_twist(t, &self.pt);
        }
        let residual = self.pt.fricke().abs();
        if !(residual <= BLOWUP_TOL) {
            self.failed = true;
            return Some(Err(LabError::OrbitBlowUp {
                step: self.step,
                residual,
            }));
        }
        self.step += 1;
        Some(Ok(self.pt))
    }
}

/// The `n + 1` points of the orbit.
pub fn orbit(program: &[Twist], pt: &CharacterPoint, n: usize) -> Result<Vec<CharacterPoint>> {
    OrbitIter::new(program, *pt, n)?.collect()
}

/// An i.i.d. uniform sequence over `twists`.
pub fn random_program<R: Rng + ?Sized>(twists: &[Twist], n: usize, rng: &mut R) -> Vec<Twist> {
    (0..n).map(|_| twists[rng.random_range(0..twists.len())]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::{coords_from_rep, ellipse_form};
    use crate::word::Representation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_steps_and_fixed_point() {
        let p = CharacterPoint::TRIVIAL;
        assert_eq!(orbit(&[Twist::N13T], &p, 0).unwrap(), vec![p]);
        let o = orbit(&[Twist::N13T, Twist::N13U, Twist::N13W], &p, 50).unwrap();
        assert!(o.iter().all(|q| *q == p));
    }

    #[test]
    fn mixed_surfaces_rejected() {
        assert!(orbit(&[Twist::N13T, Twist::N22U], &CharacterPoint::TRIVIAL, 3).is_err());
        assert!(orbit(&[], &CharacterPoint::TRIVIAL, 3).is_err());
    }

    #[test]
    fn single_twist_orbit_stays_on_quadric() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for t in Twist::ALL {
            let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
            let f = ellipse_form(t, &p).unwrap();
            let worst = orbit(&[t], &p, 10_000)
                .unwrap()
                .iter()
                .map(|q| (f.quadric(q) - f.residual).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-6, "{t}: {worst}");
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let bad = CharacterPoint { d: 5.0, ..CharacterPoint::TRIVIAL };
        let r = orbit(&[Twist::N13T], &bad, 3);
        assert!(matches!(r, Err(LabError::OrbitBlowUp { step: 0, .. })));
    }
}
