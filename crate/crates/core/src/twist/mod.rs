//! Twist dynamics on the trace coordinates of the three rank-three surfaces.

pub mod ellipse;
pub mod maps;
pub mod orbit;
pub mod printed;

pub use ellipse::{ellipse_form, rotation_check, rotation_check_image, EllipseForm, RotationReport};
pub use orbit::{orbit, random_program, OrbitIter};

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::trace::coordinate_words;
use crate::word::{Representation, Surface, Twist};

/// The seven traces `a b c x y z d` of `A B C AB BC CA ABC`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub d: f64,
}

impl CharacterPoint {
    /// The character of the trivial representation.
    pub const TRIVIAL: CharacterPoint = CharacterPoint {
        a: 2.0,
        b: 2.0,
        c: 2.0,
        x: 2.0,
        y: 2.0,
        z: 2.0,
        d: 2.0,
    };

    pub fn from_array(v: [f64; 7]) -> CharacterPoint {
        let [a, b, c, x, y, z, d] = v;
        CharacterPoint { a, b, c, x, y, z, d }
    }

    pub fn to_array(&self) -> [f64; 7] {
        [self.a, self.b, self.c, self.x, self.y, self.z, self.d]
    }

    /// Value of the Fricke polynomial, zero on genuine characters.
    pub fn fricke(&self) -> f64 {
        let CharacterPoint { a, b, c, x, y, z, d } = *self;
        a * a + b * b + c * c + d * d + x * x + y * y + z * z
            - ((a * b + c * d) * x + (b * c + d * a) * y + (c * a + b * d) * z)
            + x * y * z
            + a * b * c * d
            - 4.0
    }

    pub fn max_diff(&self, o: &CharacterPoint) -> f64 {
        let (p, q) = (self.to_array(), o.to_array());
        (0..7).map(|i| (p[i] - q[i]).abs()).fold(0.0, f64::max)
    }

    /// Traces of the boundary curves of `surface`, `k` last.
    pub fn boundary(&self, surface: Surface) -> BoundaryTraces {
        let CharacterPoint { a, b, c, x, y, z, d } = *self;
        let traces = match surface {
            Surface::N22 => vec![c, a * b * d - a * z - b * y + c],
            Surface::N13 => vec![b, c, a * d - y],
            Surface::N31 => vec![
                a * b * c * d - b * c * y - a * c * z - a * b * x + a * a + b * b + c * c - 2.0,
            ],
        };
        BoundaryTraces { surface, traces }
    }
}

/// Boundary traces: `(c, k)` on N22, `(b, c, k)` on N13, `(k)` on N31.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTraces {
    pub surface: Surface,
    pub traces: Vec<f64>,
}

impl BoundaryTraces {
    pub fn max_diff(&self, o: &BoundaryTraces) -> f64 {
        self.traces
            .iter()
            .zip(&o.traces)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

pub fn coords_from_rep(rho: &Representation) -> Result<CharacterPoint> {
    let words = coordinate_words();
    let mut v = [0.0; 7];
    for (i, w) in words.iter().enumerate() {
        v[i] = w.evaluate(rho)?.trace();
    }
    Ok(CharacterPoint::from_array(v))
}

pub fn apply_twist(twist: Twist, pt: &CharacterPoint) -> CharacterPoint {
    maps::apply(twist, pt)
}

/// Looks the twist up by surface and short name (`T`, `U`, `W`).
pub fn apply_twist_named(surface: Surface, name: &str, pt: &CharacterPoint) -> Result<CharacterPoint> {
    Ok(apply_twist(Twist::lookup(surface, name)?, pt))
}

/// Oracle image: coordinates of the pulled-back representation.
pub fn oracle_image(twist: Twist, rho: &Representation) -> Result<CharacterPoint> {
    coords_from_rep(&twist.endo().pullback(rho)?)
}

pub(crate) fn check_surface(program: &[Twist]) -> Result<Surface> {
    let s = program
        .first()
        .ok_or_else(|| LabError::Invalid("empty twist program".into()))?
        .surface();
    if let Some(t) = program.iter().find(|t| t.surface() != s) {
        return Err(LabError::Domain {
            surface: s.name().into(),
            twist: t.label(),
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::Su2;
    use crate::trace::{fricke_polynomial, induced_map};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_and_order_four_points() {
        let p = coords_from_rep(&Representation::identity(3)).unwrap();
        assert_eq!(p, CharacterPoint::TRIVIAL);
        let i = Su2::from_raw([0.0, 1.0, 0.0, 0.0]);
        let q = coords_from_rep(&Representation::new(vec![i; 3])).unwrap();
        assert_eq!(q.to_array(), [0.0, 0.0, 0.0, -2.0, -2.0, -2.0, 0.0]);
    }

    #[test]
    fn fixed_point_of_every_twist() {
        for t in Twist::ALL {
            assert_eq!(apply_twist(t, &CharacterPoint::TRIVIAL), CharacterPoint::TRIVIAL, "{t}");
        }
    }

    #[test]
    fn named_lookup_rejects_foreign_twist() {
        assert!(apply_twist_named(Surface::N22, "T", &CharacterPoint::TRIVIAL).is_err());
        assert!(apply_twist_named(Surface::N13, "W", &CharacterPoint::TRIVIAL).is_ok());
    }

    #[test]
    fn fricke_matches_polynomial() {
        let f = fricke_polynomial();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
            assert!(p.fricke().abs() < 1e-12);
            assert!((f.eval(&p.to_array()) - p.fricke()).abs() < 1e-12);
        }
    }

    #[test]
    fn hard_coded_maps_agree_with_oracle_and_symbolic_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for t in Twist::ALL {
            let sym = induced_map(&t.endo()).unwrap();
            for _ in 0..500 {
                let rho = Representation::haar(3, &mut rng);
                let p = coords_from_rep(&rho).unwrap();
                let got = apply_twist(t, &p);
                assert!(got.max_diff(&oracle_image(t, &rho).unwrap()) < 1e-10, "{t}");
                let s = CharacterPoint::from_array(sym.apply(&p.to_array()));
                assert!(got.max_diff(&s) < 1e-10, "{t}");
                assert!(p.boundary(t.surface()).max_diff(&got.boundary(t.surface())) < 1e-10);
                for &i in maps::invariant_coords(t) {
                    assert_eq!(got.to_array()[i].to_bits(), p.to_array()[i].to_bits());
                }
            }
        }
    }

    #[test]
    fn printed_audit_flags_exactly_the_known_errata() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let reps: Vec<_> = (0..200).map(|_| Representation::haar(3, &mut rng)).collect();
        let lines = printed::audit(&reps, 1e-8).unwrap();
        let bad: Vec<String> = lines
            .iter()
            .filter(|l| !l.matches)
            .map(|l| format!("{}.{}", l.twist, l.coord))
            .collect();
        assert_eq!(bad, ["N13.T.z", "N13.U.d", "N31.U.y", "N31.U.d"]);
    }

    #[test]
    fn printed_n31_y_matches_conjugation_by_the_curve() {
        let comp = &printed::components()[10];
        assert_eq!((comp.twist, comp.coord), (Twist::N31U, 4));
        // B -> A^2 C^2 B C^-2 A^-2, rather than the displayed B -> A^-2 C^-2 B C^2 A^2
        let inv = crate::word::EndoF3::new(
            "conj",
            ["A", "AACCBccaa", "C"].map(crate::word::w),
            ["A", "ccaaBAACC", "C"].map(crate::word::w),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let rho = Representation::haar(3, &mut rng);
            let p = coords_from_rep(&rho).unwrap();
            let want = coords_from_rep(&inv.pullback(&rho).unwrap()).unwrap().y;
            assert!((printed::eval_component(comp, &p).unwrap() - want).abs() < 1e-10);
        }
    }
}
