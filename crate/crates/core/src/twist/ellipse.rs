//! Ellipse normal forms: each twist fixes a trace `nu` and moves two coordinates by an
//! affine map `p -> center + M(nu) (p - center)` preserving
//! `eta^2 + zeta^2 + nu eta zeta = R`, where `(eta, zeta) = p - center`.
//!
//! `M(nu)` has determinant 1 and trace `nu^2 - 2`, so it is conjugate to the rotation by
//! `2 arccos(nu/2)`. `R` is a product of two two-generator Fricke factors, both
//! non-positive on characters, divided by a negative quantity.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use super::{apply_twist, CharacterPoint};
use crate::error::{LabError, Result};
use crate::trace::Poly;
use crate::word::Twist;

pub const NU_MARGIN: f64 = 1e-6;
pub const DENOM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct EllipseForm {
    pub twist: Twist,
    /// The conserved trace.
    pub nu: f64,
    /// Names of the two moving plane coordinates, e.g. `["x", "z/b"]`.
    pub plane: [&'static str; 2],
    pub center: [f64; 2],
    pub residual: f64,
    /// The two Fricke factors whose product appears in `residual`.
    pub factors: [f64; 2],
}

struct Centers {
    n22: [Poly; 2],
    n31: [Poly; 2],
}

fn centers() -> &'static Centers {
    static C: OnceLock<Centers> = OnceLock::new();
    C.get_or_init(|| {
        let p = |s: &str, k: &str, u: &str| {
            Poly::parse_with(s, &[("k", Poly::parse(k).unwrap()), ("u", Poly::parse(u).unwrap())])
                .expect("center literal")
        };
        let (k22, u22) = ("a*b*d - a*z - b*y + c", "b*y - c");
        let (k31, u31) = (
            "a*b*c*d - b*c*y - a*c*z - a*b*x + a^2 + b^2 + c^2 - 2",
            "a*c*z - a^2 - c^2 + 2",
        );
        Centers {
            n22: [
                p(
                    "a^2by^2-2a^2b-a^2cy+b^3y^2-2b^2cy+b^2ky+bc^2-bck-2by^2+2cy-2ky",
                    k22,
                    u22,
                ),
                p(
                    "a^2b^3y-a^2b^2c-2a^2by-2b^3y+b^2cy^2+2b^2c-2b^2k-2bc^2y+bcky+4by+c^3-c^2k-4c+4k",
                    k22,
                    u22,
                ),
            ],
            n31: [
                p(
                    "-a^4u+a^3cuz-a^2b^2u-a^2c^2u+2a^2c^2+a^2ku+4a^2u-4a^2+ab^2cuz-2ab^2cz\
                     -2ac^3z-2acuz+4acz+2b^2c^2+2b^2u-4b^2+2c^4-2c^2k+2c^2u-8c^2-2ku+4k-4u+8",
                    k31,
                    u31,
                ),
                p(
                    "2a^4-2a^3cz+2a^2b^2-a^2c^2u+2a^2c^2-2a^2k+2a^2u-8a^2+ab^2cuz-2ab^2cz\
                     +ac^3uz-2acuz+4acz-b^2c^2u+2b^2u-4b^2-c^4u+c^2ku+4c^2u-4c^2-2ku+4k-4u+8",
                    k31,
                    u31,
                ),
            ],
        }
    })
}

fn nonzero(v: f64, name: &str) -> Result<()> {
    if v.abs() < DENOM_TOL {
        return Err(LabError::DegenerateEllipse {
            reason: format!("{name} = {v:.3e} is too close to 0"),
        });
    }
    Ok(())
}

/// The conserved trace of the twist curve, as a function of the coordinates.
pub fn conserved_trace(twist: Twist, pt: &CharacterPoint) -> f64 {
    let CharacterPoint { a, b, c, x, y, z, d } = *pt;
    match twist {
        Twist::N22U => b * y - c,
        Twist::N13T => a * x - b,
        Twist::N13U => a * z - c,
        Twist::N13W => x * z - (a * d - y),
        Twist::N31U => a * c * z - a * a - c * c + 2.0,
    }
}

/// Generic center of the N13 forms.
fn n13_center(nu: f64, s: f64, t: f64) -> [f64; 2] {
    let q = nu * nu - 4.0;
    [(nu * s - 2.0 * t) / q, (nu * t - 2.0 * s) / q]
}

pub fn ellipse_form(twist: Twist, pt: &CharacterPoint) -> Result<EllipseForm> {
    let nu = conserved_trace(twist, pt);
    if !(nu.abs() < 2.0 - NU_MARGIN) {
        return Err(LabError::DegenerateEllipse {
            reason: format!("|nu| = {:.9} is within {NU_MARGIN:e} of 2", nu.abs()),
        });
    }
    let CharacterPoint { a, b, c, x, z, .. } = *pt;
    let arr = pt.to_array();
    let k = pt.boundary(twist.surface()).traces.last().copied().unwrap_or(0.0);
    let four = 4.0 - nu * nu;
    let (plane, center, factors, scale) = match twist {
        Twist::N13T => (
            ["d", "z"],
            n13_center(nu, a * c + x * k, a * k + c * x),
            [nu * nu + c * c + k * k - nu * c * k - 4.0, a * a + b * b + x * x - a * b * x - 4.0],
            1.0,
        ),
        Twist::N13U => (
            ["d", "x"],
            n13_center(nu, a * b + z * k, a * k + b * z),
            [nu * nu + b * b + k * k - nu * b * k - 4.0, a * a + c * c + z * z - a * c * z - 4.0],
            1.0,
        ),
        Twist::N13W => (
            ["a", "d"],
            n13_center(nu, x * c + z * b, x * b + z * c),
            [x * x + z * z + k * k - x * z * k - 4.0, b * b + c * c + nu * nu - b * c * nu - 4.0],
            1.0,
        ),
        Twist::N22U => {
            nonzero(a, "a")?;
            nonzero(b, "b")?;
            let cs = &centers().n22;
            let q = nu * nu - 4.0;
            let s = a * a - 2.0;
            (
                ["x", "z/b"],
                [cs[0].eval(&arr) / (a * q), cs[1].eval(&arr) / (a * b * q)],
                [
                    b * b + c * c + pt.y * pt.y - b * c * pt.y - 4.0,
                    s * s + nu * nu + k * k - s * nu * k - 4.0,
                ],
                a * a,
            )
        }
        Twist::N31U => {
            nonzero(a, "a")?;
            nonzero(b, "b")?;
            nonzero(c, "c")?;
            let cs = &centers().n31;
            let q = a * b * c * (nu * nu - 4.0);
            let s = b * b - 2.0;
            (
                ["x/c", "y/a"],
                [cs[0].eval(&arr) / q, cs[1].eval(&arr) / q],
                [
                    a * a + c * c + z * z - a * c * z - 4.0,
                    s * s + nu * nu + k * k - s * nu * k - 4.0,
                ],
                b * b,
            )
        }
    };
    Ok(EllipseForm {
        twist,
        nu,
        plane,
        center,
        residual: factors[0] * factors[1] / (scale * four),
        factors,
    })
}

impl EllipseForm {
    /// Coordinates of `pt` in the moving plane.
    pub fn plane_point(&self, pt: &CharacterPoint) -> [f64; 2] {
        match self.twist {
            Twist::N13T => [pt.d, pt.z],
            Twist::N13U => [pt.d, pt.x],
            Twist::N13W => [pt.a, pt.d],
            Twist::N22U => [pt.x, pt.z / pt.b],
            Twist::N31U => [pt.x / pt.c, pt.y / pt.a],
        }
    }

    /// `eta^2 + zeta^2 + nu eta zeta` at the displacement of `pt` from the center.
    pub fn quadric(&self, pt: &CharacterPoint) -> f64 {
        let p = self.plane_point(pt);
        let (e, z) = (p[0] - self.center[0], p[1] - self.center[1]);
        e * e + z * z + self.nu * e * z
    }

    /// The rotation matrix acting on the displacement.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let v = self.nu;
        match self.twist {
            Twist::N13T | Twist::N13W | Twist::N31U => [[-1.0, -v], [v, v * v - 1.0]],
            Twist::N13U | Twist::N22U => [[v * v - 1.0, v], [-v, -1.0]],
        }
    }

    /// Predicted plane image of `pt`.
    pub fn predict(&self, pt: &CharacterPoint) -> [f64; 2] {
        let p = self.plane_point(pt);
        let m = self.matrix();
        let (e, z) = (p[0] - self.center[0], p[1] - self.center[1]);
        [
            self.center[0] + m[0][0] * e + m[0][1] * z,
            self.center[1] + m[1][0] * e + m[1][1] * z,
        ]
    }

    /// Rotation number of the twist on its ellipse, `arccos(nu/2) / pi` in `(0, 1)`.
    pub fn rotation_fraction(&self) -> f64 {
        (self.nu / 2.0).acos() / PI
    }

    /// Position on the ellipse as a fraction of a turn, in `[0, 1)`. In these
    /// coordinates the quadric is a round circle and the twist a rigid rotation.
    pub fn angle_fraction(&self, pt: &CharacterPoint) -> f64 {
        let p = self.plane_point(pt);
        let (e, z) = (p[0] - self.center[0], p[1] - self.center[1]);
        let u1 = e + 0.5 * self.nu * z;
        let u2 = (1.0 - 0.25 * self.nu * self.nu).sqrt() * z;
        let f = u2.atan2(u1) / (2.0 * PI);
        if f < 0.0 {
            f + 1.0
        } else {
            f
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationReport {
    pub twist: String,
    pub nu: f64,
    pub det: f64,
    pub trace: f64,
    pub rotation_angle: f64,
    /// Largest deviation between predicted and actual plane image, in original units.
    pub max_dev: f64,
    /// `|quadric - R|` at the source point.
    pub quadric_residual: f64,
    pub residual: f64,
    pub factors: [f64; 2],
}

impl RotationReport {
    pub fn det_err(&self) -> f64 {
        (self.det - 1.0).abs()
    }

    pub fn trace_err(&self) -> f64 {
        (self.trace - (self.nu * self.nu - 2.0)).abs()
    }
}

pub fn rotation_check(twist: Twist, pt: &CharacterPoint) -> Result<RotationReport> {
    rotation_check_image(twist, pt, &apply_twist(twist, pt))
}

/// As [`rotation_check`], for an image `img` of `pt` produced by some other map.
pub fn rotation_check_image(twist: Twist, pt: &CharacterPoint, img: &CharacterPoint) -> Result<RotationReport> {
    let form = ellipse_form(twist, pt)?;
    let got = form.plane_point(img);
    let want = form.predict(pt);
    // undo the plane scaling so deviations are in coordinate units
    let unscale = match twist {
        Twist::N22U => [1.0, pt.b],
        Twist::N31U => [pt.c, pt.a],
        _ => [1.0, 1.0],
    };
    let max_dev = (0..2)
        .map(|i| ((got[i] - want[i]) * unscale[i]).abs())
        .fold(0.0, f64::max);
    let m = form.matrix();
    Ok(RotationReport {
        twist: twist.label(),
        nu: form.nu,
        det: m[0][0] * m[1][1] - m[0][1] * m[1][0],
        trace: m[0][0] + m[1][1],
        rotation_angle: 2.0 * (form.nu / 2.0).acos(),
        max_dev,
        quadric_residual: (form.quadric(pt) - form.residual).abs(),
        residual: form.residual,
        factors: form.factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::coords_from_rep;
    use crate::word::Representation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_point_is_degenerate() {
        for t in Twist::ALL {
            assert!(matches!(
                ellipse_form(t, &CharacterPoint::TRIVIAL),
                Err(LabError::DegenerateEllipse { .. })
            ));
        }
    }

    #[test]
    fn nu_zero_gives_half_turn() {
        let f = EllipseForm {
            twist: Twist::N13T,
            nu: 0.0,
            plane: ["d", "z"],
            center: [0.0, 0.0],
            residual: 0.0,
            factors: [0.0, 0.0],
        };
        assert_eq!(f.matrix(), [[-1.0, -0.0], [0.0, -1.0]]);
        assert_eq!(f.rotation_fraction(), 0.5);
    }

    #[test]
    fn forms_hold_on_random_characters() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for t in Twist::ALL {
            for _ in 0..300 {
                let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
                let Ok(r) = rotation_check(t, &p) else { continue };
                assert!(r.max_dev < 1e-8, "{t}: {r:?}");
                assert!(r.quadric_residual < 1e-8 * (1.0 + r.residual), "{t}: {r:?}");
                assert!(r.det_err() < 1e-12 && r.trace_err() < 1e-12);
                assert!(r.factors[0] <= 1e-12 && r.factors[1] <= 1e-12, "{t}: {r:?}");
                assert!(r.residual >= -1e-12);
            }
        }
    }

    #[test]
    fn twist_advances_angle_by_rotation_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for t in Twist::ALL {
            let p = coords_from_rep(&Representation::haar(3, &mut rng)).unwrap();
            let f = ellipse_form(t, &p).unwrap();
            let step = (f.angle_fraction(&apply_twist(t, &p)) - f.angle_fraction(&p)).rem_euclid(1.0);
            let r = f.rotation_fraction();
            let off = (step - r).abs().min((step - (1.0 - r)).abs());
            assert!(off < 1e-9, "{t}: step {step} vs {r}");
        }
    }
}
