//! Verbatim transcriptions of the published coordinate formulas for the moving
//! coordinates, kept separate from the shipped maps so that an audit can report which
//! published components disagree with the word-level oracle.
//!
//! Components that are only given implicitly in the source (for instance `y` through
//! the boundary trace) are omitted here.

use serde::Serialize;

use super::{coords_from_rep, CharacterPoint};
use crate::error::Result;
use crate::trace::Poly;
use crate::word::{Representation, Twist};

#[derive(Debug, Clone)]
pub struct PrintedComponent {
    pub twist: Twist,
    /// Index into `a b c x y z d`.
    pub coord: usize,
    pub text: &'static str,
}

/// Every published moving-coordinate formula.
pub fn components() -> Vec<PrintedComponent> {
    let c = |twist, coord, text| PrintedComponent { twist, coord, text };
    vec![
        c(
            Twist::N22U,
            3,
            "b^2 xy^2 +b^2 yz-b^3 dy - aby^2 +b^2 cd+c^2 x -2bcxy+2bdy-bcz+acy-yz-cd+ab-x",
        ),
        c(Twist::N22U, 6, "b^2 d-bxy-bz+cx+ay-d"),
        c(Twist::N22U, 5, "b (b^2 d-bxy-bz+cx+ay-d) - bd + z"),
        c(
            Twist::N13T,
            5,
            "a^2 x^2 z-a^2 kx-a^2 cx+b^2 z-2abxz +axd+bcx+abk+kx-bc+ac-z",
        ),
        c(Twist::N13T, 6, "ak-axz+cx+bz-d"),
        c(Twist::N13U, 3, "ab-zy+cd-x"),
        c(
            Twist::N13U,
            6,
            "a d - a y + a b c - a c x + a b z - a x z + a c d z - a c y z + a^2  d + a c^2   d - a y z^2",
        ),
        c(Twist::N13W, 0, "w(xc-d)-(x(cw-b)-(zc-a))"),
        c(Twist::N13W, 6, "w(dw-(zc-a))-(x(wb-c)-(zb-d))"),
        c(Twist::N31U, 3, "c^3d-c^2yz-c^2x-2cd+cbz+cay+x"),
        c(
            Twist::N31U,
            4,
            "-a^4bc^3+a^4bc+a^4c^2y+a^3bc^4z-a^3bc^2z+a^3c^3x-a^3c^3yz-a^3c^2d-2a^3cx+a^3d\
             -a^2bc^5-a^2bc^3z^2+4a^2bc^3+a^2bcz^2-2a^2bc-a^2c^4xz+a^2c^4y+a^2c^3dz\
             +3a^2c^2xz+a^2c^2yz^2-3a^2c^2y-2a^2cdz-a^2xz-a^2y+abc^4z-3abc^2z+abz\
             +ac^5x-ac^4d-5ac^3x-ac^3yz+4ac^2d+5acx+2acyz-2ad+y",
        ),
        c(
            Twist::N31U,
            6,
            "-a^3bc^3+a^3bc+a^3c^2y+a^2bc^4z-a^2bc^2z+a^2c^3x-a^2c^3yz-a^2c^2d-2a^2cx+a^2d\
             -abc^5-abc^3z^2+3abc^3+abcz^2-abc-ac^4xz+ac^4y+ac^3dz+3ac^2xz+ac^2yz^2\
             -2ac^2y-2acdz-axz-ay+bc^4z-2bc^2z+bz+c^5x-c^4d-4c^3x-c^3yz+3c^2d+3cx+cyz-d",
        ),
    ]
}

impl PrintedComponent {
    /// Expands the text, binding the auxiliary traces used by the source.
    pub fn poly(&self) -> Result<Poly> {
        let k = match self.twist {
            Twist::N22U => Poly::parse("a*b*d - a*z - b*y + c")?,
            Twist::N13T | Twist::N13U | Twist::N13W => Poly::parse("a*d - y")?,
            Twist::N31U => Poly::parse("a*b*c*d - b*c*y - a*c*z - a*b*x + a^2 + b^2 + c^2 - 2")?,
        };
        let wv = Poly::parse("x*z")?.sub(&k)?;
        Poly::parse_with(self.text, &[("k", k), ("w", wv)])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditLine {
    pub twist: String,
    pub coord: &'static str,
    pub max_dev: f64,
    pub matches: bool,
}

/// Compares each published component with the oracle on the given representations.
pub fn audit(reps: &[Representation], tol: f64) -> Result<Vec<AuditLine>> {
    let mut out = Vec::new();
    for comp in components() {
        let poly = comp.poly()?;
        let endo = comp.twist.endo();
        let mut max_dev: f64 = 0.0;
        for rho in reps {
            let pt = coords_from_rep(rho)?;
            let want = coords_from_rep(&endo.pullback(rho)?)?.to_array()[comp.coord];
            max_dev = max_dev.max((poly.eval(&pt.to_array()) - want).abs());
        }
        out.push(AuditLine {
            twist: comp.twist.label(),
            coord: crate::trace::VARS[comp.coord],
            max_dev,
            matches: max_dev < tol,
        });
    }
    Ok(out)
}

/// Convenience for tests: evaluates a published component at a point.
pub fn eval_component(comp: &PrintedComponent, pt: &CharacterPoint) -> Result<f64> {
    Ok(comp.poly()?.eval(&pt.to_array()))
}
