//! Symbolic trace calculus on the free group of rank three.

pub mod poly;
pub mod reduce;

pub use poly::{Exps, Poly, VARS};
pub use reduce::{canonical, trace_of_word, TraceReducer};

use crate::error::Result;
use crate::word::{w, EndoF3, Word};

/// The words whose traces are the coordinates, in order `a b c x y z d`.
pub fn coordinate_words() -> [Word; 7] {
    ["A", "B", "C", "AB", "BC", "CA", "ABC"].map(w)
}

/// The relation satisfied by the coordinates of every representation.
pub fn fricke_polynomial() -> Poly {
    Poly::parse(
        "a^2 + b^2 + c^2 + d^2 + x^2 + y^2 + z^2 \
         - ((a*b + c*d)*x + (b*c + d*a)*y + (c*a + b*d)*z) + x*y*z + a*b*c*d - 4",
    )
    .expect("literal")
}

/// Seven polynomials giving the new coordinates in terms of the old.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap {
    pub polys: [Poly; 7],
}

impl CoordinateMap {
    pub fn identity() -> CoordinateMap {
        CoordinateMap {
            polys: std::array::from_fn(Poly::var),
        }
    }

    pub fn apply(&self, pt: &[f64; 7]) -> [f64; 7] {
        std::array::from_fn(|i| self.polys[i].eval(pt))
    }
}

/// Traces of the images of the coordinate words.
pub fn induced_map(phi: &EndoF3) -> Result<CoordinateMap> {
    let words = coordinate_words();
    let mut polys: Vec<Poly> = Vec::with_capacity(7);
    for word in &words {
        polys.push((*trace_of_word(&phi.apply(word))?).clone());
    }
    Ok(CoordinateMap {
        polys: polys.try_into().expect("seven"),
    })
}
