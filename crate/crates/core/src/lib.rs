//! Numerical lab for mapping class group dynamics on SU(2) character varieties of
//! non-orientable surfaces with free fundamental group of rank three.
//!
//! The layers, bottom up: [`su2`] quaternion arithmetic, [`word`] free-group words and
//! twist automorphisms, [`trace`] the symbolic trace calculus, [`twist`] the coordinate
//! maps with their ellipse normal forms, [`flow`] Goldman circle actions, [`measures`]
//! Haar push-forward estimates and [`lab`] the batch experiments behind the CLI.

// `!(x < y)` guards deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod equidist;
pub mod error;
pub mod flow;
pub mod lab;
pub mod measures;
pub mod rng;
pub mod su2;
pub mod trace;
pub mod twist;
pub mod word;

pub use error::{LabError, Result};
pub use su2::{exp_scaled, Algebra, Su2};
pub use trace::{fricke_polynomial, induced_map, trace_of_word, CoordinateMap, Poly};
pub use twist::{apply_twist, coords_from_rep, BoundaryTraces, CharacterPoint, EllipseForm};
pub use word::{builtin_twists, EndoF3, Representation, Surface, Twist, Word};
