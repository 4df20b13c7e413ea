//! Hard-coded twist maps on trace coordinates.
//!
//! Invariant coordinates are copied, so they are preserved bit for bit. The moving
//! coordinates are closed-form polynomials; each is pinned against the symbolic
//! reduction and against the word-level oracle in tests.

use super::CharacterPoint;
use crate::word::Twist;

pub fn apply(twist: Twist, p: &CharacterPoint) -> CharacterPoint {
    match twist {
        Twist::N22U => n22_u(p),
        Twist::N13T => n13_t(p),
        Twist::N13U => n13_u(p),
        Twist::N13W => n13_w(p),
        Twist::N31U => n31_u(p),
    }
}

fn n22_u(p: &CharacterPoint) -> CharacterPoint {
    let CharacterPoint { a, b, c, x, y, z, d } = *p;
    let x2 = b * b * x * y * y + b * b * y * z - b * b * b * d * y - a * b * y * y + b * b * c * d
        + c * c * x
        - 2.0 * b * c * x * y
        + 2.0 * b * d * y
        - b * c * z
        + a * c * y
        - y * z
        - c * d
        + a * b
        - x;
    let d2 = b * b * d - b * x * y - b * z + c * x + a * y - d;
    let z2 = b * d2 - b * d + z;
    CharacterPoint { x: x2, z: z2, d: d2, ..*p }
}

fn n13_t(p: &CharacterPoint) -> CharacterPoint {
    let CharacterPoint { a, b, c, x, y, z, d } = *p;
    let k = a * d - y;
    let z2 = a * a * x * x * z - a * a * k * x - a * c * x * x + b * b * z - 2.0 * a * b * x * z
        + a * d * x
        + b * c * x
        + a * b * k
        + k * x
        - b * d
        + a * c
        - z;
    let d2 = a * k - a * x * z + c * x + b * z - d;
    let y2 = a * d2 - k;
    CharacterPoint { y: y2, z: z2, d: d2, ..*p }
}

fn n13_u(p: &CharacterPoint) -> CharacterPoint {
    let CharacterPoint { a, b, c, x, y, z, d } = *p;
    let k = a * d - y;
    let u = a * z - c;
    let x2 = a * b - z * y + c * d - x;
    let d2 = (u * u - 1.0) * d + u * x - u * (a * b + k * z) + (a * k + b * z);
    let y2 = a * d2 - k;
    CharacterPoint { x: x2, y: y2, d: d2, ..*p }
}

fn n13_w(p: &CharacterPoint) -> CharacterPoint {
    let CharacterPoint { a, b, c, x, y, z, d } = *p;
    let k = a * d - y;
    let w = x * z - k;
    let a2 = w * (x * c - d) - (x * (c * w - b) - (z * c - a));
    let d2 = w * (d * w - (z * c - a)) - (x * (w * b - c) - (z * b - d));
    let y2 = a2 * d2 - k;
    CharacterPoint { a: a2, y: y2, d: d2, ..*p }
}

fn n31_u(p: &CharacterPoint) -> CharacterPoint {
    let CharacterPoint { a, b, c, x, y, z, d } = *p;
    let (a2, a3, a4) = (a * a, a * a * a, a * a * a * a);
    let (c2, c3, c4) = (c * c, c * c * c, c * c * c * c);
    let x2 = c3 * d - c2 * y * z - c2 * x - 2.0 * c * d + c * b * z + c * a * y + x;
    let y2 = a4 * y + a3 * b * z + a3 * c2 * d
        - a3 * c * x
        - 2.0 * a3 * c * y * z
        - a3 * d
        - a2 * b * c * z * z
        - a2 * c3 * d * z
        + a2 * c2 * x * z
        + a2 * c2 * y * z * z
        + a2 * c2 * y
        + 2.0 * a2 * c * d * z
        - a2 * x * z
        - 3.0 * a2 * y
        + a * b * c2 * z
        - a * b * z
        + a * c4 * d
        - a * c3 * x
        - a * c3 * y * z
        - 4.0 * a * c2 * d
        + 3.0 * a * c * x
        + 2.0 * a * c * y * z
        + 2.0 * a * d
        + y;
    let d2 = a3 * y + a2 * b * z + a2 * c2 * d
        - a2 * c * x
        - 2.0 * a2 * c * y * z
        - a2 * d
        - a * b * c * z * z
        - a * c3 * d * z
        + a * c2 * x * z
        + a * c2 * y * z * z
        + a * c2 * y
        + 2.0 * a * c * d * z
        - a * x * z
        - 2.0 * a * y
        + b * c2 * z
        + c4 * d
        - c3 * x
        - c3 * y * z
        - 3.0 * c2 * d
        + 2.0 * c * x
        + c * y * z
        + d;
    CharacterPoint { x: x2, y: y2, d: d2, ..*p }
}

/// The coordinates each twist leaves unchanged, by index into `a b c x y z d`.
pub fn invariant_coords(twist: Twist) -> &'static [usize] {
    match twist {
        Twist::N22U => &[0, 1, 2, 4],
        Twist::N13T => &[0, 1, 2, 3],
        Twist::N13U => &[0, 1, 2, 5],
        Twist::N13W => &[1, 2, 3, 5],
        Twist::N31U => &[0, 1, 2, 5],
    }
}
