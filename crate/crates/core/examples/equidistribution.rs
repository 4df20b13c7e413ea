//! Single-twist orbits against a pure rotation of the same angle.

use charvar_lab::equidist::{doubling_slope, equidistribute};
use charvar_lab::{coords_from_rep, Representation, Su2, Twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let p = coords_from_rep(&Representation::haar(3, &mut rng))?;
    for t in [Twist::N13T, Twist::N13U, Twist::N13W] {
        let r = equidistribute(t, &p, 10_000)?;
        println!(
            "{t}: rotation {:.6}, D* {:.3e}, reference {:.3e}, resonance {:?}",
            r.rotation_fraction, r.star_discrepancy, r.reference_discrepancy, r.resonance
        );
    }
    let (pts, slope) = doubling_slope(Twist::N13U, &p, 1000, 5)?;
    println!("N13.U discrepancy by N: {pts:?}, slope {slope:.2}");

    // a quarter-turn point: tr(AAB) = sqrt 2
    let a = Su2::haar(&mut rng);
    let b = a.mul(&a).inv().mul(&Su2::from_angle_axis(std::f64::consts::FRAC_PI_4, [0.0, 0.0, 1.0]));
    let q = coords_from_rep(&Representation::new(vec![a, b, Su2::haar(&mut rng)]))?;
    let r = equidistribute(Twist::N13T, &q, 1000)?;
    println!("resonant point: {:?}, {} distinct orbit points", r.resonance, r.distinct_points);
    Ok(())
}
