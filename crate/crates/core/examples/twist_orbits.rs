//! Twist maps on trace coordinates, their ellipse normal forms, and orbits.

use charvar_lab::twist::{ellipse_form, orbit, rotation_check};
use charvar_lab::{apply_twist, coords_from_rep, Representation, Twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = coords_from_rep(&Representation::haar(3, &mut rng))?;
    println!("start {:?}", p.to_array());
    for t in Twist::ALL {
        let q = apply_twist(t, &p);
        let f = ellipse_form(t, &p)?;
        let r = rotation_check(t, &p)?;
        println!(
            "{t}: nu {:+.4}, plane {:?}, R {:.4e}, rotation {:.4} turn, normal-form deviation {:.1e}, Fricke after {:.1e}",
            f.nu,
            f.plane,
            f.residual,
            f.rotation_fraction(),
            r.max_dev,
            q.fricke()
        );
    }
    let pts = orbit(&[Twist::N13T, Twist::N13U], &p, 10_000)?;
    let worst = pts.iter().map(|q| q.fricke().abs()).fold(0.0, f64::max);
    println!("alternating T/U orbit: {} points, max Fricke residual {worst:.2e}", pts.len());
    Ok(())
}
