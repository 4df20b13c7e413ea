//! Compares the published coordinate formulas with the word-level oracle.

use charvar_lab::twist::printed::audit;
use charvar_lab::Representation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let reps: Vec<_> = (0..500).map(|_| Representation::haar(3, &mut rng)).collect();
    for line in audit(&reps, 1e-8)? {
        println!(
            "{:>6}.{}  max dev {:.2e}  {}",
            line.twist,
            line.coord,
            line.max_dev,
            if line.matches { "matches" } else { "differs" }
        );
    }
    Ok(())
}
