//! Free-group words, the built-in twist automorphisms and their action on
//! representations.

use charvar_lab::word::w;
use charvar_lab::{builtin_twists, Representation, Surface, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    let word = Word::parse("A^2 B C^-1 c")?;
    println!("parsed: {word}, length {}, inverse {}", word.len(), word.inverse());

    for surface in Surface::ALL {
        println!("{surface}: boundary {:?}", surface.boundary_words().iter().map(|b| b.to_string()).collect::<Vec<_>>());
        for (twist, endo) in builtin_twists(surface) {
            let imgs: Vec<String> = endo.images.iter().map(|i| i.to_string()).collect();
            println!("  {twist} about {}: A, B, C -> {:?}", twist.curve(), imgs);
            for b in surface.boundary_words() {
                assert!(endo.apply(&b).is_conjugate(&b));
            }
        }
    }

    // evaluating a twisted word equals evaluating the word on the pulled-back representation
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rho = Representation::haar(3, &mut rng);
    let endo = charvar_lab::Twist::N13W.endo();
    let x = w("ABcA");
    let lhs = endo.apply(&x).evaluate(&rho)?;
    let rhs = x.evaluate(&endo.pullback(&rho)?)?;
    println!("pullback commutes with evaluation: max diff {:.2e}", lhs.max_diff(&rhs));
    Ok(())
}
