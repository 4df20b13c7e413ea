//! Trace polynomials of words in the seven coordinates and the Fricke relation.

use charvar_lab::word::w;
use charvar_lab::{coords_from_rep, fricke_polynomial, induced_map, trace_of_word, Representation, Twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    for text in ["AB", "ACB", "AABC", "AABBC", "ABAB", "AbaB"] {
        println!("tr {text:>6} = {}", trace_of_word(&w(text))?);
    }
    println!("Fricke polynomial: {}", fricke_polynomial());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rho = Representation::haar(3, &mut rng);
    let p = coords_from_rep(&rho)?;
    let word = w("ABcaBBCab");
    let sym = trace_of_word(&word)?.eval(&p.to_array());
    let num = word.evaluate(&rho)?.trace();
    println!("tr {word}: symbolic {sym:.15}, quaternion {num:.15}");
    println!("Fricke residual at a random character: {:.2e}", p.fricke());

    let map = induced_map(&Twist::N13T.endo())?;
    println!("N13.T acting on z: {}", map.polys[5]);
    Ok(())
}
