//! Time averages along a random T/U/W orbit on N13 against window space averages,
//! plus the single-twist negative control.

use charvar_lab::measures::{ergodicity, ErgodicitySpec};
use charvar_lab::Twist;

fn main() -> charvar_lab::Result<()> {
    let spec = ErgodicitySpec::n13_reference(7);
    let r = ergodicity(&spec)?;
    println!("program {:?}, {} steps, start {:?}", r.twists, r.steps, r.start);
    for s in &r.scores {
        println!("{:>5}  time {:+.5}  space {:+.5}  z {:+.2}", s.name, s.time_mean, s.space_mean, s.z);
    }
    println!("max |z| = {:.2}", r.max_abs_z);

    let control = ErgodicitySpec { twists: vec![Twist::N13T], ..spec };
    let c = ergodicity(&control)?;
    println!("single twist: max |z| = {:.1}, flagged {:?}", c.max_abs_z, c.flagged);
    Ok(())
}
