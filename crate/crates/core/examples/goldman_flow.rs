//! Goldman flows for a separating and an HNN decomposition, and the twist they
//! produce at time f(rho(gamma)).

use std::f64::consts::PI;

use charvar_lab::flow::{
    flow_hnn, flow_separating, twist_equals_flow, Decomposition, HnnDecomposition, SeparatingDecomposition,
};
use charvar_lab::{coords_from_rep, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> charvar_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rho = Representation::haar(3, &mut rng);
    let sep = SeparatingDecomposition::example();
    let hnn = HnnDecomposition::n22_along_x();

    let p0 = coords_from_rep(&rho)?;
    for t in [0.5, PI, 2.0 * PI] {
        let ps = coords_from_rep(&flow_separating(&sep, &rho, t)?)?;
        let ph = coords_from_rep(&flow_hnn(&hnn, &rho, t)?)?;
        println!("t = {t:.4}: separating moved {:.3e}, HNN moved {:.3e}", ps.max_diff(&p0), ph.max_diff(&p0));
    }
    let s = twist_equals_flow(Decomposition::Separating(&sep), &rho)?;
    let h = twist_equals_flow(Decomposition::Hnn(&hnn), &rho)?;
    println!("separating twist = flow at t = {:.4}: deviation {:.1e}", s.time, s.max_dev);
    println!("HNN twist = flow at t = {:.4}: deviation {:.1e}", h.time, h.max_dev);
    Ok(())
}
