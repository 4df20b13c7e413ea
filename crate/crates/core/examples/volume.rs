//! Frobenius-Schur indicators, the volume series and its Monte Carlo estimate.

use charvar_lab::measures::{
    bias_order, fs_indicator, mc_identity_density, richardson, smeared_expectation, volume_series,
};

fn main() -> charvar_lab::Result<()> {
    let fs: Vec<i8> = (1..=8).map(fs_indicator).collect::<Result<_, _>>()?;
    println!("Frobenius-Schur indicators n = 1..8: {fs:?}");
    for k in 4..=8 {
        let s = volume_series(k, 1e-12)?;
        println!("f_{k}(1) = {:.12} ({} terms, bound {:.1e})", s.value, s.term_count, s.truncation_bound);
    }
    let k = 5;
    let series = volume_series(k, 1e-12)?.value;
    let coarse = mc_identity_density(k, 0.4, 4_000_000, 1)?;
    let fine = mc_identity_density(k, 0.2, 4_000_000, 2)?;
    for d in [&coarse, &fine] {
        println!(
            "eps {:.2}: estimate {:.5} +- {:.5}, exact smeared value {:.5}",
            d.epsilon,
            d.estimate,
            d.std_error,
            smeared_expectation(k, d.epsilon)
        );
    }
    let extrapolated = richardson(coarse.estimate, fine.estimate, bias_order(k));
    println!("extrapolated {extrapolated:.5} against series {series:.5}");
    Ok(())
}
