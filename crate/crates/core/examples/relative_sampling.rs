//! Haar samples conditioned on boundary traces.

use charvar_lab::measures::{RelativeSampler, Window};
use charvar_lab::rng::stream;
use charvar_lab::Surface;

fn main() -> charvar_lab::Result<()> {
    let cases = [
        (Surface::N13, vec![0.0, 0.0, 0.0]),
        (Surface::N22, vec![0.5, -1.0]),
        (Surface::N31, vec![1.0]),
    ];
    for (surface, targets) in cases {
        let sampler = RelativeSampler::new(surface, Window::new(targets, 0.05))?;
        let mut rng = stream(9, 0);
        let acc = sampler.calibrate(&mut rng)?;
        let (_, p, tries) = sampler.sample(&mut rng)?;
        println!(
            "{surface}: rejection acceptance {:.4}, window probability {:.3e}; sample boundary {:?} after {tries} proposals",
            acc.rejection_rate,
            acc.window_probability,
            p.boundary(surface).traces
        );
    }
    Ok(())
}
