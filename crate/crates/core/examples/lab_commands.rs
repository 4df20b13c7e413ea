//! Runs the batch commands in-process with a reduced configuration and prints their
//! summaries; the files they would write are listed but not written.

use charvar_lab::lab::{run, Command, ExperimentConfig};

fn main() -> charvar_lab::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.verify.trace_words = 50;
    cfg.verify.fricke_samples = 10_000;
    cfg.ergodicity.steps = 100_000;
    cfg.ergodicity.space_batch_size = 1000;
    cfg.volume.samples = 1_000_000;
    for cmd in Command::ALL {
        let out = run(cmd, &cfg, true)?;
        let files: Vec<_> = out.artifacts.iter().map(|a| a.name.as_str()).collect();
        println!("== {} -> {files:?}", cmd.name());
        print!("{}", out.summary);
    }
    Ok(())
}
