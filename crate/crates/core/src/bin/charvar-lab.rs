use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use charvar_lab::lab::{run, Command, ExperimentConfig};

#[derive(Parser)]
#[command(name = "charvar-lab", about = "Trace-coordinate experiments on SU(2) character varieties")]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// JSON configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write scatter plots.
    #[arg(long)]
    svg: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Verify,
    Orbit,
    Equidistribute,
    Ergodicity,
    Volume,
    Flow,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    };
    let mut cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let cmd = match cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Orbit => Command::Orbit,
        Cmd::Equidistribute => Command::Equidistribute,
        Cmd::Ergodicity => Command::Ergodicity,
        Cmd::Volume => Command::Volume,
        Cmd::Flow => Command::Flow,
    };
    match run(cmd, &cfg, cli.svg).and_then(|o| o.write(&cli.out).map(|_| o)) {
        Ok(o) => {
            print!("{}", o.summary);
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
