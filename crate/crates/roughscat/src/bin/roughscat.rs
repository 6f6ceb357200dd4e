use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use roughscat::config::Mode;
use roughscat::pipeline::{cmd_decay, cmd_forward, cmd_reconstruct, cmd_sample, cmd_validate};
use roughscat::{init_threads, ExperimentConfig, Result, RunRecord};

/// Elastic rough-surface scattering and near-field imaging experiments.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Overrides {
    /// TOML configuration file; defaults apply when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Start from the preset of reference surface 1-4.
    #[arg(long, global = true)]
    example: Option<u8>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tikhonov parameter.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Comma-separated relative noise levels.
    #[arg(long, global = true, value_delimiter = ',')]
    noise: Option<Vec<f64>>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the forward problem and write the near-field matrix.
    Forward,
    /// Image from a stored matrix at each noise level.
    Sample {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Scattered field of fan surfaces of growing radius.
    Decay {
        /// Comma-separated fan radii.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
    /// Run the solver checks; exits nonzero if any fails.
    Validate,
    /// Forward solve followed by sampling.
    Reconstruct {
        /// Use the modified near-field equation with this fan radius.
        #[arg(long)]
        fan_radius: Option<f64>,
    },
}

fn load(o: &Overrides) -> Result<ExperimentConfig> {
    let mut config = match (&o.config, o.example) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(id)) => ExperimentConfig::example(id)?,
        (None, None) => ExperimentConfig::default(),
    };
    if let (Some(_), Some(id)) = (&o.config, o.example) {
        config.surface = ExperimentConfig::example(id)?.surface;
    }
    if let Some(seed) = o.seed {
        config.seed = seed;
    }
    if let Some(alpha) = o.alpha {
        config.alpha = alpha;
    }
    if let Some(noise) = &o.noise {
        config.noise = noise.clone();
    }
    if let Some(out) = &o.out {
        config.output = out.clone();
    }
    Ok(config)
}

fn summarize(record: &RunRecord) {
    for t in &record.timings {
        eprintln!("{:>24}: {:.2} s", t.stage, t.seconds);
    }
    for (name, value) in &record.diagnostics {
        eprintln!("{name:>24}: {value:e}");
    }
    for path in &record.outputs {
        println!("{}", path.display());
    }
}

fn run(cli: Cli) -> Result<bool> {
    init_threads()?;
    let mut config = load(&cli.overrides)?;
    let record = match cli.command {
        Command::Forward => cmd_forward(&config)?,
        Command::Sample { matrix } => cmd_sample(&config, &matrix)?,
        Command::Decay { radii } => {
            if let Some(r) = radii {
                config.decay_radii = r;
            }
            cmd_decay(&config)?
        }
        Command::Validate => {
            let (record, report) = cmd_validate(&config)?;
            for c in &report.checks {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                println!(
                    "{verdict} {:<24} {:.3e} (limit {:.1e})",
                    c.name, c.measured, c.threshold
                );
                if let Some(e) = &c.error {
                    println!("     {e}");
                }
            }
            summarize(&record);
            return Ok(report.passed());
        }
        Command::Reconstruct { fan_radius } => {
            if let Some(r) = fan_radius {
                config.mode = Mode::Modified;
                config.fan_radius = Some(r);
            }
            cmd_reconstruct(&config)?
        }
    };
    summarize(&record);
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
