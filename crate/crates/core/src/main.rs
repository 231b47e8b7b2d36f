use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use se2_frames::cli::{cmd_analyze, cmd_calderon, cmd_count, cmd_covering, cmd_gramian, cmd_oracle, Output};
use se2_frames::config::load_config;
use se2_frames::Error;

/// Frame bounds for shifted-lattice samplings of the SE(2) wavelet transform.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Gramian spectra over the dual cell and report frame bounds.
    Analyze(Common),
    /// Semidiscrete Calderon function and its reciprocal on the ball.
    Calderon(Common),
    /// Covering counts and explicit bounds for the cutoff wavelet (needs "L").
    Covering(Common),
    /// Check the sampled-energy identity on the configured test function.
    Oracle(Common),
    /// Dump a single Gramian at "omega" with its spectrum.
    Gramian(Common),
    /// Field of index-set sizes n(omega).
    Count(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: "output_dir" from the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Also write PNG heatmaps.
    #[arg(long)]
    png: bool,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. } | Error::InvalidInput(_) | Error::SingularBasis { .. } => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    let (Command::Analyze(c)
    | Command::Calderon(c)
    | Command::Covering(c)
    | Command::Oracle(c)
    | Command::Gramian(c)
    | Command::Count(c)) = &command;
    if let Some(k) = c.threads {
        if k == 0 {
            return Err(Error::Config {
                path: "--threads".into(),
                message: "must be at least 1".into(),
            });
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let cfg = load_config(&c.config)?.with_overrides(c.grid, c.reps, c.seed)?;
    let out = Output::new(c.out.clone().unwrap_or_else(|| cfg.output_dir.clone()), c.png)?;
    let text = match command {
        Command::Analyze(_) => {
            let a = cmd_analyze(&cfg, &out)?;
            print!("{}", a.summary);
            return Ok(if a.report.degenerate { EXIT_DEGENERATE } else { 0 });
        }
        Command::Calderon(_) => cmd_calderon(&cfg, &out)?,
        Command::Covering(_) => cmd_covering(&cfg, &out)?,
        Command::Oracle(_) => cmd_oracle(&cfg, &out)?.1,
        Command::Gramian(_) => cmd_gramian(&cfg, &out)?,
        Command::Count(_) => cmd_count(&cfg, &out)?,
    };
    print!("{text}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
