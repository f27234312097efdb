use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shiftlab::{catalog, CliError, ExperimentConfig, Format, Overrides};

#[derive(Parser)]
#[command(name = "shiftlab", version, about = "Run shiftlab experiments from TOML configs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its report.
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Print every experiment with its parameter defaults.
    List,
    /// Parse and resolve a config without running it.
    Validate {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

#[derive(Args)]
struct OverrideArgs {
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Truncation dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Sample grid size.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

impl From<OverrideArgs> for Overrides {
    fn from(a: OverrideArgs) -> Self {
        Overrides { seed: a.seed, dim: a.dim, grid: a.grid, tol: a.tol, out: a.out, format: a.format }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::List => {
            print!("{}", catalog::render());
            Ok(0)
        }
        Command::Validate { config, overrides } => {
            let cfg = ExperimentConfig::from_path(&config, &overrides.into())?;
            println!("{}: ok ({})", config.display(), cfg.experiment.name());
            Ok(0)
        }
        Command::Run { config, overrides } => {
            shiftlab::init_threads()?;
            let cfg = ExperimentConfig::from_path(&config, &overrides.into())?;
            let res = shiftlab::run(&cfg)?;
            if cfg.output.path.is_none() {
                print!("{}", res.rendered);
            }
            let failed = &res.report.payload.unexpected_failures;
            if !failed.is_empty() {
                eprintln!("failing verdicts: {}", failed.join(", "));
            }
            Ok(res.exit_code)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("shiftlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
