//! growthlab: deterministic experiments with product sets, word balls, and
//! translate covers in finitely generated nilpotent groups.

mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Context;
use config::ExperimentConfig;
use error::CliError;
use growthlab::Budget;
use report::Report;

#[derive(Parser)]
#[command(
    name = "growthlab",
    version,
    about = "Exact enumeration, covering, and profiling experiments in nilpotent groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the JSON experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Element budget override (also settable via GROWTHLAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Cap on both the candidate count and the universe size of the exact
    /// cover solver.
    #[arg(long, global = true)]
    exact_limit: Option<usize>,

    /// Seed for the randomized law-check suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ball sizes, fitted growth degree, and the closed-form degree.
    Growth,
    /// The h-fold product set of the configured set.
    Power,
    /// Minimum (or Ruzsa) translate cover of one set by another.
    Cover,
    /// The covering-number profile h -> cov(A^{rh}, A^h).
    Profile,
    /// Semigroup-generation certificate, inverse bound, and padding.
    Semigroup,
    /// Inner-ball criterion checks and the constructive cover they yield.
    InnerBall,
    /// Normalizer checks, the truncated FM power identity, and cover lifting.
    FmCheck,
    /// Witness search for the one-sided Heisenberg family.
    Witness,
    /// Push a verified cover forward along a homomorphism.
    Push,
    /// Lift a verified cover through a finite kernel.
    Lift,
}

fn resolve_budget(cli_budget: Option<usize>, cfg: &ExperimentConfig) -> Result<Budget, CliError> {
    if let Some(b) = cli_budget {
        return Ok(Budget::new(b));
    }
    if let Some(b) = cfg.budget {
        return Ok(Budget::new(b));
    }
    if let Ok(raw) = std::env::var("GROWTHLAB_BUDGET") {
        let parsed = raw.parse::<usize>().map_err(|_| {
            CliError::Config(format!("GROWTHLAB_BUDGET is not a valid element count: {raw}"))
        })?;
        return Ok(Budget::new(parsed));
    }
    Ok(Budget::default())
}

fn run(cli: &Cli) -> Result<(Report, i32), CliError> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
    let cfg = ExperimentConfig::load(config_path)?;
    let ctx = Context {
        budget: resolve_budget(cli.budget, &cfg)?,
        limits: cfg.exact_limits(cli.exact_limit),
        seed: cli.seed,
    };
    match cli.command {
        Command::Growth => commands::growth(&cfg, &ctx),
        Command::Power => commands::power_cmd(&cfg, &ctx),
        Command::Cover => commands::cover_cmd(&cfg, &ctx),
        Command::Profile => commands::profile(&cfg, &ctx),
        Command::Semigroup => commands::semigroup(&cfg, &ctx),
        Command::InnerBall => commands::inner_ball(&cfg, &ctx),
        Command::FmCheck => commands::fm_check(&cfg, &ctx),
        Command::Witness => commands::witness(&cfg, &ctx),
        Command::Push => commands::push(&cfg, &ctx),
        Command::Lift => commands::lift(&cfg, &ctx),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, status)) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.code() as u8);
            }
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}
