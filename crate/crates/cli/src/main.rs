mod commands;
mod parse;
mod repro;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use omega_core::asymptotics::DEFAULT_STABILITY_WINDOW;
use omega_core::omega::{DEFAULT_ORACLE_BUDGET, DEFAULT_SEARCH_BUDGET};
use omega_core::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Parity {
    Odd,
    Even,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub search_budget: u64,
    pub oracle_budget: u64,
    pub format: Format,
    pub seed: u64,
}

#[derive(Parser)]
#[command(name = "omega", version, about = "omega-primality and bullet sets in atomic monoids")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Most candidates a bullet search may visit.
    #[arg(long, global = true, env = "OMEGA_SEARCH_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Most vectors the independent oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    oracle_budget: u64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// omega of one element, or of every member in a range.
    Omega {
        #[arg(long)]
        gens: String,
        #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present_all = ["from", "to"])]
        n: Option<i64>,
        #[arg(long, requires = "to")]
        from: Option<i64>,
        #[arg(long, requires = "from")]
        to: Option<i64>,
    },
    /// Every bullet of an element, as factorization vectors.
    Bullets {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        n: i64,
    },
    /// Fit the eventual quasilinear form of omega.
    Quasi {
        #[arg(long)]
        gens: String,
        /// Last element of the computed series.
        #[arg(long)]
        horizon: i64,
        #[arg(long, default_value_t = DEFAULT_STABILITY_WINDOW)]
        window: u64,
    },
    /// Census of generator omega orderings over all three-generator monoids.
    ScanOrderings {
        #[arg(long)]
        bound: u64,
    },
    /// Generator omegas of an interval monoid: closed form against the search.
    Interval {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        parity: Parity,
    },
    /// omega of a zero-sum sequence over a finite Abelian group.
    Block {
        /// Invariant factors, e.g. `3` or `2,4`.
        #[arg(long)]
        group: String,
        /// e.g. `g:3,-g:3` or `1/0:2,0/1:4`.
        #[arg(long)]
        element: String,
    },
    /// Factorizations and omega in an arithmetical congruence monoid.
    Acm {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        x: u64,
    },
    /// Leamer monoid point cloud, or omega of one of its points.
    Leamer {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        s: u64,
        /// `n_max,k_max`
        #[arg(long = "box")]
        bounds: String,
        /// `n,k`
        #[arg(long)]
        omega: Option<String>,
    },
    /// Recompute the golden values and report any difference.
    Repro,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0} golden check(s) failed")]
    ReproFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(e) => match e {
                Error::BudgetExceeded { .. } => 3,
                Error::NotAMember(_) | Error::NotZeroSum => 4,
                Error::SeriesTooShort { .. } => 5,
                Error::WindowUnstable { .. } => 6,
                Error::ElementOutOfRange(_) => 2,
                _ => 1,
            },
            CliError::ReproFailed(_) => 1,
        }
    }
}

fn run(cli: Cli) -> Result<String, (Option<String>, CliError)> {
    let cfg = RunConfig {
        search_budget: cli.budget,
        oracle_budget: cli.oracle_budget,
        format: cli.format,
        seed: cli.seed,
    };
    let report = match cli.command {
        Command::Omega { gens, n, from, to } => commands::omega(&cfg, &gens, n, from.zip(to)),
        Command::Bullets { gens, n } => commands::bullets(&cfg, &gens, n),
        Command::Quasi { gens, horizon, window } => commands::quasi(&cfg, &gens, horizon, window),
        Command::ScanOrderings { bound } => commands::scan_orderings(bound),
        Command::Interval { n, parity } => commands::interval(&cfg, n, parity),
        Command::Block { group, element } => commands::block(&cfg, &group, &element),
        Command::Acm { a, b, x } => commands::acm(&cfg, a, b, x),
        Command::Leamer { gens, s, bounds, omega } => commands::leamer(&cfg, &gens, s, &bounds, omega.as_deref()),
        Command::Repro => {
            let report = repro::run(&cfg);
            let failed = report.rows.iter().filter(|r| r.last().is_some_and(|s| s == "FAIL")).count();
            if failed > 0 {
                return Err((Some(report.render(cfg.format)), CliError::ReproFailed(failed)));
            }
            Ok(report)
        }
    };
    report.map(|r| r.render(cfg.format)).map_err(|e| (None, e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err((partial, e)) => {
            if let Some(out) = partial {
                let _ = stdout.write_all(out.as_bytes());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
