//! `framedvoa`: batch verification runs over the framed-voa library.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 a numeric check was
//! inconclusive at the requested tolerance, 3 usage error.

mod commands;
mod config;
mod output;
mod pairs;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use framed_voa::qseries::CheckStatus;

use config::{default_taus, parse_tau, CliError, Format, RunConfig};

#[derive(Parser)]
#[command(name = "framedvoa", version, about = "Verification harness for framed VOA structure data")]
struct Cli {
    /// Series truncation order K
    #[arg(long, global = true, default_value_t = 50)]
    order: i64,

    /// Numeric tolerance for S-transform residuals
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// τ sample in the upper half-plane, e.g. "i", "0.8i", "0.5+2i"; repeatable
    #[arg(long = "tau", global = true, value_name = "TAU")]
    taus: Vec<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Seed for the randomized spot checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Ising,
    Hamming,
    Vb,
}

#[derive(Subcommand)]
enum Command {
    /// Print the built-in structure codes, or a selected pair, with stats
    Codes {
        /// Pair to inspect: moonshine | baby | file:<D>,<S>
        #[arg(long)]
        pair: Option<String>,
    },
    /// Condition (1) and Hypothesis I(3) on a structure-code pair
    Hypothesis {
        /// Pair to check: moonshine | baby | file:<D>,<S> (default: both built-ins)
        #[arg(long)]
        pair: Option<String>,
    },
    /// Print a fusion ring with its checks and simple-current witnesses
    Fusion {
        #[arg(long, value_enum, default_value_t = RingArg::Ising)]
        ring: RingArg,
    },
    /// Characters: Ising triple, j, T2A, the solved triple, S-transforms
    Chars,
    /// Free-fermion Fock oracle: graded dimensions and Virasoro checks
    Fock,
    /// Run the full verification suite
    VerifyAll,
}

fn run(cli: Cli) -> Result<CheckStatus, CliError> {
    let taus = if cli.taus.is_empty() {
        default_taus()
    } else {
        cli.taus.iter().map(|t| parse_tau(t)).collect::<Result<_, _>>()?
    };
    let cfg = RunConfig {
        order: cli.order,
        tol: cli.tol,
        taus,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        seed: cli.seed,
    };
    cfg.validate()?;
    match cli.command {
        Command::Codes { pair } => commands::run_codes(&cfg, pair.as_deref()),
        Command::Hypothesis { pair } => commands::run_hypothesis(&cfg, pair.as_deref()),
        Command::Fusion { ring } => commands::run_fusion(
            &cfg,
            match ring {
                RingArg::Ising => commands::RingKind::Ising,
                RingArg::Hamming => commands::RingKind::Hamming,
                RingArg::Vb => commands::RingKind::Vb,
            },
        ),
        Command::Chars => commands::run_chars(&cfg),
        Command::Fock => commands::run_fock(&cfg),
        Command::VerifyAll => commands::run_verify_all(&cfg),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(3);
        }
    };
    match run(cli) {
        Ok(CheckStatus::Pass) => std::process::exit(0),
        Ok(CheckStatus::Fail) => std::process::exit(1),
        Ok(CheckStatus::Inconclusive) => std::process::exit(2),
        Err(CliError::Check(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
