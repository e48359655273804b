use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use epade_cli::commands::{self, Common, Outcome};
use epade_cli::{parse_system, CliError};
use epade_core::arith::{parse_rational, Rational};

#[derive(Parser)]
#[command(
    name = "epade",
    version,
    about = "Graded Padé approximants of E-functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "precision-bits")]
    precision_bits: Option<u64>,
    /// Number of functions (must match the document when one is given).
    #[arg(long = "m")]
    m: Option<usize>,
    #[arg(long = "N")]
    n: Option<u32>,
    /// Degree bound M of the approximants.
    #[arg(long = "M")]
    m_deg: Option<usize>,
    /// η as num/den; defaults to the largest admissible value.
    #[arg(long, value_parser = parse_eta)]
    eta: Option<Rational>,
    #[arg(long)]
    kmax: Option<usize>,
    /// Output directory.
    #[arg(long, env = "EPADE_OUT_DIR")]
    out: Option<PathBuf>,
}

impl From<CommonArgs> for Common {
    fn from(a: CommonArgs) -> Self {
        Common {
            seed: a.seed,
            precision_bits: a.precision_bits,
            m: a.m,
            n: a.n,
            m_deg: a.m_deg,
            eta: a.eta,
            kmax: a.kmax,
            out: a.out,
        }
    }
}

fn parse_eta(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Ball values of every series of a document.
    Eval {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value = "1", value_parser = parse_eta, allow_hyphen_values = true)]
        at: Rational,
        /// Continued fraction depth (0 to skip).
        #[arg(long = "cf-depth", default_value_t = 0)]
        cf_depth: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Construct the approximants and verify their vanishing orders.
    Pade {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Derive the approximants along the system.
    Iterate {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Rank certificate of the values at 1.
    Rank {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Rational approximations to f_1(1).
    Approx {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Random subspaces against the frame inequality, as JSON lines.
    ThratSweep {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Dimensions of R (default: all).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Aggregate artifacts into CSV tables and a plot.
    Report {
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn finish(outcome: Outcome, c: &Common) -> Result<(), CliError> {
    let path = commands::write_artifact(&commands::out_dir(c), &outcome.artifact)?;
    println!("{}", outcome.summary);
    println!("wrote {}", path.display());
    match outcome.deficiency {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Eval {
            system,
            at,
            cf_depth,
            common,
        } => {
            let c = common.into();
            finish(
                commands::eval(&parse_system(&system)?, &at, cf_depth, &c)?,
                &c,
            )
        }
        Command::Pade { system, common } => {
            let c = common.into();
            finish(commands::pade(&parse_system(&system)?, &c)?, &c)
        }
        Command::Iterate { system, common } => {
            let c = common.into();
            finish(commands::iterate(&parse_system(&system)?, &c)?, &c)
        }
        Command::Rank { system, common } => {
            let c = common.into();
            finish(commands::rank(&parse_system(&system)?, &c)?, &c)
        }
        Command::Approx { system, common } => {
            let c = common.into();
            finish(commands::approx(&parse_system(&system)?, &c)?, &c)
        }
        Command::ThratSweep {
            samples,
            dims,
            common,
        } => {
            let c: Common = common.into();
            let s = commands::thrat_sweep(samples, dims, &c)?;
            let path = commands::write_sweep(
                &commands::out_dir(&c),
                c.m.unwrap_or(2),
                c.n.unwrap_or(2),
                &s.records,
            )?;
            println!("{}", s.summary);
            println!("wrote {}", path.display());
            if s.violations > 0 {
                return Err(CliError::Internal(format!(
                    "{} samples violate the inequality",
                    s.violations
                )));
            }
            Ok(())
        }
        Command::Report { inputs, common } => {
            let c: Common = common.into();
            for p in epade_cli::report::report(&inputs, &commands::out_dir(&c))? {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
