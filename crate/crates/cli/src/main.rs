//! `qhs`: constructions and verifications for quantum matrix algebras and
//! their homogeneous-space quotients.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qhs", version, about = "Quantum matrix algebras, reflection equation quotients and quantum spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the inter-reduced defining relations of an algebra.
    Relations(Common),
    /// Normal form of an expression in the chosen algebra.
    Nf {
        #[command(flatten)]
        common: Common,
        /// Expression such as "x[1,2]*x[1,1] - q^-1".
        expr: String,
    },
    /// Graded dimensions of an algebra or of a quotient.
    Hilbert(Common),
    /// Weight multiplicities of a quotient, per degree.
    Weights(Common),
    /// Run a verification.
    Check {
        #[command(flatten)]
        common: Common,
        /// What to verify.
        #[arg(value_enum)]
        what: CheckKind,
        /// Element to test (for `central`); defaults to the quantum trace powers.
        #[arg(long)]
        element: Option<String>,
    },
    /// Decide whether a constant matrix solves the reflection equation.
    ReCheck(Common),
    /// Quantum sphere presentation for the parameters (t, d).
    Podles(Common),
    /// Values of the coinvariants tau_d at a Jordan normal form.
    Tau(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraKind {
    Frt,
    Sl,
    Rea,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuotientKind {
    Nilcone,
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Hecke,
    Braid,
    Hopf,
    Central,
    Coinvariant,
    Confluence,
    Flat,
    PhiTau2,
    Podles,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Matrix size.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = AlgebraKind::Rea)]
    algebra: AlgebraKind,
    #[arg(long, value_enum)]
    quotient: Option<QuotientKind>,
    /// Jordan data, e.g. '{"n":2,"r":0,"eigenvalues":["2","3"]}'.
    #[arg(long)]
    xi: Option<String>,
    /// Largest degree (or degree cap) to compute.
    #[arg(long, default_value_t = 4)]
    max_deg: usize,
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (tables only).
    #[arg(long)]
    csv: bool,
    /// Use the commutative q = 1 computation instead of the quantum one.
    #[arg(long)]
    q_at_one: bool,
    /// Candidate matrix as JSON rows; entries are numbers or scalar strings.
    #[arg(long)]
    matrix: Option<String>,
    /// Trace parameter t.
    #[arg(long, default_value = "0")]
    t: String,
    /// Determinant parameter d (for `tau`, the coinvariant index).
    #[arg(long)]
    d: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
