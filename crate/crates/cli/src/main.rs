mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fujiki_core::Error;

#[derive(Parser)]
#[command(
    name = "fujiki",
    version,
    about = "Exact generalized Fujiki constants, RR polynomials and Betti bounds"
)]
struct Cli {
    #[command(flatten)]
    out: OutputOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Add decimal approximations (display only).
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    K3n,
    Kumn,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Ch,
    Td,
    TdHalf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumeration {
    Fourfolds,
    Betti,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphCheck {
    Basic,
    Wheeling,
    Sawon,
}

#[derive(Subcommand)]
enum Command {
    /// Riemann-Roch polynomial of K3^[n] or Kum_n.
    Rr {
        #[arg(long = "type", value_enum)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// Replace RR(q) by RR(m q) / m.
        #[arg(long)]
        scale: Option<u32>,
        #[arg(long)]
        eval: Option<String>,
    },
    /// Betti bound from RR coefficients or from C(c2^2)/C(c4).
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "mu",
            required_unless_present = "mu"
        )]
        coeffs: Option<Vec<String>>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Degree-4 Fujiki constants from RR coefficients.
    Fujiki {
        #[arg(long)]
        n: u32,
        /// `A0,A1,A2` or a full coefficient list.
        #[arg(long = "from-rr", value_delimiter = ',')]
        from_rr: Vec<String>,
    },
    /// Orbifold derivations.
    Orbifold {
        #[command(subcommand)]
        action: OrbifoldAction,
    },
    /// Known deformation types.
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        verify: bool,
        #[arg(long = "solve-og10")]
        solve_og10: bool,
        #[arg(long)]
        conjectures: bool,
    },
    Enumerate {
        #[arg(long, value_enum)]
        what: Enumeration,
    },
    /// Characteristic classes as polynomials in Chern classes.
    Genus {
        #[arg(long, value_enum)]
        class: ClassKind,
        #[arg(long)]
        k: u32,
    },
    /// Graph identities.
    Graphs {
        #[arg(long, value_enum)]
        verify: GraphCheck,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Re-derive every published value.
    Reproduce {
        #[arg(long)]
        only: Option<String>,
        /// Print every computed value, not only the pass/fail lines.
        #[arg(long)]
        details: bool,
        /// Directory with `orbifolds/*.json` and `catalog/*.json` replacing the shipped fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OrbifoldAction {
    Derive {
        #[arg(long)]
        profile: PathBuf,
    },
    K4Appendix,
}

/// Failure of a command, carrying its exit code.
pub enum Failure {
    Verification(String),
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Core(Error::Unsupported(_) | Error::DegreeOverflow { .. }) => 3,
            Failure::Core(Error::IrrationalC2(_) | Error::InequalityViolated { .. }) => 1,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Verification(m) => format!("verification failed: {m}"),
            Failure::Input(m) => format!("invalid input: {m}"),
            Failure::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.out) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, f)) => {
            if let Some(out) = out {
                print!("{out}");
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
