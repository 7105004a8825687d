//! `hermwalk` command-line front end.

mod analyze;
mod construct;
mod transfer;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit status for bad arguments or unreadable input.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for numerical failures.
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<hermwalk::Error> for Failure {
    fn from(e: hermwalk::Error) -> Self {
        use hermwalk::Error::*;
        let code = match e {
            Parse { .. }
            | Io(_)
            | InvalidArgument(_)
            | IndexOutOfRange { .. }
            | DimensionMismatch { .. }
            | ConjugateMismatch { .. }
            | DuplicateEdge { .. }
            | NotHermitianCirculant
            | DegenerateOrder(_)
            | DuplicateAlpha
            | OrderTooLarge(_)
            | NotHermitian { .. }
            | NonFinite { .. }
            | InvalidMonomial(_) => EXIT_USAGE,
            _ => EXIT_NUMERICAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Reads a graph file, naming the path in any error.
pub fn load_graph(path: &std::path::Path) -> Result<hermwalk::HermitianGraph, Failure> {
    hermwalk::read_graph_file(path).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "hermwalk",
    version,
    about = "Quantum walks on Hermitian graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph and write it in the hgraph text format.
    ///
    /// Parameters by family: cp <p>; k4; k2x; k2y; circulant <w0> <w1> ... with
    /// each weight written `re` or `re:im`; hadamard <n> [--alphas a0,a1,...];
    /// cartesian <left> <right> where each operand is a graph file or one of
    /// k2x, k2y, k4, cp<p>.
    Construct {
        family: Family,
        params: Vec<String>,
        /// Comma-separated exponents for the hadamard family.
        #[arg(long, allow_hyphen_values = true)]
        alphas: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Print a spectral and structural report for a graph file.
    Analyze { path: PathBuf },
    /// Evaluate transfer between two vertices.
    Transfer {
        path: PathBuf,
        a: usize,
        b: usize,
        mode: Mode,
        /// Time for pst-at.
        #[arg(long = "t")]
        t: Option<f64>,
        /// Target fidelity for pgst.
        #[arg(long, default_value_t = 0.999)]
        target: f64,
        /// Time horizon for scan and pgst.
        #[arg(long, default_value_t = hermwalk::transfer::DEFAULT_HORIZON)]
        tmax: f64,
        /// Number of samples for scan.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Fidelity slack for pst-at.
        #[arg(long, default_value_t = hermwalk::transfer::DEFAULT_PST_TOL)]
        tol: f64,
        /// CSV destination for scan (stdout when omitted).
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Cp,
    K4,
    K2x,
    K2y,
    Circulant,
    Hadamard,
    Cartesian,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Scan,
    Pgst,
    PstAt,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct {
            family,
            params,
            alphas,
            out,
        } => construct::run(family, &params, alphas.as_deref(), &out),
        Command::Analyze { path } => analyze::run(&path),
        Command::Transfer {
            path,
            a,
            b,
            mode,
            t,
            target,
            tmax,
            samples,
            tol,
            out,
        } => transfer::run(&transfer::Args {
            path,
            a,
            b,
            mode,
            t,
            target,
            tmax,
            samples,
            tol,
            out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
