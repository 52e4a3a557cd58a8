//! `tetreq`: derive the eight tetrahedron equations, enumerate the Bruhat
//! classes that label them, verify supplied tensors, and sweep line
//! arrangements.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input or
//! usage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tetreq_cli::{commands, WhichCheck};

#[derive(Parser)]
#[command(name = "tetreq", version, about = "Tetrahedron-equation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate C(n,k), the admissible orders A(n,k), and the classes B(n,k)
    Bruhat {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Enumeration guard on |C(n,k)|
        #[arg(long, default_value_t = 8)]
        guard: u64,
    },
    /// Derive the eight equations and check them against the golden documents
    Derive {
        /// Scan all 46,080 orientation-assigned factor orderings
        #[arg(long)]
        exhaustive: bool,
        /// Print only the shorthand (normalized) equations
        #[arg(long)]
        shorthand: bool,
        /// Print only the classic single-index equation
        #[arg(long)]
        classic: bool,
    },
    /// Verify user-supplied tensors numerically
    Verify {
        #[arg(long, value_enum)]
        which: WhichCheck,
        /// S tensor file (kind S)
        #[arg(long)]
        s: Option<PathBuf>,
        /// S~ tensor file (kind Stilde); derived from unitarity when absent
        #[arg(long)]
        stilde: Option<PathBuf>,
        /// Q tensor file (kind Q); identity when absent
        #[arg(long)]
        q: Option<PathBuf>,
        /// Indexed R family file (kind R)
        #[arg(long)]
        r: Option<PathBuf>,
        /// Matrix family file (kind M), for the matrix-level obstruction
        #[arg(long)]
        mfam: Option<PathBuf>,
        /// Expected space dimension; validated against the files
        #[arg(long)]
        m: Option<usize>,
        /// Absolute tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Sweep a four-line arrangement and classify its direction sectors
    Sweep {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Run the cross-module invariant battery
    Selfcheck {
        /// Seed for the randomized numeric checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bruhat { n, k, guard } => commands::bruhat(n, k, guard),
        Command::Derive { exhaustive, shorthand, classic } => {
            commands::derive(exhaustive, shorthand, classic)
        }
        Command::Verify { which, s, stilde, q, r, mfam, m, tol } => {
            commands::verify(commands::VerifyArgs { which, s, stilde, q, r, mfam, m, tol })
        }
        Command::Sweep { arrangement } => commands::sweep(&arrangement),
        Command::Selfcheck { seed } => commands::selfcheck(seed),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tetreq: {e}");
            ExitCode::from(2)
        }
    }
}
