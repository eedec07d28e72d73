#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod grid;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bgkit",
    version,
    about = "Verification campaigns for Barut-Girardello coherent states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Same,
    Different,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Relative tolerance for pass/fail; the default depends on the command.
    #[arg(long, env = "BGKIT_TOL")]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolution-of-unity moments against n!(2K)_n or n!(K)_{|n|}.
    Moments {
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: u32,
        /// Use the U(N,1) measure in N dimensions.
        #[arg(long = "N")]
        n: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// BG density against the symplectic density of the BG norm, or the
    /// Perelomov pair. Exit code 0 for SAME, 3 for DIFFERENT unless
    /// --expect is given.
    Compare {
        #[arg(long = "K")]
        k: f64,
        /// Radial grid, start:stop:step or a comma-separated list.
        #[arg(long = "r")]
        r: Option<String>,
        /// Disc grid for --perelomov.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        perelomov: bool,
        /// Report the fitted near-origin coefficients.
        #[arg(long)]
        fit: bool,
        #[arg(long = "no-normalize")]
        no_normalize: bool,
        /// Exit 0 when the verdict matches, 1 otherwise.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[command(flatten)]
        output: Output,
    },
    /// Structure constants, subsidiary condition, commutators and eigen
    /// residuals on seeded random vectors.
    Algebra {
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
        #[arg(long = "K", default_value_t = 1.5)]
        k: f64,
        #[arg(long, default_value_t = 10)]
        trunc: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalue residuals of BG states (su(1,1), u(N,1) or Fock).
    Eigen {
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 40)]
        trunc: u32,
        /// Eigenvalue(s) as complex numbers, e.g. 2+1i; N values with --N.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Use the Schwinger-boson matrices (integer K).
        #[arg(long)]
        fock: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated completeness kernel or Fock overlap against ₀F₁.
    Kernel {
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value_t = 40)]
        trunc: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zp: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        zbar: Vec<String>,
        #[arg(long)]
        fock: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Closed forms at K = 1/4 and K = 3/4 and the resulting disagreement.
    Appendix {
        #[arg(long, default_value_t = 500)]
        points: usize,
        #[arg(long = "r-max", default_value_t = 5.0)]
        r_max: f64,
        #[command(flatten)]
        output: Output,
    },
    /// ∫ 2x^{α+β} K_{2(α−β)}(2√x) x^{s−1} dx against Γ(2α+s)Γ(2β+s).
    Iwanami {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.25, 0.6, 1.1])]
        alpha: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.1, 0.35, 0.9])]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.5, 1.0, 2.0])]
        s: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
