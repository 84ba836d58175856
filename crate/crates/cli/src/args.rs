//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use signed_ortho::numerics::{default_refine_tolerance, parse_rational, Mode, ModeConfig};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "signed-ortho",
    version,
    about = "Polynomials orthogonal with respect to x^(2q+1) (1-x^2)^alpha (1-x) on [-1, 1]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Ttrr,
    Hyper,
    GsOracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Ttrr => "ttrr",
            Route::Hyper => "hyper",
            Route::GsOracle => "gs-oracle",
        }
    }
}

/// Flags shared by every verb.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Arithmetic backend.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Working precision in bits for float mode (at least 64).
    #[arg(long, default_value_t = 256)]
    pub precision: u32,

    /// Root enclosure width, as a rational or decimal [default: 2^-60].
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Settings resolved from [`Common`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: ModeConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Common {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mode = match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        };
        let tol = match &self.tol {
            Some(text) => parse_rational(text)?,
            None => default_refine_tolerance(),
        };
        let mode = ModeConfig::new(mode, self.precision, tol)?;
        Ok(RunConfig {
            mode,
            format: self.format,
            out: self.out.clone(),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// alpha > -1, e.g. 1/2, 0.75 or (float mode only) sqrt(2).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    /// Nonnegative integer q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Comma-separated alpha values; an empty string gives an empty grid.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-1/2,0,1/2,1,3/2,5/2"
    )]
    pub alphas: Vec<String>,

    /// Comma-separated q values; an empty string gives an empty grid.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0,1,2,3"
    )]
    pub qs: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients beta_n, gamma_n for n = 0..=n_max.
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "n-max", visible_alias = "n")]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficients of P_n (or GG_n with --mu), ascending powers.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// Construction route [default: ttrr; hyper for GG].
        #[arg(long, value_enum)]
        route: Option<Route>,
        /// Print GG_n^{alpha,mu} instead of P_n; q is ignored.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Certified zeros of P_n.
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// Also test interlacing against P_m, m = n - 1 or n + 1.
        #[arg(long)]
        interlace_with: Option<usize>,
        /// Emit the zeros of P_2 and P_3 as a plotting dataset instead.
        #[arg(long)]
        figure: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Runs every identity and theorem check over a parameter grid.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Largest degree for generation and orthogonality checks.
        #[arg(long = "n-max", default_value_t = 20)]
        n_max: usize,
        /// Largest degree for zero checks.
        #[arg(long, default_value_t = 16)]
        zeros_n_max: usize,
        /// Largest n for the largest-zero chain and the odd/even zero map.
        #[arg(long, default_value_t = 8)]
        chain_n_max: usize,
        /// Perturb gamma_INDEX by 1/1000 before the orthogonality check.
        #[arg(long, value_name = "INDEX")]
        inject_fault: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Zero statistics for every grid point and degree 1..=n_max.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "n-max", default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
}
