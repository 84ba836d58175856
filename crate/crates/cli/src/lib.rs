//! Command-line front end for `signed_ortho`.
//!
//! The binary is a thin wrapper around [`run`], so every verb can be driven
//! from tests without spawning a process. Report layouts are described in
//! `docs/report-format.md`.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod value;

use std::path::PathBuf;

use signed_ortho::numerics::Mode;
use signed_ortho::{MpFloat, Rational};

pub use args::{Cli, Command, RunConfig};
pub use commands::verify::VerifySettings;
pub use error::CliError;
pub use output::{Format, Report};

/// A rendered report and whether all its checks passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub rendered: String,
    pub passed: bool,
    pub out: Option<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn finish<R: Report>(report: R, cfg: &RunConfig) -> Result<Outcome, CliError> {
    Ok(Outcome {
        rendered: output::render(&report, cfg.format)?,
        passed: report.passed(),
        out: cfg.out.clone(),
    })
}

/// Runs `$body` with `$T` bound to the backend selected by `$cfg`, and
/// `$ctx` to its context.
macro_rules! with_backend {
    ($cfg:expr, |$T:ident, $ctx:ident| $body:expr) => {
        match $cfg.mode.mode {
            Mode::Exact => {
                type $T = Rational;
                let $ctx = &();
                $body
            }
            Mode::Float => {
                type $T = MpFloat;
                let $ctx = &$cfg.mode.precision()?;
                $body
            }
        }
    };
}

/// Executes one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Coeffs {
            family,
            n_max,
            common,
        } => {
            let cfg = common.resolve()?;
            with_backend!(cfg, |T, ctx| {
                let report = commands::coeffs::cmd_coeffs::<T>(family, *n_max, &cfg.mode, ctx)?;
                finish(report, &cfg)
            })
        }
        Command::Poly {
            family,
            n,
            route,
            mu,
            common,
        } => {
            let cfg = common.resolve()?;
            with_backend!(cfg, |T, ctx| {
                let report = commands::poly::cmd_poly::<T>(
                    family,
                    *n,
                    *route,
                    mu.as_deref(),
                    &cfg.mode,
                    ctx,
                )?;
                finish(report, &cfg)
            })
        }
        Command::Zeros {
            family,
            n,
            interlace_with,
            figure,
            common,
        } => {
            let cfg = common.resolve()?;
            with_backend!(cfg, |T, ctx| {
                if *figure {
                    let report = commands::zeros::cmd_figure::<T>(family, &cfg.mode, ctx)?;
                    finish(report, &cfg)
                } else {
                    let report = commands::zeros::cmd_zeros::<T>(
                        family,
                        *n,
                        *interlace_with,
                        &cfg.mode,
                        ctx,
                    )?;
                    finish(report, &cfg)
                }
            })
        }
        Command::Verify {
            grid,
            n_max,
            zeros_n_max,
            chain_n_max,
            inject_fault,
            common,
        } => {
            let cfg = common.resolve()?;
            let settings = VerifySettings {
                n_max: *n_max,
                zeros_n_max: *zeros_n_max,
                chain_n_max: *chain_n_max,
                inject_fault: *inject_fault,
            };
            with_backend!(cfg, |T, ctx| {
                let report = commands::verify::cmd_verify::<T>(grid, settings, &cfg.mode, ctx)?;
                finish(report, &cfg)
            })
        }
        Command::Sweep {
            grid,
            n_max,
            common,
        } => {
            let cfg = common.resolve()?;
            with_backend!(cfg, |T, ctx| {
                let report = commands::sweep::cmd_sweep::<T>(grid, *n_max, &cfg.mode, ctx)?;
                finish(report, &cfg)
            })
        }
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run_args<I, S>(argv: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}
