pub mod coeffs;
pub mod poly;
pub mod sweep;
pub mod verify;
pub mod zeros;

use serde::Serialize;
use signed_ortho::families::FamilyParams;
use signed_ortho::numerics::{parse_scalar, Mode, ModeConfig};

use crate::args::GridArgs;
use crate::error::CliError;
use crate::value::{rational, Numeric};

/// Fields every report starts with.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub command: &'static str,
    pub mode: &'static str,
    pub precision_bits: Option<u32>,
    pub tolerance: String,
}

impl Header {
    pub fn new(command: &'static str, cfg: &ModeConfig) -> Self {
        Header {
            command,
            mode: match cfg.mode {
                Mode::Exact => "exact",
                Mode::Float => "float",
            },
            precision_bits: (cfg.mode == Mode::Float).then_some(cfg.precision_bits),
            tolerance: rational(&cfg.refine_tolerance),
        }
    }

    pub fn text(&self) -> String {
        let precision = self
            .precision_bits
            .map_or(String::new(), |b| format!(", {b} bits"));
        format!(
            "# {} ({}{precision}), tolerance {}\n",
            self.command, self.mode, self.tolerance
        )
    }
}

pub fn parse_q(q: i64) -> Result<u32, CliError> {
    u32::try_from(q)
        .map_err(|_| CliError::Usage(format!("q must be a nonnegative integer, got {q}")))
}

/// Parses `alpha` in the backend of `T` and checks `alpha > -1`.
pub fn parse_family<T: Numeric>(
    alpha: &str,
    q: i64,
    ctx: &T::Context,
) -> Result<FamilyParams<T>, CliError> {
    let q = parse_q(q)?;
    let a = parse_scalar::<T>(alpha.trim(), ctx)?;
    Ok(FamilyParams::new(a, q)?)
}

/// Canonical label for an alpha: the reduced fraction in exact mode, the
/// input text otherwise.
pub fn alpha_label<T: Numeric>(text: &str, value: &T) -> String {
    if T::EXACT {
        value.to_string()
    } else {
        text.trim().to_string()
    }
}

/// Grid points in row-major order: alphas outer, qs inner.
pub fn grid_points<T: Numeric>(
    grid: &GridArgs,
    ctx: &T::Context,
) -> Result<Vec<(String, FamilyParams<T>)>, CliError> {
    let alphas: Vec<&str> = grid
        .alphas
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .collect();
    let qs = grid
        .qs
        .iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("q must be an integer, got {s:?}")))
                .and_then(parse_q)
        })
        .collect::<Result<Vec<u32>, _>>()?;
    let mut out = Vec::with_capacity(alphas.len() * qs.len());
    for a in &alphas {
        for &q in &qs {
            let fp = parse_family::<T>(a, q as i64, ctx)?;
            out.push((alpha_label(a, fp.alpha()), fp));
        }
    }
    Ok(out)
}
