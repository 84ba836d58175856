//! Lossless rendering of scalars in reports.
//!
//! Exact values become `"p/q"` strings (integers drop the denominator).
//! Floats become `{"hex": ..., "decimal": ...}`, where `hex` round-trips
//! bit-exactly through [`MpFloat::from_hex`].

use serde::Serialize;
use signed_ortho::numerics::Scalar;
use signed_ortho::{MpFloat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Num {
    Exact(String),
    Float { hex: String, decimal: String },
}

impl Num {
    /// Single-cell form for CSV: the exact string or the hex float.
    pub fn cell(&self) -> String {
        match self {
            Num::Exact(s) => s.clone(),
            Num::Float { hex, .. } => hex.clone(),
        }
    }

    /// Human-readable form for text output.
    pub fn human(&self) -> String {
        match self {
            Num::Exact(s) => s.clone(),
            Num::Float { decimal, .. } => decimal.clone(),
        }
    }
}

/// Scalars the tool can compute with and print.
pub trait Numeric: Scalar {
    fn num(&self) -> Num;
}

impl Numeric for Rational {
    fn num(&self) -> Num {
        Num::Exact(self.to_string())
    }
}

impl Numeric for MpFloat {
    fn num(&self) -> Num {
        Num::Float {
            hex: self.to_hex(),
            decimal: self.to_decimal_string(),
        }
    }
}

/// Exact rational rendering, used for enclosure endpoints and tolerances
/// in every mode.
pub fn rational(r: &Rational) -> String {
    r.to_string()
}

/// Short decimal for text output and plotting columns.
pub fn approx(r: &Rational) -> String {
    format_f64(r.to_f64())
}

pub fn format_f64(x: f64) -> String {
    format!("{x:.12}")
}
