//! Polynomials `P_n^{alpha,q}` orthogonal on `[-1, 1]` with respect to the
//! signed weight `x^(2q+1) (1-x^2)^alpha (1-x)`.
//!
//! Everything is generic over [`numerics::Scalar`]: exact rationals,
//! [`MpFloat`] at a chosen precision, or `f64`. The aliases below fix the
//! two backends the command-line tool uses.
//!
//! ```
//! use signed_ortho::{families, ExactFamily, Rational};
//!
//! let fp = ExactFamily::new(Rational::from_integer(0.into()), 0).unwrap();
//! let p2 = families::p_poly_ttrr(&fp, 2);
//! assert_eq!(p2.to_string(), "x^2 - 3/5");
//! ```

pub mod error;
pub mod families;
pub mod hypergeom;
pub mod numerics;
pub mod orthogonality;
pub mod polynomials;
pub mod sturm;
pub mod zeros;

pub use error::{Error, Result};
pub use numerics::{Mode, ModeConfig, MpFloat, Precision, Rational, Scalar};
pub use polynomials::Poly;

pub type ExactPoly = Poly<Rational>;
pub type FloatPoly = Poly<MpFloat>;
pub type ExactFamily = families::FamilyParams<Rational>;
pub type FloatFamily = families::FamilyParams<MpFloat>;
pub type ExactRootSet = zeros::RootSet<Rational>;
pub type FloatRootSet = zeros::RootSet<MpFloat>;
