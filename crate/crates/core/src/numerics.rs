//! Scalar backends and the elementary combinatorial functions shared by the
//! rest of the crate.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Three backends
//! are provided:
//!
//! * [`Rational`] (`BigRational`): exact arithmetic, the certification mode.
//! * [`MpFloat`]: binary floating point with a per-value precision of at
//!   least 64 bits, backed by `dashu-float`.
//! * `f64`: hardware doubles, handy for quick experiments.
//!
//! Mixing backends is rejected at compile time: a `Poly<Rational>` cannot be
//! multiplied by a `Poly<MpFloat>`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig, Repr};
use dashu_int::{IBig, Sign as DSign, UBig};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{NumOps, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Smallest precision accepted for [`MpFloat`].
pub const MIN_FLOAT_PRECISION: u32 = 64;

/// Number type the generic algorithms run on.
///
/// A `Context` carries whatever a backend needs to materialize constants
/// (the working precision for floats, nothing for exact types). Every value
/// knows its own context, so constants are usually lifted from an operand.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + NumOps
    + for<'a> NumOps<&'a Self>
    + Neg<Output = Self>
{
    type Context: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// Whether arithmetic is exact (identities become equality tests).
    const EXACT: bool;

    fn context(&self) -> Self::Context;

    fn from_rational(value: &BigRational, ctx: &Self::Context) -> Self;

    fn from_i64(value: i64, ctx: &Self::Context) -> Self {
        Self::from_rational(&BigRational::from_integer(value.into()), ctx)
    }

    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value. Binary floats are dyadic, so this only fails
    /// for non-finite `f64`.
    fn to_rational(&self) -> Option<BigRational>;

    /// The value as an integer, when it is exactly one.
    fn as_integer(&self) -> Option<BigInt>;

    /// Square root rounded to the working precision; `None` for exact types.
    fn sqrt(&self) -> Option<Self>;

    /// Working precision in bits, `None` for exact types.
    fn precision_bits(&self) -> Option<u32>;

    fn lift_i64(&self, value: i64) -> Self {
        Self::from_i64(value, &self.context())
    }

    fn lift_rational(&self, value: &BigRational) -> Self {
        Self::from_rational(value, &self.context())
    }

    fn zero_like(&self) -> Self {
        self.lift_i64(0)
    }

    fn one_like(&self) -> Self {
        self.lift_i64(1)
    }

    /// `2^exp` in the context of `self`.
    fn pow2_like(&self, exp: i64) -> Self {
        self.lift_rational(&pow2_rational(exp))
    }

    fn is_negative(&self) -> bool {
        *self < self.zero_like()
    }

    /// Sign as -1, 0 or 1.
    fn signum_i8(&self) -> i8 {
        match self.partial_cmp(&self.zero_like()) {
            Some(Ordering::Less) => -1,
            Some(Ordering::Greater) => 1,
            _ => 0,
        }
    }

    /// True when `self` is zero up to roundoff relative to `scale`.
    ///
    /// Exact types only accept true zero. Floats accept
    /// `|self| <= 2^-(bits_kept) * |scale|`, where `bits_kept` is chosen by
    /// the caller from the working precision.
    fn negligible_against(&self, scale: &Self, bits_kept: u32) -> bool {
        if Self::EXACT || self.is_zero() {
            return self.is_zero();
        }
        let bound = scale.abs() * self.pow2_like(-(bits_kept as i64));
        self.abs() <= bound
    }
}

pub fn pow2_rational(exp: i64) -> BigRational {
    let p = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl Scalar for BigRational {
    type Context = ();
    const EXACT: bool = true;

    fn context(&self) {}

    fn from_rational(value: &BigRational, _ctx: &()) -> Self {
        value.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }

    fn sqrt(&self) -> Option<Self> {
        None
    }

    fn precision_bits(&self) -> Option<u32> {
        None
    }
}

impl Scalar for f64 {
    type Context = ();
    const EXACT: bool = false;

    fn context(&self) {}

    fn from_rational(value: &BigRational, _ctx: &()) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn from_i64(value: i64, _ctx: &()) -> Self {
        value as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn as_integer(&self) -> Option<BigInt> {
        (self.is_finite() && self.fract() == 0.0)
            .then(|| BigRational::from_float(*self).map(|r| r.to_integer()))
            .flatten()
    }

    fn sqrt(&self) -> Option<Self> {
        Some(f64::sqrt(*self))
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(f64::MANTISSA_DIGITS)
    }
}

type Inner = FBig<HalfEven, 2>;

/// Working precision of an [`MpFloat`], in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(pub u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < MIN_FLOAT_PRECISION {
            return Err(Error::InvalidParameter(format!(
                "float precision must be at least {MIN_FLOAT_PRECISION} bits, got {bits}"
            )));
        }
        Ok(Precision(bits))
    }
}

/// Arbitrary precision binary float, round-half-even.
///
/// Binary operations return the larger of the two operand precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct MpFloat(Inner);

impl MpFloat {
    fn rounding_context(&self) -> Context<HalfEven> {
        Context::new(self.0.precision())
    }

    /// Significand and binary exponent, `value = significand * 2^exponent`.
    pub fn to_parts(&self) -> (BigInt, isize) {
        let repr = self.0.repr();
        (ibig_to_bigint(repr.significand()), repr.exponent())
    }

    /// Hexadecimal float literal, e.g. `-0x3p-2` for -0.75. Lossless.
    pub fn to_hex(&self) -> String {
        let (sig, exp) = self.to_parts();
        if sig.is_zero() {
            return "0x0p0".to_string();
        }
        let sign = if sig.sign() == Sign::Minus { "-" } else { "" };
        format!("{sign}0x{:x}p{exp}", sig.magnitude())
    }

    /// Parses the output of [`MpFloat::to_hex`].
    ///
    /// Values that fit in `precision + 1` bits are kept exactly; sums may
    /// carry one guard bit. Wider values are rounded.
    pub fn from_hex(text: &str, precision: Precision) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed hex float {text:?}"));
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let body = body.strip_prefix("0x").ok_or_else(bad)?;
        let (mant, exp) = body.split_once('p').ok_or_else(bad)?;
        let mant = BigInt::parse_bytes(mant.as_bytes(), 16).ok_or_else(bad)?;
        let exp: i64 = exp.parse().map_err(|_| bad())?;
        let mant = if neg { -mant } else { mant };
        if mant.bits() <= precision.0 as u64 + 1 {
            let repr = Repr::new(bigint_to_ibig(&mant), exp as isize);
            return Ok(MpFloat(FBig::from_repr(
                repr,
                Context::new(precision.0 as usize),
            )));
        }
        let value = BigRational::from_integer(mant) * pow2_rational(exp);
        Ok(MpFloat::from_rational(&value, &precision))
    }

    /// Decimal rendering with enough digits to identify the value.
    pub fn to_decimal_string(&self) -> String {
        if *self.0.repr().significand() == IBig::ZERO {
            return "0".to_string();
        }
        let digits = (self.0.precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        let dec = self.0.to_decimal().value();
        dec.with_precision(digits).value().to_string()
    }
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MpFloat({}, {} bits)",
            self.to_decimal_string(),
            self.0.precision()
        )
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

macro_rules! forward_mpfloat_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                MpFloat($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &'a MpFloat) -> MpFloat {
                MpFloat($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b MpFloat> for &'a MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: &'b MpFloat) -> MpFloat {
                MpFloat($tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_mpfloat_binop!(Add, add);
forward_mpfloat_binop!(Sub, sub);
forward_mpfloat_binop!(Mul, mul);
forward_mpfloat_binop!(Div, div);
forward_mpfloat_binop!(Rem, rem);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(-self.0)
    }
}

impl Scalar for MpFloat {
    type Context = Precision;
    const EXACT: bool = false;

    fn context(&self) -> Precision {
        Precision(self.0.precision() as u32)
    }

    fn from_rational(value: &BigRational, ctx: &Precision) -> Self {
        let num = Inner::from(bigint_to_ibig(value.numer()));
        let den = Inner::from(bigint_to_ibig(value.denom()));
        let ctx = Context::<HalfEven>::new(ctx.0 as usize);
        let quotient = ctx
            .div(num.repr(), den.repr())
            .expect("denominator of a BigRational is nonzero")
            .value();
        MpFloat(quotient)
    }

    fn is_zero(&self) -> bool {
        *self.0.repr().significand() == IBig::ZERO
    }

    fn abs(&self) -> Self {
        if self.0.repr().sign() == DSign::Negative {
            MpFloat(-self.0.clone())
        } else {
            self.clone()
        }
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn to_rational(&self) -> Option<BigRational> {
        let (sig, exp) = self.to_parts();
        Some(BigRational::from_integer(sig) * pow2_rational(exp as i64))
    }

    fn as_integer(&self) -> Option<BigInt> {
        self.0
            .repr()
            .is_int()
            .then(|| ibig_to_bigint(&self.0.to_int().value()))
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let ctx = self.rounding_context();
        ctx.sqrt(self.0.repr()).ok().map(|r| MpFloat(r.value()))
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(self.0.precision() as u32)
    }
}

fn ibig_to_bigint(value: &IBig) -> BigInt {
    let (sign, mag): (DSign, UBig) = value.clone().into_parts();
    let mag = BigUint::from_bytes_le(&mag.to_le_bytes());
    match sign {
        DSign::Negative => -BigInt::from(mag),
        DSign::Positive => BigInt::from(mag),
    }
}

fn bigint_to_ibig(value: &BigInt) -> IBig {
    let mag = UBig::from_le_bytes(&value.magnitude().to_bytes_le());
    let sign = if value.sign() == Sign::Minus {
        DSign::Negative
    } else {
        DSign::Positive
    };
    IBig::from_parts(sign, mag)
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Scalar>(a: &T, n: u64) -> T {
    let mut acc = a.one_like();
    for k in 0..n {
        acc = acc * (a.clone() + a.lift_i64(k as i64));
    }
    acc
}

/// Binomial coefficient `C(m, k)` as a scalar in context `ctx`.
pub fn binomial<T: Scalar>(m: u64, k: u64, ctx: &T::Context) -> Result<T> {
    if k > m {
        return Err(Error::BinomialRange { m, k });
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    Ok(T::from_rational(&BigRational::from_integer(acc), ctx))
}

/// Parses an exact rational from `"p/q"`, an integer, or a finite decimal
/// such as `"-0.25"` or `"1.5e-3"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= BigRational::from_integer(factor);
    } else {
        value /= BigRational::from_integer(factor);
    }
    Ok(if neg { -value } else { value })
}

/// Parses a scalar literal into backend `T`.
///
/// All backends accept the rational forms of [`parse_rational`]. Inexact
/// backends additionally accept `sqrt(<rational>)`, rounded to the working
/// precision; exact backends reject it as non-rational.
pub fn parse_scalar<T: Scalar>(text: &str, ctx: &T::Context) -> Result<T> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed
        .strip_prefix("sqrt(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        if T::EXACT {
            return Err(Error::InvalidParameter(format!(
                "exact mode requires a rational value, got {trimmed:?}"
            )));
        }
        let radicand = parse_rational(inner)?;
        if Signed::is_negative(&radicand) {
            return Err(Error::InvalidParameter(format!(
                "negative radicand in {trimmed:?}"
            )));
        }
        let x = T::from_rational(&radicand, ctx);
        return x
            .sqrt()
            .ok_or_else(|| Error::InvalidParameter(format!("cannot evaluate {trimmed:?}")));
    }
    Ok(T::from_rational(&parse_rational(trimmed)?, ctx))
}

/// Arithmetic backend selected for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Backend choice plus the root refinement width.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeConfig {
    pub mode: Mode,
    pub precision_bits: u32,
    pub refine_tolerance: BigRational,
}

impl Default for ModeConfig {
    fn default() -> Self {
        ModeConfig {
            mode: Mode::Exact,
            precision_bits: 256,
            refine_tolerance: default_refine_tolerance(),
        }
    }
}

/// `2^-60`.
pub fn default_refine_tolerance() -> BigRational {
    pow2_rational(-60)
}

impl ModeConfig {
    pub fn new(mode: Mode, precision_bits: u32, refine_tolerance: BigRational) -> Result<Self> {
        let cfg = ModeConfig {
            mode,
            precision_bits,
            refine_tolerance,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Float {
            Precision::new(self.precision_bits)?;
        }
        if !self.refine_tolerance.is_positive() {
            return Err(Error::InvalidParameter(
                "refine tolerance must be positive".to_string(),
            ));
        }
        Ok(())
    }

    pub fn precision(&self) -> Result<Precision> {
        Precision::new(self.precision_bits)
    }
}
