//! Dense univariate polynomials over a [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Dense polynomial, coefficients in ascending powers.
///
/// Trailing (leading-power) zeros are trimmed, so the zero polynomial has no
/// coefficients and every other polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    /// The identity polynomial `x`, built in the context of `like`.
    pub fn x(like: &T) -> Self {
        Poly::monomial(like.one_like(), 1)
    }

    /// `x - r`.
    pub fn linear_root(r: &T) -> Self {
        Poly::new(vec![-r.clone(), r.one_like()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, `None` past the degree.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == c.one_like())
    }

    /// Largest coefficient magnitude; `None` for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Option<T> {
        let mut iter = self.coeffs.iter();
        let first = iter.next()?.abs();
        Some(iter.fold(first, |acc, c| {
            let a = c.abs();
            if a > acc {
                a
            } else {
                acc
            }
        }))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * c.lift_i64(k as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = lead.one_like() / lead;
                let mut out = self.scale(&inv);
                // pin the leading coefficient; float division may be off by an ulp
                if let Some(last) = out.coeffs.last_mut() {
                    *last = lead.one_like();
                }
                out
            }
            None => self.clone(),
        }
    }

    /// True when all odd-power coefficients are exactly zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// True when all even-power coefficients are exactly zero.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    /// Rewrites an even polynomial `p(x)` as `Q(u)` with `u = x^2`.
    ///
    /// Exact backends require the odd coefficients to vanish. Float backends
    /// zero odd coefficients up to `2^-(bits/2) * max|coeff|` and reject
    /// anything larger.
    pub fn even_part_in_u(&self) -> Result<Self> {
        let scale = match self.max_abs_coeff() {
            Some(s) => s,
            None => return Ok(Poly::zero()),
        };
        let kept_bits = scale.precision_bits().map_or(0, |b| b / 2);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).step_by(2) {
            if !c.negligible_against(&scale, kept_bits) {
                return Err(Error::NotEven { degree: k });
            }
        }
        Ok(Poly::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Substitutes `x^2` for the variable: `Q(u) -> Q(x^2)`.
    pub fn compose_square(&self) -> Self {
        let Some(first) = self.coeffs.first() else {
            return Poly::zero();
        };
        let zero = first.zero_like();
        let mut coeffs = Vec::with_capacity(2 * self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                coeffs.push(zero.clone());
            }
            coeffs.push(c.clone());
        }
        Poly::new(coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let Some(first) = self.coeffs.first() else {
            return Poly::zero();
        };
        let mut coeffs = vec![first.zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    /// Synthetic division by `(x - r)`.
    ///
    /// The remainder must be exactly zero for exact backends; float backends
    /// accept a remainder below `2^-(bits/2)` times the sum of term
    /// magnitudes at `r`.
    pub fn deflate_root(&self, r: &T) -> Result<Self> {
        let (quotient, remainder) = self.synthetic_division(r);
        let scale = self
            .coeffs
            .iter()
            .rev()
            .fold(r.zero_like(), |acc, c| acc * r.abs() + c.abs());
        let kept_bits = r.precision_bits().map_or(0, |b| b / 2);
        if remainder.negligible_against(&scale, kept_bits) {
            Ok(quotient)
        } else {
            Err(Error::NonzeroRemainder {
                root: r.to_string(),
            })
        }
    }

    /// Quotient and remainder of division by `(x - r)`.
    pub fn synthetic_division(&self, r: &T) -> (Self, T) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Poly::zero(), r.zero_like());
        }
        let mut quotient = vec![r.zero_like(); n - 1];
        let mut carry = r.zero_like();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + carry * r;
            if k == 0 {
                return (Poly::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Euclidean division. Panics when `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![lead.zero_like(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let factor = rem[k + d].clone() / lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - factor.clone() * c;
            }
            // the leading term cancels by construction
            rem[k + d] = lead.zero_like();
            quot[k] = factor;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Converts coefficients to exact rationals (floats are dyadic).
    pub fn to_rational(&self) -> Result<Poly<BigRational>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.to_rational()
                    .ok_or_else(|| Error::InvalidParameter(format!("non-finite coefficient {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    /// Rebuilds the polynomial in another backend.
    pub fn from_rational(p: &Poly<BigRational>, ctx: &T::Context) -> Self {
        Poly::new(p.coeffs.iter().map(|c| T::from_rational(c, ctx)).collect())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = magnitude == magnitude.one_like();
            let power = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, unit) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => f.write_str(&power)?,
                (_, false) => write!(f, "{magnitude}*{power}")?,
            }
        }
        Ok(())
    }
}

fn zip_coeffs<T: Scalar>(a: &Poly<T>, b: &Poly<T>, op: impl Fn(&T, &T) -> T) -> Poly<T> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let like = a.coeffs.first().or(b.coeffs.first());
    let Some(like) = like else {
        return Poly::zero();
    };
    let zero = like.zero_like();
    let coeffs = (0..n)
        .map(|k| {
            let x = a.coeffs.get(k).unwrap_or(&zero);
            let y = b.coeffs.get(k).unwrap_or(&zero);
            op(x, y)
        })
        .collect();
    Poly::new(coeffs)
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        zip_coeffs(self, rhs, |x, y| x.clone() + y)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        zip_coeffs(self, rhs, |x, y| x.clone() - y)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_poly_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                $tr::$method(&self, &rhs)
            }
        }
        impl<T: Scalar> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                $tr::$method(&self, rhs)
            }
        }
    };
}

owned_poly_binop!(Add, add);
owned_poly_binop!(Sub, sub);
owned_poly_binop!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}
