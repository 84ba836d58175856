//! Terminating Gauss hypergeometric series and contiguous relations.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::numerics::{pochhammer, Scalar};

/// Parameters `(a, b; c)` of a terminating `2F1`.
///
/// At least one upper parameter is a nonpositive integer `-m`; when both
/// are, the smaller `m` truncates the series. `(c)_k` is nonzero for every
/// `k <= m`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypParams<T> {
    a: T,
    b: T,
    c: T,
    terms: u64,
}

impl<T: Scalar> HypParams<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        let termination = |v: &T| -> Option<u64> {
            v.as_integer()
                .filter(|i| !i.is_positive())
                .and_then(|i| num_traits::ToPrimitive::to_u64(&i.abs()))
        };
        let terms = match (termination(&a), termination(&b)) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => return Err(Error::NonTerminating),
        };
        for offset in 0..terms {
            if (c.clone() + c.lift_i64(offset as i64)).is_zero() {
                return Err(Error::LowerParameterPole { offset });
            }
        }
        Ok(HypParams { a, b, c, terms })
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// Degree `m` of the terminating series.
    pub fn termination_index(&self) -> u64 {
        self.terms
    }

    fn shifted(&self, da: i64, db: i64, dc: i64) -> Result<Self> {
        HypParams::new(
            self.a.clone() + self.a.lift_i64(da),
            self.b.clone() + self.b.lift_i64(db),
            self.c.clone() + self.c.lift_i64(dc),
        )
    }
}

/// Coefficients of `z^k`, `k = 0..=m`: `(a)_k (b)_k / (k! (c)_k)`.
pub fn series_coefficients<T: Scalar>(p: &HypParams<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(p.terms as usize + 1);
    let mut term = p.a.one_like();
    out.push(term.clone());
    for k in 0..p.terms {
        let kk = p.a.lift_i64(k as i64);
        let num = (p.a.clone() + &kk) * (p.b.clone() + &kk);
        let den = (kk.clone() + kk.one_like()) * (p.c.clone() + &kk);
        term = term * num / den;
        out.push(term.clone());
    }
    out
}

/// `2F1(a, b; c; z)` for terminating parameters, by Horner on the series.
pub fn eval_2f1_terminating<T: Scalar>(p: &HypParams<T>, z: &T) -> T {
    series_coefficients(p)
        .iter()
        .rev()
        .fold(z.zero_like(), |acc, c| acc * z + c)
}

/// The five contiguous relations checked by [`contiguous_residual`].
///
/// With `F = 2F1(a, b; c; z)` and `F(a+1)` etc. denoting shifted
/// parameters:
///
/// 1. `(c-a-b) F + a(1-z) F(a+1) - (c-b) F(b-1)`
/// 2. `(c-a-1) F + a F(a+1) - (c-1) F(c-1)`
/// 3. `c(1-z) F - c F(a-1) + (c-b) z F(c+1)`
/// 4. `(a-b) F - a F(a+1) + b F(b+1)`
/// 5. `(a-b)(1-z) F + (c-a) F(a-1) - (c-b) F(b-1)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Contiguous {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl Contiguous {
    pub const ALL: [Contiguous; 5] = [
        Contiguous::R1,
        Contiguous::R2,
        Contiguous::R3,
        Contiguous::R4,
        Contiguous::R5,
    ];

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Contiguous::R1),
            2 => Ok(Contiguous::R2),
            3 => Ok(Contiguous::R3),
            4 => Ok(Contiguous::R4),
            5 => Ok(Contiguous::R5),
            _ => Err(Error::InvalidParameter(format!(
                "contiguous relation id must be 1..=5, got {id}"
            ))),
        }
    }

    pub fn id(self) -> u8 {
        self as u8 + 1
    }
}

/// Left-hand side of a contiguous relation; zero when the relation holds.
///
/// Every shifted parameter set must itself be terminating and pole free.
pub fn contiguous_residual<T: Scalar>(rel: Contiguous, p: &HypParams<T>, z: &T) -> Result<T> {
    let f = |q: &HypParams<T>| eval_2f1_terminating(q, z);
    let (a, b, c) = (p.a.clone(), p.b.clone(), p.c.clone());
    let one = a.one_like();
    let base = f(p);
    let residual = match rel {
        Contiguous::R1 => {
            let fa = f(&p.shifted(1, 0, 0)?);
            let fb = f(&p.shifted(0, -1, 0)?);
            (c.clone() - &a - &b) * base + a * (one - z) * fa - (c - b) * fb
        }
        Contiguous::R2 => {
            let fa = f(&p.shifted(1, 0, 0)?);
            let fc = f(&p.shifted(0, 0, -1)?);
            (c.clone() - &a - &one) * base + a * fa - (c - one) * fc
        }
        Contiguous::R3 => {
            let fa = f(&p.shifted(-1, 0, 0)?);
            let fc = f(&p.shifted(0, 0, 1)?);
            c.clone() * (one - z) * base - c.clone() * fa + (c - b) * z * fc
        }
        Contiguous::R4 => {
            let fa = f(&p.shifted(1, 0, 0)?);
            let fb = f(&p.shifted(0, 1, 0)?);
            (a.clone() - &b) * base - a * fa + b * fb
        }
        Contiguous::R5 => {
            let fa = f(&p.shifted(-1, 0, 0)?);
            let fb = f(&p.shifted(0, -1, 0)?);
            (a.clone() - &b) * (one - z) * base + (c.clone() - &a) * fa - (c - b) * fb
        }
    };
    Ok(residual)
}

/// Largest term magnitude entering [`contiguous_residual`]; the natural
/// scale for float-mode residual tolerances.
pub fn contiguous_scale<T: Scalar>(rel: Contiguous, p: &HypParams<T>, z: &T) -> Result<T> {
    let shifts: [(i64, i64, i64); 2] = match rel {
        Contiguous::R1 => [(1, 0, 0), (0, -1, 0)],
        Contiguous::R2 => [(1, 0, 0), (0, 0, -1)],
        Contiguous::R3 => [(-1, 0, 0), (0, 0, 1)],
        Contiguous::R4 => [(1, 0, 0), (0, 1, 0)],
        Contiguous::R5 => [(-1, 0, 0), (0, -1, 0)],
    };
    let mut sets = vec![p.clone()];
    for (da, db, dc) in shifts {
        sets.push(p.shifted(da, db, dc)?);
    }
    let weight = p.a.abs() + p.b.abs() + p.c.abs() + p.a.one_like() + p.a.one_like();
    let mut scale = p.a.zero_like();
    for set in &sets {
        let mut zk = z.one_like();
        for coeff in series_coefficients(set) {
            let term = coeff.abs() * &zk;
            if term > scale {
                scale = term;
            }
            zk = zk * z.abs();
        }
    }
    Ok(scale * weight)
}

/// `gamma_{2n}` reproduced along the contiguous-relation route, with
/// `a = n+q+alpha+3/2`, `b = -n`, `c = q+3/2`:
/// `b (c)_n (a)_{n-1} / ((a-b) (c)_{n-1} (a)_n)`. Requires `n >= 1`.
pub fn gamma_even_from_contiguous<T: Scalar>(alpha: &T, q: u32, n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexRange("gamma_{2n} requires n >= 1".to_string()));
    }
    let half = alpha.lift_rational(&num_rational::BigRational::new(
        BigInt::from(3),
        BigInt::from(2),
    ));
    let a = alpha.lift_i64(n as i64 + q as i64) + alpha + &half;
    let b = alpha.lift_i64(-(n as i64));
    let c = alpha.lift_i64(q as i64) + &half;
    let num = b.clone() * pochhammer(&c, n) * pochhammer(&a, n - 1);
    let den = (a.clone() - &b) * pochhammer(&c, n - 1) * pochhammer(&a, n);
    Ok(num / den)
}

/// `gamma_{2n+1}` along the contiguous-relation route, with
/// `a = n+q+alpha+5/2`, `b = -n`, `c = q+3/2`:
/// `(c-a) (a-1)_n / ((a+n) (a)_n)`.
pub fn gamma_odd_from_contiguous<T: Scalar>(alpha: &T, q: u32, n: u64) -> T {
    let frac = |num: i64| {
        alpha.lift_rational(&num_rational::BigRational::new(
            BigInt::from(num),
            BigInt::from(2),
        ))
    };
    let a = alpha.lift_i64(n as i64 + q as i64) + alpha + frac(5);
    let c = alpha.lift_i64(q as i64) + frac(3);
    let num = (c - &a) * pochhammer(&(a.clone() - a.one_like()), n);
    let den = (a.clone() + a.lift_i64(n as i64)) * pochhammer(&a, n);
    num / den
}
