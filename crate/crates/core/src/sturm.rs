//! Exact Sturm chains and certified real-root isolation over the rationals.
//!
//! Chain members are stored as primitive integer polynomials; scaling by a
//! positive constant leaves every sign, and hence every variation count,
//! unchanged. Signs at `a/b` are taken from the homogenized value
//! `sum c_i a^i b^(d-i)`, so no rational arithmetic happens during counting.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomials::Poly;

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `[-hi, -lo]`.
    pub fn negated(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Primitive integer polynomial with the sign of the input's leading term.
fn primitive(p: &Poly<BigRational>) -> Vec<BigInt> {
    let coeffs = p.coeffs();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// Sign of `p(a/b)` for `b > 0`.
fn sign_at(p: &[BigInt], a: &BigInt, b: &BigInt) -> Sign {
    let Some((last, rest)) = p.split_last() else {
        return Sign::NoSign;
    };
    let mut acc = last.clone();
    let mut bpow = BigInt::one();
    for c in rest.iter().rev() {
        bpow *= b;
        acc = acc * a + c * &bpow;
    }
    acc.sign()
}

/// Sturm chain `p, p', -rem(...)...` of a squarefree rational polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    members: Vec<Vec<BigInt>>,
}

impl SturmChain {
    /// Fails with [`Error::NotSquarefree`] when `gcd(p, p')` is not constant.
    pub fn new(p: &Poly<BigRational>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::Precondition(
                "the zero polynomial has no Sturm chain".to_string(),
            ));
        }
        let mut rational = vec![p.clone()];
        let mut current = p.derivative();
        while !current.is_zero() {
            let prev = rational.last().expect("nonempty");
            let (_, rem) = prev.div_rem(&current);
            rational.push(current);
            current = -rem;
        }
        let last_degree = rational.last().and_then(Poly::degree).unwrap_or(0);
        if last_degree > 0 {
            return Err(Error::NotSquarefree(last_degree));
        }
        Ok(SturmChain {
            members: rational.iter().map(primitive).collect(),
        })
    }

    /// Sign of the chain's first member at `x`.
    pub fn sign(&self, x: &BigRational) -> Sign {
        sign_at(&self.members[0], x.numer(), x.denom())
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Sign::NoSign;
        for m in &self.members {
            let s = sign_at(m, x.numer(), x.denom());
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// `1 + max |c_i / c_d|`: every root has smaller absolute value.
    pub fn cauchy_bound(&self) -> BigRational {
        let p = &self.members[0];
        let lead = p.last().expect("nonzero").abs();
        let max = p[..p.len() - 1]
            .iter()
            .map(|c| BigRational::new(c.abs(), lead.clone()))
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &Poly<BigRational>, a: &BigRational, b: &BigRational) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(a, b))
}

/// How a point `x` is fed to the chain: directly, or as `x^2` when the
/// chain belongs to `Q(u)` with `u = x^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Variable {
    X,
    Square,
}

pub(crate) struct Isolator<'a> {
    chain: &'a SturmChain,
    variable: Variable,
}

impl<'a> Isolator<'a> {
    pub(crate) fn new(chain: &'a SturmChain, variable: Variable) -> Self {
        Isolator { chain, variable }
    }

    fn map(&self, x: &BigRational) -> BigRational {
        match self.variable {
            Variable::X => x.clone(),
            Variable::Square => x * x,
        }
    }

    /// Roots in `(a, b]`; `a >= 0` when the variable is squared.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.chain.count(&self.map(a), &self.map(b))
    }

    fn sign(&self, x: &BigRational) -> Sign {
        self.chain.sign(&self.map(x))
    }

    /// A point strictly inside `(a, b)` where the polynomial does not vanish.
    fn split_point(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let two = BigInt::from(2);
        let mut m = (a + b) / &two;
        while self.sign(&m) == Sign::NoSign {
            m = (a + &m) / &two;
        }
        m
    }

    /// Disjoint enclosures of width `<= tol`, ascending, one per root in
    /// `(lo, hi]`. Neither `lo` nor `hi` may be a root.
    pub(crate) fn isolate(
        &self,
        lo: BigRational,
        hi: BigRational,
        tol: &BigRational,
    ) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            match self.count(&a, &b) {
                0 => {}
                1 => out.push(self.refine(a, b, tol)),
                _ => {
                    let m = self.split_point(&a, &b);
                    // right half first so the left half is popped first
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        out
    }

    /// Bisects `(a, b]` holding one simple root down to width `tol`.
    fn refine(&self, mut a: BigRational, mut b: BigRational, tol: &BigRational) -> Interval {
        let two = BigInt::from(2);
        let sb = self.sign(&b);
        while &b - &a > *tol {
            let m = (&a + &b) / &two;
            match self.sign(&m) {
                Sign::NoSign => return Interval::point(m),
                s if s == sb => b = m,
                _ => a = m,
            }
        }
        Interval::new(a, b)
    }
}

/// Certified enclosures of every real root of a squarefree `p`, ascending.
pub fn isolate_real_roots(p: &Poly<BigRational>, tol: &BigRational) -> Result<Vec<Interval>> {
    if !tol.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let chain = SturmChain::new(p)?;
    let bound = chain.cauchy_bound();
    Ok(Isolator::new(&chain, Variable::X).isolate(-bound.clone(), bound, tol))
}
