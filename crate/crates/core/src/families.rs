//! Generation of `P_n^{alpha,q}` and the generalized Gegenbauer polynomials
//! `GG_n^{alpha,mu}`, and the structural identities linking them.
//!
//! `P_n^{alpha,q}` is the monic family orthogonal on `[-1, 1]` with respect
//! to the signed weight `x^(2q+1) (1-x^2)^alpha (1-x)`. `GG_n^{alpha,mu}` is
//! the monic family for the positive weight `|x|^mu (1-x^2)^alpha`.
//!
//! Three independent routes produce `P_n`:
//!
//! * the three-term recurrence with closed-form coefficients
//!   ([`p_poly_ttrr`]),
//! * the terminating hypergeometric form in `1/x^2` for even degrees
//!   ([`p_poly_hyper`]), and
//! * moment-based Gram-Schmidt in [`crate::orthogonality`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hypergeom::{series_coefficients, HypParams};
use crate::numerics::{pochhammer, Scalar};
use crate::polynomials::Poly;

fn half<T: Scalar>(like: &T, num: i64) -> T {
    like.lift_rational(&BigRational::new(BigInt::from(num), BigInt::from(2)))
}

/// `(alpha, q)` with `alpha > -1` and `q >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams<T> {
    alpha: T,
    q: u32,
}

impl<T: Scalar> FamilyParams<T> {
    pub fn new(alpha: T, q: u32) -> Result<Self> {
        if alpha <= alpha.lift_i64(-1) {
            return Err(Error::InvalidParameter(format!(
                "alpha must exceed -1, got {alpha}"
            )));
        }
        Ok(FamilyParams { alpha, q })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `(alpha + da, q + dq)`; always valid.
    pub fn shifted(&self, da: u32, dq: u32) -> Self {
        FamilyParams {
            alpha: self.alpha.clone() + self.alpha.lift_i64(da as i64),
            q: self.q + dq,
        }
    }

    /// The Gegenbauer parameters `(alpha, 2q+2)` matching even degrees.
    pub fn gg(&self) -> GGParams<T> {
        GGParams {
            alpha: self.alpha.clone(),
            mu: self.alpha.lift_i64(2 * self.q as i64 + 2),
        }
    }
}

impl<T: Scalar> fmt::Display for FamilyParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={}, q={}", self.alpha, self.q)
    }
}

/// `(alpha, mu)` with both greater than -1.
#[derive(Debug, Clone, PartialEq)]
pub struct GGParams<T> {
    alpha: T,
    mu: T,
}

impl<T: Scalar> GGParams<T> {
    pub fn new(alpha: T, mu: T) -> Result<Self> {
        let minus_one = alpha.lift_i64(-1);
        if alpha <= minus_one || mu <= minus_one {
            return Err(Error::InvalidParameter(format!(
                "alpha and mu must exceed -1, got alpha={alpha}, mu={mu}"
            )));
        }
        Ok(GGParams { alpha, mu })
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn mu(&self) -> &T {
        &self.mu
    }
}

/// One row `(beta_n, gamma_n)` of the recurrence. `gamma_0` is never used
/// and is left undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePair<T> {
    pub index: usize,
    pub beta: T,
    pub gamma: Option<T>,
}

/// `beta_n = (-1)^(n+1)`.
pub fn ttrr_beta<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> T {
    fp.alpha.lift_i64(if n.is_multiple_of(2) { -1 } else { 1 })
}

/// Closed-form `gamma_n` for `n >= 1`:
///
/// ```text
/// gamma_{2m}   = -2 m (2m+2q+1) / ((4m+2a+2q+1)(4m+2a+2q+3))
/// gamma_{2m+1} = -2 (m+a+1)(2m+2a+2q+3) / ((4m+2a+2q+3)(4m+2a+2q+5))
/// ```
pub fn ttrr_gamma<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexRange(
            "gamma_0 is not used by the recurrence".to_string(),
        ));
    }
    let a = &fp.alpha;
    let m = (n / 2) as i64;
    let q = fp.q as i64;
    let two_a = a.clone() + a;
    let lin = |k: i64| two_a.clone() + a.lift_i64(k);
    let value = if n.is_multiple_of(2) {
        let num = a.lift_i64(-2 * m * (2 * m + 2 * q + 1));
        num / (lin(4 * m + 2 * q + 1) * lin(4 * m + 2 * q + 3))
    } else {
        let num = (a.clone() + a.lift_i64(m + 1)) * lin(2 * m + 2 * q + 3) * a.lift_i64(-2);
        num / (lin(4 * m + 2 * q + 3) * lin(4 * m + 2 * q + 5))
    };
    Ok(value)
}

/// Recurrence rows `0..=n_max`.
pub fn recurrence<T: Scalar>(fp: &FamilyParams<T>, n_max: usize) -> Vec<RecurrencePair<T>> {
    (0..=n_max)
        .map(|index| RecurrencePair {
            index,
            beta: ttrr_beta(fp, index),
            gamma: (index > 0).then(|| ttrr_gamma(fp, index).expect("index >= 1")),
        })
        .collect()
}

/// Runs `P_{k+1} = (x - beta_k) P_k - gamma_k P_{k-1}` from `P_0 = 1` and
/// returns `P_0..=P_n`. Needs rows `0..n`.
pub fn polys_from_recurrence<T: Scalar>(
    rows: &[RecurrencePair<T>],
    like: &T,
    n: usize,
) -> Result<Vec<Poly<T>>> {
    if n > 0 && rows.len() < n {
        return Err(Error::IndexRange(format!(
            "P_{n} needs {n} recurrence rows, got {}",
            rows.len()
        )));
    }
    let x = Poly::x(like);
    let mut out = vec![Poly::constant(like.one_like())];
    for k in 0..n {
        let row = &rows[k];
        if row.index != k {
            return Err(Error::IndexRange(format!(
                "recurrence row {k} carries index {}",
                row.index
            )));
        }
        let shifted = &x - &Poly::constant(row.beta.clone());
        let mut next = &shifted * &out[k];
        if k > 0 {
            let gamma = row
                .gamma
                .as_ref()
                .ok_or_else(|| Error::IndexRange(format!("recurrence row {k} is missing gamma")))?;
            next = &next - &out[k - 1].scale(gamma);
        }
        out.push(next);
    }
    Ok(out)
}

/// `P_0..=P_n` from the closed-form recurrence.
pub fn p_polys_ttrr<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Vec<Poly<T>> {
    polys_from_recurrence(&recurrence(fp, n), &fp.alpha, n).expect("rows cover 0..n")
}

/// `P_n^{alpha,q}` from the recurrence.
pub fn p_poly_ttrr<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Poly<T> {
    p_polys_ttrr(fp, n).pop().expect("at least P_0")
}

/// Expands `x^lead * sum_k c_k x^(-2k)` into ascending coefficients.
fn expand_in_reciprocal_square<T: Scalar>(series: &[T], lead: usize) -> Poly<T> {
    let zero = series[0].zero_like();
    let mut coeffs = vec![zero; lead + 1];
    for (k, c) in series.iter().enumerate() {
        coeffs[lead - 2 * k] = c.clone();
    }
    Poly::new(coeffs)
}

/// `GG_n^{alpha,mu}` from its terminating hypergeometric form in `1/x^2`:
///
/// ```text
/// GG_{2m}   = x^{2m}   2F1(-m, -m - mu/2 + 1/2; -2m - alpha - mu/2 + 1/2; 1/x^2)
/// GG_{2m+1} = x^{2m+1} 2F1(-m, -m - mu/2 - 1/2; -2m - alpha - mu/2 - 1/2; 1/x^2)
/// ```
pub fn gg_poly<T: Scalar>(gp: &GGParams<T>, n: usize) -> Result<Poly<T>> {
    let m = (n / 2) as i64;
    let like = &gp.alpha;
    let half_mu = gp.mu.clone() / like.lift_i64(2);
    let offset = if n.is_multiple_of(2) {
        half(like, 1)
    } else {
        half(like, -1)
    };
    let a = like.lift_i64(-m);
    let b = like.lift_i64(-m) - &half_mu + &offset;
    let c = like.lift_i64(-2 * m) - &gp.alpha - &half_mu + &offset;
    let params = HypParams::new(a, b, c)?;
    Ok(expand_in_reciprocal_square(
        &series_coefficients(&params),
        n,
    ))
}

/// `P_n^{alpha,q}` for even `n = 2m` from
/// `x^{2m} 2F1(-m, -m-q-1/2; -2m-alpha-q-1/2; 1/x^2)`.
pub fn p_poly_hyper<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Result<Poly<T>> {
    if !n.is_multiple_of(2) {
        return Err(Error::IndexRange(format!(
            "the hypergeometric route needs an even degree, got {n}"
        )));
    }
    let like = &fp.alpha;
    let m = (n / 2) as i64;
    let q = fp.q as i64;
    let a = like.lift_i64(-m);
    let b = like.lift_i64(-m - q) - half(like, 1);
    let c = like.lift_i64(-2 * m - q) - &fp.alpha - half(like, 1);
    let params = HypParams::new(a, b, c)?;
    Ok(expand_in_reciprocal_square(
        &series_coefficients(&params),
        n,
    ))
}

/// The second hypergeometric form of `P_{2m}`, a series in `x^2`:
/// `(-1)^m (q+3/2)_m / (m+q+alpha+3/2)_m * 2F1(-m, m+q+alpha+3/2; q+3/2; x^2)`.
///
/// Its leading coefficient is 1 exactly when the prefactor normalizes the
/// series correctly; compare with [`p_poly_hyper`].
pub fn p_poly_hyper_normal_form<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Result<Poly<T>> {
    if !n.is_multiple_of(2) {
        return Err(Error::IndexRange(format!(
            "the hypergeometric route needs an even degree, got {n}"
        )));
    }
    let like = &fp.alpha;
    let m = (n / 2) as u64;
    let q = fp.q as i64;
    let upper = like.lift_i64(m as i64 + q) + &fp.alpha + half(like, 3);
    let lower = like.lift_i64(q) + half(like, 3);
    let sign = like.lift_i64(if m.is_multiple_of(2) { 1 } else { -1 });
    let prefactor = sign * pochhammer(&lower, m) / pochhammer(&upper, m);
    let params = HypParams::new(like.lift_i64(-(m as i64)), upper, lower)?;
    let in_u = Poly::new(series_coefficients(&params));
    Ok(in_u.compose_square().scale(&prefactor))
}

/// Identities checked by [`check_identity`]. `n` is the inner index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `P_{2n}^{a,q} - GG_{2n}^{a,2q+2}`
    P2nGg2n,
    /// `P_{2n+1}^{a,q} - (1+x) GG_{2n}^{a+1,2q+2}`
    P2np1Gg2n,
    /// `P_{2n+1}^{a,q} - (1+x) P_{2n}^{a+1,q}`
    P2np1P2n,
    /// `GG_{2n+1}^{a,mu} - x GG_{2n}^{a,mu+2}`
    GgOddEven,
    /// `P_{2n}' - 2n GG_{2n-1}^{a+1,2q+2}`, `n >= 1`
    Zeros1,
    /// `P_{2n}' - 2n x P_{2n-2}^{a+1,q+1}`, `n >= 1`
    Zeros2,
    /// `P_{2n+1}' - P_{2n}^{a+1,q} - 2n x P_{2n-1}^{a+1,q+1}`
    Zeros3,
    /// `P_{2n}^{a,q} - P_{2n}^{a+1,q} - gamma_{2n} P_{2n-2}^{a+1,q}`, `n >= 1`
    GammaEven,
    /// `(x^2-1) P_{2n}^{a+1,q} - P_{2n+2}^{a,q} - gamma_{2n+1} P_{2n}^{a,q}`
    GammaOdd,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::P2nGg2n,
        Identity::P2np1Gg2n,
        Identity::P2np1P2n,
        Identity::GgOddEven,
        Identity::Zeros1,
        Identity::Zeros2,
        Identity::Zeros3,
        Identity::GammaEven,
        Identity::GammaOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::P2nGg2n => "p2ngg2n",
            Identity::P2np1Gg2n => "p2np1gg2n",
            Identity::P2np1P2n => "p2np1gg2n2",
            Identity::GgOddEven => "relationpmu",
            Identity::Zeros1 => "zeros1",
            Identity::Zeros2 => "zeros2",
            Identity::Zeros3 => "zeros3",
            Identity::GammaEven => "gamma-even",
            Identity::GammaOdd => "gamma-odd",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown identity {name:?}")))
    }

    /// Smallest inner index the identity is stated for.
    pub fn min_index(self) -> usize {
        match self {
            Identity::Zeros1 | Identity::Zeros2 | Identity::GammaEven => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of an identity check: the `P` family or, for
/// [`Identity::GgOddEven`], a Gegenbauer pair.
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityParams<T> {
    Family(FamilyParams<T>),
    Gegenbauer(GGParams<T>),
}

/// Returns `LHS - RHS` of the selected identity as a polynomial; the zero
/// polynomial means the identity holds.
pub fn check_identity<T: Scalar>(
    id: Identity,
    params: &IdentityParams<T>,
    n: usize,
) -> Result<Poly<T>> {
    if n < id.min_index() {
        return Err(Error::IndexRange(format!(
            "{id} is stated for n >= {}, got {n}",
            id.min_index()
        )));
    }
    let fp = match (id, params) {
        (Identity::GgOddEven, IdentityParams::Gegenbauer(gp)) => {
            let lhs = gg_poly(gp, 2 * n + 1)?;
            let shifted = GGParams::new(gp.alpha.clone(), gp.mu.clone() + gp.mu.lift_i64(2))?;
            let rhs = gg_poly(&shifted, 2 * n)?.shift_up(1);
            return Ok(&lhs - &rhs);
        }
        (Identity::GgOddEven, IdentityParams::Family(_)) => {
            return Err(Error::InvalidParameter(format!(
                "{id} takes Gegenbauer parameters (alpha, mu)"
            )))
        }
        (_, IdentityParams::Family(fp)) => fp,
        (_, IdentityParams::Gegenbauer(_)) => {
            return Err(Error::InvalidParameter(format!(
                "{id} takes family parameters (alpha, q)"
            )))
        }
    };
    let like = fp.alpha();
    let one_plus_x = Poly::new(vec![like.one_like(), like.one_like()]);
    let two_n = like.lift_i64(2 * n as i64);
    let residual = match id {
        Identity::P2nGg2n => &p_poly_ttrr(fp, 2 * n) - &gg_poly(&fp.gg(), 2 * n)?,
        Identity::P2np1Gg2n => {
            let rhs = &one_plus_x * &gg_poly(&fp.shifted(1, 0).gg(), 2 * n)?;
            &p_poly_ttrr(fp, 2 * n + 1) - &rhs
        }
        Identity::P2np1P2n => {
            let rhs = &one_plus_x * &p_poly_ttrr(&fp.shifted(1, 0), 2 * n);
            &p_poly_ttrr(fp, 2 * n + 1) - &rhs
        }
        Identity::Zeros1 => {
            let lhs = p_poly_ttrr(fp, 2 * n).derivative();
            let rhs = gg_poly(&fp.shifted(1, 0).gg(), 2 * n - 1)?.scale(&two_n);
            &lhs - &rhs
        }
        Identity::Zeros2 => {
            let lhs = p_poly_ttrr(fp, 2 * n).derivative();
            let rhs = p_poly_ttrr(&fp.shifted(1, 1), 2 * n - 2)
                .shift_up(1)
                .scale(&two_n);
            &lhs - &rhs
        }
        Identity::Zeros3 => {
            let lhs = p_poly_ttrr(fp, 2 * n + 1).derivative();
            let mut rhs = p_poly_ttrr(&fp.shifted(1, 0), 2 * n);
            if n > 0 {
                let tail = p_poly_ttrr(&fp.shifted(1, 1), 2 * n - 1)
                    .shift_up(1)
                    .scale(&two_n);
                rhs = &rhs + &tail;
            }
            &lhs - &rhs
        }
        Identity::GammaEven => {
            let gamma = ttrr_gamma(fp, 2 * n)?;
            let up = fp.shifted(1, 0);
            let diff = &p_poly_ttrr(fp, 2 * n) - &p_poly_ttrr(&up, 2 * n);
            &diff - &p_poly_ttrr(&up, 2 * n - 2).scale(&gamma)
        }
        Identity::GammaOdd => {
            let gamma = ttrr_gamma(fp, 2 * n + 1)?;
            let x2_minus_1 = Poly::new(vec![like.lift_i64(-1), like.zero_like(), like.one_like()]);
            let lhs = &x2_minus_1 * &p_poly_ttrr(&fp.shifted(1, 0), 2 * n);
            let lhs = &lhs - &p_poly_ttrr(fp, 2 * n + 2);
            &lhs - &p_poly_ttrr(fp, 2 * n).scale(&gamma)
        }
        Identity::GgOddEven => unreachable!("handled above"),
    };
    Ok(residual)
}
