//! Moments of the signed weight `x^(2q+1) (1-x^2)^alpha (1-x)`, the inner
//! product it induces, and a Gram-Schmidt oracle independent of the
//! closed-form recurrence.
//!
//! All values are relative to `M_0 = int_{-1}^{1} (1-x^2)^alpha dx`, which
//! keeps exact mode inside the rationals. Nonzero norms in reports are
//! therefore relative as well.

use crate::error::{Error, Result};
use crate::families::{FamilyParams, RecurrencePair};
use crate::numerics::Scalar;
use crate::polynomials::Poly;

/// `M_{2s} / M_0` for `s = 0..`, where `M_j = int_{-1}^{1} x^j (1-x^2)^alpha dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<T> {
    alpha: T,
    relative_moments: Vec<T>,
}

impl<T: Scalar> MomentTable<T> {
    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    /// Entry `s` is `M_{2s} / M_0`.
    pub fn relative_moments(&self) -> &[T] {
        &self.relative_moments
    }

    /// `M_j / M_0` for any `j` covered by the table; odd `j` give zero.
    pub fn moment(&self, j: usize) -> Result<T> {
        if j % 2 == 1 {
            return Ok(self.alpha.zero_like());
        }
        self.relative_moments.get(j / 2).cloned().ok_or_else(|| {
            Error::IndexRange(format!(
                "moment M_{j} beyond table of max power {}",
                2 * (self.relative_moments.len() - 1)
            ))
        })
    }
}

/// Even moments up to `max_power` via `M_{2s} = M_{2s-2} (2s-1)/(2s+2alpha+1)`.
pub fn base_moments<T: Scalar>(alpha: &T, max_power: usize) -> Result<MomentTable<T>> {
    if *alpha <= alpha.lift_i64(-1) {
        return Err(Error::InvalidParameter(format!(
            "alpha must exceed -1, got {alpha}"
        )));
    }
    let two_alpha = alpha.clone() + alpha;
    let mut relative_moments = vec![alpha.one_like()];
    for s in 1..=(max_power / 2) as i64 {
        let prev = relative_moments.last().expect("nonempty").clone();
        let ratio = alpha.lift_i64(2 * s - 1) / (two_alpha.clone() + alpha.lift_i64(2 * s + 1));
        relative_moments.push(prev * ratio);
    }
    Ok(MomentTable {
        alpha: alpha.clone(),
        relative_moments,
    })
}

/// `m_k = int w(x) x^k dx / M_0` for the signed weight.
///
/// Odd-power integrals against `(1-x^2)^alpha` vanish, so
/// `m_k = M_{2q+1+k}` for odd `k` and `m_k = -M_{2q+2+k}` for even `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMoment<T> {
    pub k: usize,
    pub value: T,
}

/// The moment functional of one `(alpha, q)`: `m_0..=m_{k_max}`.
#[derive(Debug, Clone)]
pub struct SignedFunctional<T> {
    params: FamilyParams<T>,
    moments: Vec<T>,
}

impl<T: Scalar> SignedFunctional<T> {
    /// Moments `m_0..=m_{k_max}`.
    pub fn new(fp: &FamilyParams<T>, k_max: usize) -> Self {
        let q = fp.q() as usize;
        let table = base_moments(fp.alpha(), 2 * q + 3 + k_max).expect("alpha validated");
        let moments = (0..=k_max)
            .map(|k| {
                if k % 2 == 1 {
                    table.moment(2 * q + 1 + k).expect("in table")
                } else {
                    -table.moment(2 * q + 2 + k).expect("in table")
                }
            })
            .collect();
        SignedFunctional {
            params: fp.clone(),
            moments,
        }
    }

    /// Large enough for inner products of polynomials up to degree `n`.
    pub fn for_degree(fp: &FamilyParams<T>, n: usize) -> Self {
        SignedFunctional::new(fp, 2 * n + 1)
    }

    pub fn params(&self) -> &FamilyParams<T> {
        &self.params
    }

    pub fn moment(&self, k: usize) -> Result<SignedMoment<T>> {
        let value = self.moments.get(k).cloned().ok_or_else(|| {
            Error::IndexRange(format!(
                "signed moment m_{k} beyond k_max = {}",
                self.moments.len() - 1
            ))
        })?;
        Ok(SignedMoment { k, value })
    }

    pub fn moments(&self) -> &[T] {
        &self.moments
    }

    fn ensure(&self, k: usize) -> Result<()> {
        if k >= self.moments.len() {
            return Err(Error::IndexRange(format!(
                "inner product needs m_{k}, functional holds up to m_{}",
                self.moments.len() - 1
            )));
        }
        Ok(())
    }

    /// `<p, r> = sum_{i,j} p_i r_j m_{i+j}`.
    pub fn inner(&self, p: &Poly<T>, r: &Poly<T>) -> Result<T> {
        let zero = self.params.alpha().zero_like();
        let (Some(dp), Some(dr)) = (p.degree(), r.degree()) else {
            return Ok(zero);
        };
        self.ensure(dp + dr)?;
        let mut acc = zero;
        for (i, pi) in p.coeffs().iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            let row = r
                .coeffs()
                .iter()
                .enumerate()
                .fold(pi.zero_like(), |s, (j, rj)| {
                    s + rj.clone() * &self.moments[i + j]
                });
            acc = acc + row * pi;
        }
        Ok(acc)
    }

    /// `<x^m, p>`.
    pub fn against_monomial(&self, m: usize, p: &Poly<T>) -> Result<T> {
        let Some(d) = p.degree() else {
            return Ok(self.params.alpha().zero_like());
        };
        self.ensure(m + d)?;
        Ok(p.coeffs()
            .iter()
            .enumerate()
            .fold(self.params.alpha().zero_like(), |s, (j, c)| {
                s + c.clone() * &self.moments[m + j]
            }))
    }

    /// `sum |p_j| |m_{m+j}|`, the roundoff scale of [`Self::against_monomial`].
    fn monomial_scale(&self, m: usize, p: &Poly<T>) -> T {
        p.coeffs()
            .iter()
            .enumerate()
            .fold(self.params.alpha().zero_like(), |s, (j, c)| {
                s + c.abs() * self.moments[m + j].abs()
            })
    }
}

/// `<p, r>` under the signed weight of `fp`, relative to `M_0`.
pub fn signed_inner<T: Scalar>(fp: &FamilyParams<T>, p: &Poly<T>, r: &Poly<T>) -> Result<T> {
    let d = p.degree().unwrap_or(0) + r.degree().unwrap_or(0);
    SignedFunctional::new(fp, d).inner(p, r)
}

/// The values `<x^m, p>` for `m = 0..=n` and whether they show `p` to be
/// the degree-`n` orthogonal polynomial: zero for `m < n`, nonzero at `m = n`.
///
/// Values are relative to `M_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport<T> {
    pub n: usize,
    pub values: Vec<T>,
    /// First `m < n` with a nonzero value, or `n` if the diagonal vanishes.
    pub first_failure: Option<usize>,
}

impl<T> OrthogonalityReport<T> {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `<x^m, p> = k_n delta_{m,n}` with `k_n != 0` for `m <= n`.
///
/// Float backends treat a value as zero when it is below `2^-(bits/2)` of
/// the sum of term magnitudes.
pub fn verify_orthogonality<T: Scalar>(
    fp: &FamilyParams<T>,
    p: &Poly<T>,
    n: usize,
) -> Result<OrthogonalityReport<T>> {
    verify_with(&SignedFunctional::for_degree(fp, n), p, n)
}

/// [`verify_orthogonality`] against a prebuilt functional.
pub fn verify_with<T: Scalar>(
    functional: &SignedFunctional<T>,
    p: &Poly<T>,
    n: usize,
) -> Result<OrthogonalityReport<T>> {
    if p.degree() != Some(n) {
        return Err(Error::Precondition(format!(
            "expected a polynomial of degree {n}, got degree {:?}",
            p.degree()
        )));
    }
    let mut values = Vec::with_capacity(n + 1);
    let mut first_failure = None;
    for m in 0..=n {
        let v = functional.against_monomial(m, p)?;
        let scale = functional.monomial_scale(m, p);
        let kept = v.precision_bits().map_or(0, |b| b / 2);
        let zero = v.negligible_against(&scale, kept);
        if first_failure.is_none() && (zero != (m < n)) {
            first_failure = Some(m);
        }
        values.push(v);
    }
    Ok(OrthogonalityReport {
        n,
        values,
        first_failure,
    })
}

/// Monic `p_0..=p_n` orthogonal under the signed functional, built by
/// sequential projection: `p_k = x p_{k-1} - sum_{j<k} <x p_{k-1}, p_j>/<p_j, p_j> p_j`.
///
/// No three-term structure is assumed. Fails with
/// [`Error::NotQuasiDefinite`] if some `<p_j, p_j>` vanishes.
pub fn gram_schmidt_oracle<T: Scalar>(fp: &FamilyParams<T>, n: usize) -> Result<Vec<Poly<T>>> {
    let functional = SignedFunctional::for_degree(fp, n);
    let like = fp.alpha();
    let mut basis: Vec<Poly<T>> = vec![Poly::constant(like.one_like())];
    let mut norms: Vec<T> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let norm = functional.inner(&basis[k], &basis[k])?;
        if norm.is_zero() {
            return Err(Error::NotQuasiDefinite(k));
        }
        norms.push(norm);
        if k == n {
            break;
        }
        let candidate = basis[k].shift_up(1);
        let mut next = candidate.clone();
        for (pj, nj) in basis.iter().zip(&norms) {
            let c = functional.inner(&candidate, pj)? / nj;
            next = &next - &pj.scale(&c);
        }
        basis.push(next);
    }
    Ok(basis)
}

/// `beta_k = <x p_k, p_k>/<p_k, p_k>` and `gamma_k = <p_k, p_k>/<p_{k-1}, p_{k-1}>`
/// recovered from a monic orthogonal sequence.
pub fn recovered_recurrence<T: Scalar>(
    fp: &FamilyParams<T>,
    polys: &[Poly<T>],
) -> Result<Vec<RecurrencePair<T>>> {
    let top = polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let functional = SignedFunctional::for_degree(fp, top + 1);
    let mut out = Vec::with_capacity(polys.len());
    let mut prev_norm: Option<T> = None;
    for (index, p) in polys.iter().enumerate() {
        let norm = functional.inner(p, p)?;
        if norm.is_zero() {
            return Err(Error::NotQuasiDefinite(index));
        }
        let beta = functional.inner(&p.shift_up(1), p)? / &norm;
        let gamma = prev_norm.map(|prev| norm.clone() / prev);
        out.push(RecurrencePair { index, beta, gamma });
        prev_norm = Some(norm);
    }
    Ok(out)
}

/// Coefficients `c_k` with `p = sum c_k basis[k]`, for a monic basis with
/// `deg basis[k] = k`.
pub fn expand_in_basis<T: Scalar>(basis: &[Poly<T>], p: &Poly<T>) -> Result<Vec<T>> {
    for (k, b) in basis.iter().enumerate() {
        if b.degree() != Some(k) || !b.is_monic() {
            return Err(Error::Precondition(format!(
                "basis element {k} is not monic of degree {k}"
            )));
        }
    }
    let Some(d) = p.degree() else {
        return Ok(Vec::new());
    };
    if d >= basis.len() {
        return Err(Error::IndexRange(format!(
            "degree {d} exceeds basis of size {}",
            basis.len()
        )));
    }
    let zero = p.coeffs()[0].zero_like();
    let mut out = vec![zero.clone(); d + 1];
    let mut rest = p.clone();
    for k in (0..=d).rev() {
        let c = rest.coeff(k).cloned().unwrap_or_else(|| zero.clone());
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
        }
        out[k] = c;
    }
    Ok(out)
}

/// Checks that a polynomial `pi` of degree `n + r` with `<x^m, pi> = 0` for
/// all `m < n` expands over `p_n..=p_{n+r}` only.
///
/// Returns the expansion coefficients; fails with [`Error::Precondition`]
/// when `pi` does not satisfy the partial orthogonality conditions and with
/// [`Error::Certification`] when a lower coefficient survives.
pub fn partial_orthogonality_expansion<T: Scalar>(
    fp: &FamilyParams<T>,
    basis: &[Poly<T>],
    pi: &Poly<T>,
    n: usize,
) -> Result<Vec<T>> {
    let d = pi.degree().unwrap_or(0);
    let functional = SignedFunctional::for_degree(fp, d.max(n));
    for m in 0..n {
        if !functional.against_monomial(m, pi)?.is_zero() {
            return Err(Error::Precondition(format!("<x^{m}, pi> does not vanish")));
        }
    }
    let coeffs = expand_in_basis(basis, pi)?;
    if let Some(k) = coeffs.iter().take(n).position(|c| !c.is_zero()) {
        return Err(Error::Certification(format!(
            "coefficient of p_{k} is nonzero below index {n}"
        )));
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{p_poly_ttrr, ttrr_beta, ttrr_gamma};
    use crate::numerics::{MpFloat, Precision};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[(i64, i64)]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn fam(an: i64, ad: i64, qq: u32) -> FamilyParams<BigRational> {
        FamilyParams::new(q(an, ad), qq).unwrap()
    }

    #[test]
    fn base_moment_examples() {
        let t = base_moments(&q(0, 1), 2).unwrap();
        assert_eq!(t.relative_moments(), &[q(1, 1), q(1, 3)]);
        let t = base_moments(&q(1, 1), 4).unwrap();
        assert_eq!(t.moment(4).unwrap(), q(3, 35));
        assert_eq!(t.moment(3).unwrap(), q(0, 1));
        assert!(t.moment(6).is_err());
        assert!(base_moments(&q(-1, 1), 4).is_err());
    }

    #[test]
    fn signed_inner_examples() {
        let fp = fam(0, 1, 0);
        let one = poly(&[(1, 1)]);
        let x = poly(&[(0, 1), (1, 1)]);
        let p2 = poly(&[(-3, 5), (0, 1), (1, 1)]);
        let p1 = poly(&[(1, 1), (1, 1)]);
        assert_eq!(signed_inner(&fp, &one, &one).unwrap(), q(-1, 3));
        assert_eq!(signed_inner(&fp, &x, &p2).unwrap(), q(0, 1));
        assert_eq!(signed_inner(&fp, &one, &p1).unwrap(), q(0, 1));
        assert_eq!(signed_inner(&fp, &Poly::zero(), &p1).unwrap(), q(0, 1));
    }

    #[test]
    fn signed_moment_parity_rule() {
        let f = SignedFunctional::new(&fam(1, 2, 1), 6);
        let t = base_moments(&q(1, 2), 12).unwrap();
        for k in 0..=6 {
            let m = f.moment(k).unwrap().value;
            let expected = if k % 2 == 1 {
                t.moment(3 + k).unwrap()
            } else {
                -t.moment(4 + k).unwrap()
            };
            assert_eq!(m, expected);
        }
        assert!(f.moment(7).is_err());
    }

    #[test]
    fn verify_examples() {
        let fp = fam(0, 1, 0);
        let r = verify_orthogonality(&fp, &poly(&[(-3, 5), (0, 1), (1, 1)]), 2).unwrap();
        assert!(r.passed());
        assert_eq!(&r.values[..2], &[q(0, 1), q(0, 1)]);
        assert_ne!(r.values[2], q(0, 1));
        let r = verify_orthogonality(&fp, &poly(&[(1, 1)]), 0).unwrap();
        assert_eq!(r.values, vec![q(-1, 3)]);
        assert!(r.passed());
        let r = verify_orthogonality(&fp, &p_poly_ttrr(&fp, 3), 3).unwrap();
        assert!(r.passed());
        let wrong = poly(&[(-1, 2), (0, 1), (1, 1)]);
        assert_eq!(
            verify_orthogonality(&fp, &wrong, 2).unwrap().first_failure,
            Some(0)
        );
        assert!(verify_orthogonality(&fp, &wrong, 3).is_err());
    }

    #[test]
    fn oracle_examples() {
        let fp = fam(0, 1, 0);
        let gs = gram_schmidt_oracle(&fp, 2).unwrap();
        assert_eq!(
            gs,
            vec![
                poly(&[(1, 1)]),
                poly(&[(1, 1), (1, 1)]),
                poly(&[(-3, 5), (0, 1), (1, 1)])
            ]
        );
        assert_eq!(gram_schmidt_oracle(&fp, 0).unwrap(), vec![poly(&[(1, 1)])]);
        let gs = gram_schmidt_oracle(&fp, 4).unwrap();
        assert_eq!(gs[4], poly(&[(5, 21), (0, 1), (-10, 9), (0, 1), (1, 1)]));
    }

    #[test]
    fn oracle_matches_recurrence_and_recovers_coefficients() {
        for (an, ad, qq) in [(-1, 2, 0), (0, 1, 2), (3, 2, 1)] {
            let fp = fam(an, ad, qq);
            let gs = gram_schmidt_oracle(&fp, 8).unwrap();
            for (k, p) in gs.iter().enumerate() {
                assert_eq!(*p, p_poly_ttrr(&fp, k));
            }
            let rec = recovered_recurrence(&fp, &gs).unwrap();
            for row in &rec {
                assert_eq!(row.beta, ttrr_beta(&fp, row.index));
                if row.index > 0 {
                    assert_eq!(
                        row.gamma.clone().unwrap(),
                        ttrr_gamma(&fp, row.index).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn even_degree_beta_is_minus_one() {
        let fp = fam(1, 1, 2);
        for n in [0, 2, 4, 6] {
            let p = p_poly_ttrr(&fp, n);
            let xp = p.shift_up(1);
            assert_eq!(
                signed_inner(&fp, &xp, &p).unwrap(),
                -signed_inner(&fp, &p, &p).unwrap()
            );
        }
    }

    #[test]
    fn expansion_in_basis() {
        let fp = fam(0, 1, 0);
        let basis = gram_schmidt_oracle(&fp, 3).unwrap();
        let p = &(&basis[3].scale(&q(2, 1)) + &basis[1]) - &basis[0].scale(&q(1, 7));
        assert_eq!(
            expand_in_basis(&basis, &p).unwrap(),
            vec![q(-1, 7), q(1, 1), q(0, 1), q(2, 1)]
        );
        assert!(expand_in_basis(&basis[..2], &p).is_err());
    }

    #[test]
    fn partial_orthogonality_rejects_unprojected_input() {
        let fp = fam(0, 1, 0);
        let basis = gram_schmidt_oracle(&fp, 4).unwrap();
        let pi = poly(&[(1, 1), (0, 1), (0, 1), (0, 1), (1, 1)]);
        assert!(matches!(
            partial_orthogonality_expansion(&fp, &basis, &pi, 2),
            Err(Error::Precondition(_))
        ));
        let pi = &basis[4] - &basis[2].scale(&q(3, 1));
        let c = partial_orthogonality_expansion(&fp, &basis, &pi, 2).unwrap();
        assert_eq!(c, vec![q(0, 1), q(0, 1), q(-3, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn float_verification() {
        let prec = Precision(256);
        let fp = FamilyParams::new(MpFloat::from_rational(&q(3, 2), &prec), 2).unwrap();
        for n in 0..=12 {
            let r = verify_orthogonality(&fp, &p_poly_ttrr(&fp, n), n).unwrap();
            assert!(r.passed(), "n={n}: {:?}", r.first_failure);
        }
    }
}
