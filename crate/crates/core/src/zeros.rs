//! Certified zeros of `P_n^{alpha,q}` and the checks built on them.
//!
//! Roots are isolated with exact Sturm chains. Known factors are removed
//! first: the root `-1` of odd degrees, and a root at `0`. The remaining
//! cofactor is even for this family, so it is rewritten as `Q(u)` with
//! `u = x^2`. Positive roots are then bisected in `x` with the chain of `Q`
//! evaluated at `x^2`, and negative roots are their exact mirror images.
//! Enclosures always have rational endpoints. Float backends rationalize
//! their (dyadic) coefficients first and certify the rounded polynomial.

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::families::{check_identity, p_poly_ttrr, FamilyParams, Identity, IdentityParams};
use crate::numerics::Scalar;
use crate::polynomials::Poly;
use crate::sturm::{Isolator, Variable};

pub use crate::sturm::{isolate_real_roots, sturm_count, Interval, SturmChain};

/// A root known from a factorization rather than from isolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralRoot {
    AtMinusOne,
    AtZero,
}

impl StructuralRoot {
    pub fn name(self) -> &'static str {
        match self {
            StructuralRoot::AtMinusOne => "at_minus_one",
            StructuralRoot::AtZero => "at_zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root<T> {
    pub enclosure: Interval,
    pub refined: T,
    pub structural: Option<StructuralRoot>,
}

/// The family member a root set was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSource<T> {
    pub params: FamilyParams<T>,
    pub n: usize,
}

/// Real roots of a polynomial, ascending, with disjoint enclosures.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<T> {
    pub degree: usize,
    pub roots: Vec<Root<T>>,
    pub tolerance: BigRational,
    pub source: Option<RootSource<T>>,
}

impl<T: Scalar> RootSet<T> {
    pub fn real_count(&self) -> usize {
        self.roots.len()
    }

    pub fn nonreal_count(&self) -> usize {
        self.degree - self.roots.len()
    }

    pub fn structural(&self) -> impl Iterator<Item = &Root<T>> {
        self.roots.iter().filter(|r| r.structural.is_some())
    }

    pub fn has_structural(&self, kind: StructuralRoot) -> bool {
        self.structural().any(|r| r.structural == Some(kind))
    }

    pub fn largest(&self) -> Option<&Root<T>> {
        self.roots.last()
    }

    /// Nonstructural roots come in pairs with exactly negated enclosures.
    pub fn is_symmetric(&self) -> bool {
        let inner: Vec<&Interval> = self
            .roots
            .iter()
            .filter(|r| r.structural.is_none())
            .map(|r| &r.enclosure)
            .collect();
        inner
            .iter()
            .zip(inner.iter().rev())
            .all(|(a, b)| **a == b.negated())
    }
}

fn bits_kept<T: Scalar>(like: &T) -> u32 {
    like.precision_bits().map_or(0, |b| b / 2)
}

/// Midpoint of the enclosure, then for float backends three Newton steps
/// on `c`, kept only if they stay inside the enclosure.
fn refine_value<T: Scalar>(c: &Poly<T>, dc: &Poly<T>, enc: &Interval, like: &T) -> T {
    let mid = like.lift_rational(&enc.midpoint());
    if T::EXACT || enc.lo == enc.hi {
        return mid;
    }
    let mut x = mid.clone();
    for _ in 0..3 {
        let slope = dc.eval(&x);
        if slope.is_zero() {
            return mid;
        }
        x = x.clone() - c.eval(&x) / slope;
    }
    match x.to_rational() {
        Some(r) if enc.contains(&r) => x,
        _ => mid,
    }
}

fn structural_root<T: Scalar>(value: i64, kind: StructuralRoot, like: &T) -> Root<T> {
    Root {
        enclosure: Interval::point(BigRational::from_integer(value.into())),
        refined: like.lift_i64(value),
        structural: Some(kind),
    }
}

/// All real roots of a squarefree polynomial with enclosures of width at
/// most `tol`.
///
/// A root at `-1` or `0` is split off as a structural root. An even
/// cofactor goes through the `u = x^2` substitution; anything else is
/// isolated on the whole line.
pub fn find_roots<T: Scalar>(p: &Poly<T>, tol: &BigRational) -> Result<RootSet<T>> {
    if !tol.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let degree = p
        .degree()
        .ok_or_else(|| Error::Precondition("the zero polynomial has no root set".to_string()))?;
    let like = p.coeffs()[0].clone();
    let mut roots = Vec::new();
    let mut cof = p.clone();

    if degree > 0 {
        if let Ok(deflated) = cof.deflate_root(&like.lift_i64(-1)) {
            roots.push(structural_root(-1, StructuralRoot::AtMinusOne, &like));
            cof = deflated;
            if cof.degree().unwrap_or(0) > 0
                && Zero::is_zero(
                    &cof.to_rational()?
                        .eval(&BigRational::from_integer((-1).into())),
                )
            {
                return Err(Error::NotSquarefree(1));
            }
        }
    }
    if cof.degree().unwrap_or(0) > 0 {
        let scale = cof.max_abs_coeff().expect("nonzero");
        if cof.coeffs()[0].negligible_against(&scale, bits_kept(&like)) {
            roots.push(structural_root(0, StructuralRoot::AtZero, &like));
            cof = Poly::new(cof.coeffs()[1..].to_vec());
            if cof.coeffs()[0].is_zero() {
                return Err(Error::NotSquarefree(1));
            }
        }
    }

    let dcof = cof.derivative();
    if cof.degree().unwrap_or(0) > 0 {
        match cof.even_part_in_u() {
            Ok(q_u) => {
                let q_rat = q_u.to_rational()?;
                let chain = SturmChain::new(&q_rat)?;
                let bound = chain.cauchy_bound();
                let positive = Isolator::new(&chain, Variable::Square).isolate(
                    BigRational::zero(),
                    bound,
                    tol,
                );
                for enc in &positive {
                    let value = refine_value(&cof, &dcof, enc, &like);
                    roots.push(Root {
                        enclosure: enc.negated(),
                        refined: -value.clone(),
                        structural: None,
                    });
                    roots.push(Root {
                        enclosure: enc.clone(),
                        refined: value,
                        structural: None,
                    });
                }
            }
            Err(Error::NotEven { .. }) => {
                let c_rat = cof.to_rational()?;
                let chain = SturmChain::new(&c_rat)?;
                let bound = chain.cauchy_bound();
                for enc in Isolator::new(&chain, Variable::X).isolate(-bound.clone(), bound, tol) {
                    let value = refine_value(&cof, &dcof, &enc, &like);
                    roots.push(Root {
                        enclosure: enc,
                        refined: value,
                        structural: None,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    roots.sort_by(|a, b| a.enclosure.lo.cmp(&b.enclosure.lo));
    Ok(RootSet {
        degree,
        roots,
        tolerance: tol.clone(),
        source: None,
    })
}

/// Certified zeros of `P_n^{alpha,q}`.
///
/// Fails with [`Error::Certification`] when the family's zero theorems do
/// not hold: fewer than `n` real roots, a nonstructural root outside
/// `(-1, 1)`, or a missing root at `-1` for odd `n`. A root whose
/// enclosure touches `+-1` also counts as outside.
pub fn find_zeros<T: Scalar>(
    fp: &FamilyParams<T>,
    n: usize,
    tol: &BigRational,
) -> Result<RootSet<T>> {
    let p = p_poly_ttrr(fp, n);
    let mut rs = find_roots(&p, tol)?;
    rs.source = Some(RootSource {
        params: fp.clone(),
        n,
    });
    if n % 2 == 1 && !rs.has_structural(StructuralRoot::AtMinusOne) {
        return Err(Error::Certification(format!(
            "P_{n} ({fp}) does not vanish at -1"
        )));
    }
    if rs.real_count() != n {
        return Err(Error::Certification(format!(
            "P_{n} ({fp}) has {} real roots",
            rs.real_count()
        )));
    }
    let one = BigRational::from_integer(1.into());
    if let Some(r) = rs
        .roots
        .iter()
        .find(|r| r.structural.is_none() && (r.enclosure.hi >= one || r.enclosure.lo <= -&one))
    {
        return Err(Error::Certification(format!(
            "P_{n} ({fp}) has a root in {} outside (-1, 1)",
            r.enclosure
        )));
    }
    Ok(rs)
}

/// Outcome of [`check_interlacing`]. The witness is a pair of consecutive
/// roots of the higher-degree set with no root of the lower one between.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport<T> {
    pub interlaces: bool,
    pub witness: Option<(Root<T>, Root<T>)>,
}

/// Whether each gap between consecutive roots of `hi` holds exactly one
/// root of `lo`. `hi` must come from a polynomial of one degree more.
pub fn check_interlacing<T: Scalar>(
    lo: &RootSet<T>,
    hi: &RootSet<T>,
) -> Result<InterlacingReport<T>> {
    if hi.degree != lo.degree + 1 {
        return Err(Error::Precondition(format!(
            "degrees {} and {} do not differ by one",
            lo.degree, hi.degree
        )));
    }
    if lo.nonreal_count() > 0 || hi.nonreal_count() > 0 {
        return Err(Error::Precondition(
            "interlacing needs fully real root sets".to_string(),
        ));
    }
    for a in &lo.roots {
        if let Some(b) = hi.roots.iter().find(|b| a.enclosure.overlaps(&b.enclosure)) {
            return Err(Error::Certification(format!(
                "enclosures {} and {} overlap",
                a.enclosure, b.enclosure
            )));
        }
    }
    let gaps = hi.roots.len().saturating_sub(1);
    let mut counts = vec![0usize; gaps];
    for a in &lo.roots {
        let below = hi
            .roots
            .iter()
            .filter(|b| b.enclosure.hi < a.enclosure.lo)
            .count();
        if (1..=gaps).contains(&below) {
            counts[below - 1] += 1;
        }
    }
    let interlaces = counts.iter().all(|&c| c == 1);
    if interlaces {
        return Ok(InterlacingReport {
            interlaces,
            witness: None,
        });
    }
    let zero = BigRational::zero();
    let straddles =
        |i: usize| hi.roots[i].enclosure.hi < zero && hi.roots[i + 1].enclosure.lo > zero;
    let gap = (0..gaps)
        .find(|&i| counts[i] == 0 && straddles(i))
        .or_else(|| (0..gaps).find(|&i| counts[i] == 0))
        .or_else(|| (0..gaps).find(|&i| counts[i] != 1));
    Ok(InterlacingReport {
        interlaces,
        witness: gap.map(|i| (hi.roots[i].clone(), hi.roots[i + 1].clone())),
    })
}

/// The largest zero of `P_{2n-2k}^{alpha+k,q+k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLink<T> {
    pub k: usize,
    pub degree: usize,
    pub params: FamilyParams<T>,
    pub root: Root<T>,
}

/// Largest zeros `x_{2n-2k,2n-2k}^{alpha+k,q+k}` for `k = 0..n`, certified
/// strictly decreasing in `k` by disjoint enclosures.
pub fn largest_zero_chain<T: Scalar>(
    alpha: &T,
    q: u32,
    n: usize,
    tol: &BigRational,
) -> Result<Vec<ChainLink<T>>> {
    if n == 0 {
        return Err(Error::Precondition("the chain needs n >= 1".to_string()));
    }
    let base = FamilyParams::new(alpha.clone(), q)?;
    let mut links: Vec<ChainLink<T>> = Vec::with_capacity(n);
    for k in 0..n {
        let params = base.shifted(k as u32, k as u32);
        let degree = 2 * n - 2 * k;
        let rs = find_zeros(&params, degree, tol)?;
        let root = rs.largest().cloned().expect("degree >= 2");
        if let Some(prev) = links.last() {
            if prev.root.enclosure.lo <= root.enclosure.hi {
                return Err(Error::Certification(format!(
                    "largest zero at k={k} ({}) is not below k={} ({})",
                    root.enclosure,
                    k - 1,
                    prev.root.enclosure
                )));
            }
        }
        links.push(ChainLink {
            k,
            degree,
            params,
            root,
        });
    }
    Ok(links)
}

/// Root-by-root comparison of `P_{2n+1}^{alpha+k,q+l}` with
/// `{-1} + zeros(P_{2n}^{alpha+k+1,q+l})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMapReport<T> {
    pub odd: RootSet<T>,
    pub even: RootSet<T>,
    /// Whether `P_{2n+1} - (1+x) P_{2n}` vanishes identically. Only
    /// meaningful for exact backends; `None` otherwise.
    pub identity_exact: Option<bool>,
    pub max_deviation: BigRational,
}

pub fn odd_even_zero_map<T: Scalar>(
    alpha: &T,
    q: u32,
    n: usize,
    k: u32,
    l: u32,
    tol: &BigRational,
) -> Result<ZeroMapReport<T>> {
    let odd_params = FamilyParams::new(alpha.clone(), q)?.shifted(k, l);
    let even_params = odd_params.shifted(1, 0);
    let odd = find_zeros(&odd_params, 2 * n + 1, tol)?;
    let even = find_zeros(&even_params, 2 * n, tol)?;
    if odd.roots.first().and_then(|r| r.structural) != Some(StructuralRoot::AtMinusOne) {
        return Err(Error::Certification(format!(
            "smallest zero of P_{} ({odd_params}) is not -1",
            2 * n + 1
        )));
    }
    let mut max_deviation = BigRational::zero();
    for (a, b) in odd.roots[1..].iter().zip(&even.roots) {
        let ra = a.refined.to_rational();
        let rb = b.refined.to_rational();
        let dev = match (ra, rb) {
            (Some(ra), Some(rb)) => Signed::abs(&(ra - rb)),
            _ => {
                return Err(Error::Certification("non-finite refined zero".to_string()));
            }
        };
        if T::EXACT && a.enclosure != b.enclosure {
            return Err(Error::Certification(format!(
                "enclosures {} and {} differ",
                a.enclosure, b.enclosure
            )));
        }
        if dev > max_deviation {
            max_deviation = dev;
        }
    }
    if max_deviation > *tol {
        return Err(Error::Certification(format!(
            "zeros differ by {max_deviation}, above tolerance {tol}"
        )));
    }
    let identity_exact = if T::EXACT {
        let residual = check_identity(
            Identity::P2np1P2n,
            &IdentityParams::Family(odd_params.clone()),
            n,
        )?;
        if !residual.is_zero() {
            return Err(Error::Certification(format!(
                "P_{} - (1+x) P_{} does not vanish for {odd_params}",
                2 * n + 1,
                2 * n
            )));
        }
        Some(true)
    } else {
        None
    };
    Ok(ZeroMapReport {
        odd,
        even,
        identity_exact,
        max_deviation,
    })
}

/// One gap between consecutive positive zeros of `P_n` and the number of
/// zeros of `P_{n-2}^{alpha+1,q+1}` strictly inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub left: Interval,
    pub right: Interval,
    pub count: usize,
}

/// Checks that each gap between consecutive positive zeros of
/// `P_n^{alpha,q}` (even `n >= 2`) holds exactly one zero of
/// `P_{n-2}^{alpha+1,q+1}`.
pub fn critical_point_check<T: Scalar>(
    fp: &FamilyParams<T>,
    n: usize,
    tol: &BigRational,
) -> Result<Vec<Gap>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "the critical point check needs an even n >= 2, got {n}"
        )));
    }
    let rs = find_zeros(fp, n, tol)?;
    let inner = p_poly_ttrr(&fp.shifted(1, 1), n - 2).to_rational()?;
    let chain = SturmChain::new(&inner)?;
    let positive: Vec<&Root<T>> = rs
        .roots
        .iter()
        .filter(|r| r.enclosure.lo > BigRational::zero())
        .collect();
    let mut gaps = Vec::new();
    for pair in positive.windows(2) {
        let (left, right) = (&pair[0].enclosure, &pair[1].enclosure);
        let at_edge = usize::from(chain.sign(&left.hi) == Sign::NoSign);
        let narrow = chain.count(&left.hi, &right.lo) + at_edge;
        let wide = chain.count(&left.lo, &right.hi);
        if narrow != wide {
            return Err(Error::Certification(format!(
                "a zero of P_{} sits inside enclosure {left} or {right}",
                n - 2
            )));
        }
        if narrow != 1 {
            return Err(Error::Certification(format!(
                "gap between {left} and {right} holds {narrow} zeros of P_{}",
                n - 2
            )));
        }
        gaps.push(Gap {
            left: left.clone(),
            right: right.clone(),
            count: narrow,
        });
    }
    Ok(gaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{default_refine_tolerance, MpFloat, Precision};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[(i64, i64)]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn fam(an: i64, ad: i64, qq: u32) -> FamilyParams<BigRational> {
        FamilyParams::new(q(an, ad), qq).unwrap()
    }

    fn values(rs: &RootSet<BigRational>) -> Vec<f64> {
        rs.roots.iter().map(|r| r.refined.to_f64()).collect()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < eps)
    }

    #[test]
    fn zero_examples() {
        let tol = default_refine_tolerance();
        let fp = fam(0, 1, 0);
        let rs = find_zeros(&fp, 2, &tol).unwrap();
        let s = (0.6f64).sqrt();
        assert!(close(&values(&rs), &[-s, s], 1e-12));
        let rs = find_zeros(&fp, 3, &tol).unwrap();
        let s = (3.0f64 / 7.0).sqrt();
        assert!(close(&values(&rs), &[-1.0, -s, s], 1e-12));
        assert_eq!(rs.roots[0].structural, Some(StructuralRoot::AtMinusOne));
        assert_eq!(rs.roots[0].enclosure, Interval::point(q(-1, 1)));
        let rs = find_zeros(&fp, 4, &tol).unwrap();
        assert!(close(
            &values(&rs),
            &[-0.906_18, -0.538_47, 0.538_47, 0.906_18],
            1e-5
        ));
        assert!(rs.is_symmetric());
        assert!(rs.roots.iter().all(|r| r.enclosure.width() <= tol));
        assert!(find_zeros(&fp, 0, &tol).unwrap().roots.is_empty());
    }

    #[test]
    fn enclosure_endpoints_bracket_a_sign_change() {
        let tol = q(1, 1 << 30);
        let fp = fam(1, 2, 2);
        let p = p_poly_ttrr(&fp, 7);
        for r in find_zeros(&fp, 7, &tol).unwrap().roots {
            if r.structural.is_none() {
                let a = p.eval(&r.enclosure.lo);
                let b = p.eval(&r.enclosure.hi);
                assert!(a * b < q(0, 1));
                assert!(r.enclosure.contains(&r.refined));
            }
        }
    }

    #[test]
    fn general_polynomials() {
        let tol = q(1, 1 << 20);
        let cubic = poly(&[(0, 1), (-3, 4), (0, 1), (1, 1)]);
        let rs = find_roots(&cubic, &tol).unwrap();
        assert_eq!(rs.real_count(), 3);
        assert!(rs.has_structural(StructuralRoot::AtZero));
        // (x - 1/3)(x - 2)(x + 5): nothing even, nothing structural
        let p = &(&Poly::linear_root(&q(1, 3)) * &Poly::linear_root(&q(2, 1)))
            * &Poly::linear_root(&q(-5, 1));
        let rs = find_roots(&p, &tol).unwrap();
        assert_eq!(rs.real_count(), 3);
        assert!(rs.roots[0].enclosure.contains(&q(-5, 1)));
        let rs = find_roots(&poly(&[(1, 1), (0, 1), (1, 1)]), &tol).unwrap();
        assert_eq!(rs.nonreal_count(), 2);
        let double_zero = poly(&[(0, 1), (0, 1), (1, 1)]);
        assert!(matches!(
            find_roots(&double_zero, &tol),
            Err(Error::NotSquarefree(_))
        ));
        let double_minus_one = poly(&[(1, 1), (2, 1), (1, 1)]);
        assert!(matches!(
            find_roots(&double_minus_one, &tol),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn interlacing_examples() {
        let tol = default_refine_tolerance();
        let fp = fam(0, 1, 0);
        let p2 = find_zeros(&fp, 2, &tol).unwrap();
        let p3 = find_zeros(&fp, 3, &tol).unwrap();
        let report = check_interlacing(&p2, &p3).unwrap();
        assert!(!report.interlaces);
        let (a, b) = report.witness.unwrap();
        let s = (3.0f64 / 7.0).sqrt();
        assert!((a.refined.to_f64() + s).abs() < 1e-12 && (b.refined.to_f64() - s).abs() < 1e-12);

        let lo = find_roots(&poly(&[(-1, 2), (0, 1), (1, 1)]), &tol).unwrap();
        let hi = find_roots(&poly(&[(0, 1), (-3, 4), (0, 1), (1, 1)]), &tol).unwrap();
        let report = check_interlacing(&lo, &hi).unwrap();
        assert!(report.interlaces);
        assert!(report.witness.is_none());
        assert!(check_interlacing(&p2, &p2).is_err());
    }

    #[test]
    fn chain_examples() {
        let tol = default_refine_tolerance();
        let links = largest_zero_chain(&q(0, 1), 0, 2, &tol).unwrap();
        assert_eq!(links.len(), 2);
        assert!((links[0].root.refined.to_f64() - 0.906_18).abs() < 1e-5);
        assert!((links[1].root.refined.to_f64() - (5.0f64 / 9.0).sqrt()).abs() < 1e-12);
        assert_eq!(largest_zero_chain(&q(1, 2), 0, 2, &tol).unwrap().len(), 2);
        assert_eq!(largest_zero_chain(&q(0, 1), 0, 1, &tol).unwrap().len(), 1);
        assert!(largest_zero_chain(&q(0, 1), 0, 0, &tol).is_err());
    }

    #[test]
    fn zero_map_examples() {
        let tol = default_refine_tolerance();
        let r = odd_even_zero_map(&q(0, 1), 0, 1, 0, 0, &tol).unwrap();
        assert_eq!(r.identity_exact, Some(true));
        assert!(Zero::is_zero(&r.max_deviation));
        assert_eq!(r.odd.roots.len(), 3);
        for n in 0..4 {
            odd_even_zero_map(&q(1, 2), 1, n, 1, 1, &tol).unwrap();
        }
    }

    #[test]
    fn critical_point_examples() {
        let tol = default_refine_tolerance();
        let gaps = critical_point_check(&fam(0, 1, 0), 4, &tol).unwrap();
        assert_eq!(gaps.len(), 1);
        let s = q(2_236, 3_000); // ~ sqrt(5/9) = 0.745356
        assert!(gaps[0].left.hi < s && s < gaps[0].right.lo);
        assert!(critical_point_check(&fam(0, 1, 0), 2, &tol)
            .unwrap()
            .is_empty());
        assert_eq!(
            critical_point_check(&fam(1, 2, 1), 6, &tol).unwrap().len(),
            2
        );
        assert!(critical_point_check(&fam(0, 1, 0), 3, &tol).is_err());
    }

    #[test]
    fn float_mode_matches_exact_mode() {
        let tol = default_refine_tolerance();
        let prec = Precision(128);
        let fpf = FamilyParams::new(MpFloat::from_rational(&q(3, 2), &prec), 1).unwrap();
        let fpe = fam(3, 2, 1);
        for n in 1..=10 {
            let rf = find_zeros(&fpf, n, &tol).unwrap();
            let re = find_zeros(&fpe, n, &tol).unwrap();
            assert_eq!(rf.real_count(), n);
            for (a, b) in rf.roots.iter().zip(&re.roots) {
                let d = Signed::abs(&(a.refined.to_rational().unwrap() - &b.refined));
                assert!(d <= q(1, 1 << 50), "n={n}: {d}");
                assert!(a.enclosure.contains(&a.refined.to_rational().unwrap()));
            }
        }
    }
}
