//! Exact classification of symmetric rational matrices.
//!
//! The primary path computes the characteristic polynomial by
//! Faddeev–LeVerrier, splits it into square-free factors (Yun) and counts
//! negative / zero / positive eigenvalues with Sturm sequences. Leading
//! principal minors are computed independently; the two paths must agree on
//! positive definiteness or classification fails with an internal
//! consistency error.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{q, serialize_q, serialize_q_vec, sign_of, SymMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    PositiveDefinite,
    PositiveSemidefiniteSingular,
    Indefinite,
    NegativeDefinite,
    NegativeSemidefiniteSingular,
}

impl Classification {
    pub fn from_counts(c: &SignCounts) -> Self {
        match (c.negative, c.zero, c.positive) {
            (0, 0, _) => Classification::PositiveDefinite,
            (0, _, _) => Classification::PositiveSemidefiniteSingular,
            (_, 0, 0) => Classification::NegativeDefinite,
            (_, _, 0) => Classification::NegativeSemidefiniteSingular,
            _ => Classification::Indefinite,
        }
    }
}

/// Eigenvalue sign counts, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignCounts {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// Evidence that a matrix is not positive definite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// First leading principal minor that is not positive (1-based order).
    Minor {
        index: usize,
        #[serde(serialize_with = "serialize_q")]
        value: Q,
    },
    /// An interval (lo, hi] with hi <= 0 containing exactly one distinct
    /// negative root of the characteristic polynomial.
    NegativeRoot {
        #[serde(serialize_with = "serialize_q")]
        lo: Q,
        #[serde(serialize_with = "serialize_q")]
        hi: Q,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinitenessVerdict {
    pub classification: Classification,
    pub eigen_sign_counts: SignCounts,
    /// Leading principal minors det(M[..k, ..k]) for k = 1..dim.
    #[serde(serialize_with = "serialize_q_vec")]
    pub minors: Vec<Q>,
    pub witnesses: Vec<Witness>,
}

impl DefinitenessVerdict {
    pub fn is_positive_definite(&self) -> bool {
        self.classification == Classification::PositiveDefinite
    }
}

/// Dense univariate polynomial over Q, coefficients in ascending degree,
/// without trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree -1 here.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn monic(&self) -> Poly {
        let l = self.lead();
        Poly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new((0..len).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let ld = d.lead();
        if r.len() < d.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &r[i + dd] / &ld;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            quo[i] = c;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Sign of p(x) as x -> +inf (`positive_end`) or -inf.
    fn sign_at_infinity(&self, positive_end: bool) -> i8 {
        let s = sign_of(&self.lead());
        if positive_end || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

/// det(xI - M) by Faddeev–LeVerrier: coefficients c_0..c_n ascending, monic.
pub fn characteristic_polynomial(m: &[Vec<Q>]) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    let mut mk: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let mut next = matmul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c_prev;
        }
        mk = next;
        let am = matmul(m, &mk);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).fold(Q::zero(), |a, b| a + b);
        coeffs[n - k] = -tr / q(k as i64);
    }
    Poly::new(coeffs)
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Yun's square-free decomposition: returns (f_i, i) with p = lead * prod f_i^i.
pub fn square_free_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let dp = p.derivative();
    let a0 = Poly::gcd(p, &dp);
    let mut b = p.divrem(&a0).0;
    let mut c = dp.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() >= 1 {
        let a = Poly::gcd(&b, &d);
        if a.degree() >= 1 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Sturm chain of a square-free polynomial.
pub fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    while !chain.last().expect("nonempty").is_zero() {
        let k = chain.len();
        let r = chain[k - 2].divrem(&chain[k - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(Poly::new(r.0.iter().map(|c| -c).collect()));
    }
    chain.retain(|p| !p.is_zero());
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn variations_at(chain: &[Poly], x: &Q) -> usize {
    variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

fn variations_at_infinity(chain: &[Poly], positive_end: bool) -> usize {
    variations(chain.iter().map(|p| p.sign_at_infinity(positive_end)))
}

/// Number of distinct roots of square-free `chain[0]` in (a, b], with
/// `None` standing for -inf / +inf.
fn count_roots(chain: &[Poly], a: Option<&Q>, b: Option<&Q>) -> usize {
    let va = a.map_or_else(|| variations_at_infinity(chain, false), |x| variations_at(chain, x));
    let vb = b.map_or_else(|| variations_at_infinity(chain, true), |x| variations_at(chain, x));
    va.saturating_sub(vb)
}

/// Cauchy bound: every root has |x| < 1 + max |c_i / c_n|.
fn cauchy_bound(p: &Poly) -> Q {
    let l = p.lead().abs();
    let m = p.0[..p.0.len() - 1].iter().map(|c| c.abs() / &l).fold(Q::zero(), |a, b| if b > a { b } else { a });
    m + Q::one()
}

/// Exact eigenvalue sign counts of a symmetric rational matrix, and the
/// square-free factor carrying a negative root, if any.
pub fn sign_counts(m: &[Vec<Q>]) -> Result<(SignCounts, Poly)> {
    let dim = m.len();
    let p = characteristic_polynomial(m);
    let zero = p.0.iter().take_while(|c| c.is_zero()).count();
    let p0 = Poly::new(p.0[zero..].to_vec());
    let mut counts = SignCounts { negative: 0, zero, positive: 0 };
    let mut neg_factor = Poly(vec![]);
    for (f, mult) in square_free_decomposition(&p0) {
        let chain = sturm_chain(&f);
        let z = Q::zero();
        let neg = count_roots(&chain, None, Some(&z));
        let pos = count_roots(&chain, Some(&z), None);
        if neg > 0 && neg_factor.is_zero() {
            neg_factor = f.clone();
        }
        counts.negative += neg * mult;
        counts.positive += pos * mult;
    }
    if counts.negative + counts.zero + counts.positive != dim {
        return Err(Error::Inconsistent(format!(
            "characteristic polynomial has non-real roots: counts {counts:?} for dimension {dim}"
        )));
    }
    Ok((counts, neg_factor))
}

/// Bisects (-B, 0] until it holds exactly one distinct root of `f`.
fn isolate_negative_root(f: &Poly) -> Option<(Q, Q)> {
    let chain = sturm_chain(f);
    let mut lo = -cauchy_bound(f);
    let mut hi = Q::zero();
    if f.eval(&hi).is_zero() {
        return None;
    }
    let half = Q::new(1.into(), 2.into());
    for _ in 0..4096 {
        let c = count_roots(&chain, Some(&lo), Some(&hi));
        if c == 0 {
            return None;
        }
        if c == 1 {
            return Some((lo, hi));
        }
        let mid = (&lo + &hi) * &half;
        if count_roots(&chain, Some(&mid), Some(&hi)) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Determinant by Gaussian elimination with row pivoting.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Leading principal minors, k = 1..dim.
pub fn leading_minors(m: &[Vec<Q>]) -> Vec<Q> {
    (1..=m.len())
        .map(|k| determinant(&m[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>()))
        .collect()
}

/// Classifies a symmetric rational matrix given as rows.
pub fn classify_rational(m: &[Vec<Q>]) -> Result<DefinitenessVerdict> {
    let dim = m.len();
    if dim == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    for i in 0..dim {
        if m[i].len() != dim {
            return Err(Error::Input(format!("row {i} has length {}, expected {dim}", m[i].len())));
        }
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::Input(format!("asymmetric entries at ({i},{j})")));
            }
        }
    }
    let (counts, neg_factor) = sign_counts(m)?;
    let classification = Classification::from_counts(&counts);
    let minors = leading_minors(m);
    let minors_pd = minors.iter().all(|x| x.is_positive());
    if minors_pd != (classification == Classification::PositiveDefinite) {
        return Err(Error::Inconsistent(format!(
            "Sturm counts {counts:?} disagree with leading-minor test (all positive: {minors_pd})"
        )));
    }
    let mut witnesses = Vec::new();
    if let Some((index, value)) = minors.iter().enumerate().find(|(_, x)| !x.is_positive()) {
        witnesses.push(Witness::Minor { index: index + 1, value: value.clone() });
    }
    if counts.negative > 0 {
        if let Some((lo, hi)) = isolate_negative_root(&neg_factor) {
            witnesses.push(Witness::NegativeRoot { lo, hi });
        }
    }
    Ok(DefinitenessVerdict { classification, eigen_sign_counts: counts, minors, witnesses })
}

/// Classifies a pi-homogeneous symmetric matrix; the common positive factor
/// pi^(h/2) does not affect definiteness and is dropped.
pub fn classify(m: &SymMatrix) -> Result<DefinitenessVerdict> {
    classify_rational(&m.rational_part())
}

/// Outcome of the floating-point cross-check.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum FloatSanity {
    Agree,
    /// The float eigensolve disagrees; the exact verdict stands but the run
    /// should be audited.
    Disagree(String),
    /// Some normalized eigenvalue is within 1e-6 of zero, or entries do not
    /// fit in f64 after normalization.
    Abstain(String),
}

impl FloatSanity {
    /// True unless the float path actively disagrees.
    pub fn is_consistent(&self) -> bool {
        !matches!(self, FloatSanity::Disagree(_))
    }
}

const FLOAT_TOLERANCE: f64 = 1e-6;

/// Compares the exact classification with a floating-point eigensolve of
/// the matrix normalized by its largest entry.
pub fn float_sanity(m: &SymMatrix) -> Result<FloatSanity> {
    let verdict = classify(m)?;
    Ok(float_sanity_against(&m.rational_part(), &verdict))
}

pub fn float_sanity_against(m: &[Vec<Q>], verdict: &DefinitenessVerdict) -> FloatSanity {
    let dim = m.len();
    let scale = m.iter().flatten().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a });
    if scale.is_zero() {
        return FloatSanity::Abstain("zero matrix".into());
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in m {
        for x in row {
            match (x / &scale).to_f64() {
                Some(v) if v.is_finite() => data.push(v),
                _ => return FloatSanity::Abstain("entry not representable after normalization".into()),
            }
        }
    }
    let eig = SymmetricEigen::new(DMatrix::from_row_slice(dim, dim, &data));
    if let Some(v) = eig.eigenvalues.iter().find(|v| v.abs() <= FLOAT_TOLERANCE) {
        return FloatSanity::Abstain(format!("normalized eigenvalue {v:e} below tolerance"));
    }
    let neg = eig.eigenvalues.iter().filter(|v| **v < 0.0).count();
    let pos = dim - neg;
    let c = verdict.eigen_sign_counts;
    if c.zero == 0 && c.negative == neg && c.positive == pos {
        FloatSanity::Agree
    } else {
        FloatSanity::Disagree(format!("float counts (neg {neg}, pos {pos}) vs exact {c:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{qr, ScaledRational};
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn diagonal_is_pd() {
        let v = classify_rational(&int_matrix(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(v.classification, Classification::PositiveDefinite);
        assert_eq!(v.eigen_sign_counts, SignCounts { negative: 0, zero: 0, positive: 2 });
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn indefinite_with_minor_witness() {
        let v = classify_rational(&int_matrix(&[&[1, 2], &[2, 1]])).unwrap();
        assert_eq!(v.classification, Classification::Indefinite);
        assert_eq!(v.eigen_sign_counts, SignCounts { negative: 1, zero: 0, positive: 1 });
        assert_eq!(v.witnesses[0], Witness::Minor { index: 2, value: q(-3) });
        // The negative eigenvalue is -1.
        match &v.witnesses[1] {
            Witness::NegativeRoot { lo, hi } => assert!(*lo < q(-1) && q(-1) <= *hi),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn zero_matrix_is_singular() {
        let v = classify_rational(&int_matrix(&[&[0]])).unwrap();
        assert_eq!(v.classification, Classification::PositiveSemidefiniteSingular);
        assert_eq!(v.eigen_sign_counts, SignCounts { negative: 0, zero: 1, positive: 0 });
    }

    #[test]
    fn repeated_eigenvalues_are_counted_with_multiplicity() {
        // Eigenvalues -2, -2, 1, 1, 0.
        let m = int_matrix(&[&[-2, 0, 0, 0, 0], &[0, -2, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 0]]);
        let v = classify_rational(&m).unwrap();
        assert_eq!(v.eigen_sign_counts, SignCounts { negative: 2, zero: 1, positive: 2 });
        let n = classify_rational(&int_matrix(&[&[-1, 0], &[0, -4]])).unwrap();
        assert_eq!(n.classification, Classification::NegativeDefinite);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        assert!(matches!(classify_rational(&int_matrix(&[&[1, 2], &[3, 1]])), Err(Error::Input(_))));
    }

    #[test]
    fn charpoly_of_two_by_two() {
        // [[1,2],[2,1]]: x^2 - 2x - 3
        let p = characteristic_polynomial(&int_matrix(&[&[1, 2], &[2, 1]]));
        assert_eq!(p, Poly(vec![q(-3), q(-2), q(1)]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^2 (x+2)^3
        let lin = |r: i64| Poly(vec![q(-r), q(1)]);
        let mul = |a: &Poly, b: &Poly| {
            let mut c = vec![Q::zero(); a.0.len() + b.0.len() - 1];
            for (i, x) in a.0.iter().enumerate() {
                for (j, y) in b.0.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            Poly::new(c)
        };
        let mut p = Poly(vec![q(1)]);
        for r in [1, 1, -2, -2, -2] {
            p = mul(&p, &lin(r));
        }
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(lin(1), 2), (lin(-2), 3)]);
    }

    #[test]
    fn float_sanity_examples() {
        let m = SymMatrix::new(vec![vec![ScaledRational::integer(320_000_000_000)]]).unwrap();
        assert_eq!(float_sanity(&m).unwrap(), FloatSanity::Agree);
        let near = SymMatrix::from_rational(vec![vec![q(1), q(1)], vec![q(1), q(1) + qr(1, 10_000_000_000i64)]]).unwrap();
        assert!(matches!(float_sanity(&near).unwrap(), FloatSanity::Abstain(_)));
    }

    fn small_matrix(dim: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
        proptest::collection::vec(-20i64..=20, dim * dim).prop_map(move |v| {
            let mut m = vec![vec![Q::zero(); dim]; dim];
            for i in 0..dim {
                for j in 0..=i {
                    m[i][j] = q(v[i * dim + j]);
                    m[j][i] = q(v[i * dim + j]);
                }
            }
            m
        })
    }

    fn gram(dim: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
        (1..=dim + 1).prop_flat_map(move |rows| {
            proptest::collection::vec(-5i64..=5, rows * dim).prop_map(move |g| {
                let mut m = vec![vec![Q::zero(); dim]; dim];
                for i in 0..dim {
                    for j in 0..dim {
                        m[i][j] = q((0..rows).map(|r| g[r * dim + i] * g[r * dim + j]).sum::<i64>());
                    }
                }
                m
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn positive_scaling_is_invariant(m in small_matrix(4), c in 1i64..1000) {
            let a = classify_rational(&m).unwrap();
            let scaled: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| x * qr(c, 7)).collect()).collect();
            let b = classify_rational(&scaled).unwrap();
            prop_assert_eq!(a.eigen_sign_counts, b.eigen_sign_counts);
        }

        #[test]
        fn permutation_preserves_inertia(m in small_matrix(4), rot in 0usize..4) {
            let perm: Vec<usize> = (0..4).map(|i| (i + rot) % 4).rev().collect();
            let pm: Vec<Vec<Q>> = perm.iter().map(|&i| perm.iter().map(|&j| m[i][j].clone()).collect()).collect();
            prop_assert_eq!(classify_rational(&m).unwrap().eigen_sign_counts, classify_rational(&pm).unwrap().eigen_sign_counts);
        }

        #[test]
        fn gram_matrices_are_never_indefinite(m in gram(5)) {
            let v = classify_rational(&m).unwrap();
            prop_assert!(matches!(v.classification,
                Classification::PositiveDefinite | Classification::PositiveSemidefiniteSingular));
        }

        #[test]
        fn counts_agree_with_float_eigensolve(m in small_matrix(5)) {
            let v = classify_rational(&m).unwrap();
            prop_assert!(float_sanity_against(&m, &v).is_consistent());
        }
    }
}
