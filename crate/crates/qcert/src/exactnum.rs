//! Exact scalars: big rationals, rationals scaled by half-integer powers of
//! pi, Gamma at integer and half-integer arguments, and numbers of the form
//! a + b*sqrt(D).

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms by `num`.
pub type Q = BigRational;

pub fn q<T: Into<BigInt>>(v: T) -> Q {
    Q::from_integer(v.into())
}

/// `num / den` as a reduced rational. Panics on a zero denominator, which
/// in this crate always indicates a formula evaluated outside its range.
pub fn qr<T: Into<BigInt>>(num: T, den: T) -> Q {
    Q::new(num.into(), den.into())
}

/// Binomial coefficient with the convention C(m, r) = 0 for r < 0, m < 0 or r > m.
pub fn binom(m: i64, r: i64) -> BigInt {
    if m < 0 || r < 0 || r > m {
        return BigInt::zero();
    }
    let r = r.min(m - r);
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * BigInt::from(m - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn factorial(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// Decimal rendering of a rational with `digits` significant digits, for reports.
pub fn decimal(x: &Q, digits: usize) -> String {
    match x.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => format!("{:.*e}", digits.saturating_sub(1), v),
        Some(v) if v == 0.0 && x.is_zero() => "0".to_string(),
        _ => {
            // Outside f64 range: use the exponent of numerator/denominator.
            let sign = if x.is_negative() { "-" } else { "" };
            let num = x.numer().abs().to_string();
            let den = x.denom().to_string();
            let e = num.len() as i64 - den.len() as i64;
            format!("{sign}~1e{e}")
        }
    }
}

/// Serializes a rational as its exact `num/den` string.
pub fn serialize_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serializes a rational vector as exact strings.
pub fn serialize_q_vec<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// The value `coeff * pi^(h/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledRational {
    coeff: Q,
    h: u32,
}

impl ScaledRational {
    pub fn new(coeff: Q, h: u32) -> Self {
        let h = if coeff.is_zero() { 0 } else { h };
        ScaledRational { coeff, h }
    }

    pub fn zero() -> Self {
        ScaledRational { coeff: Q::zero(), h: 0 }
    }

    pub fn rational(coeff: Q) -> Self {
        ScaledRational::new(coeff, 0)
    }

    pub fn integer(v: i64) -> Self {
        ScaledRational::rational(q(v))
    }

    pub fn coeff(&self) -> &Q {
        &self.coeff
    }

    /// Power of sqrt(pi) carried by the value.
    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Sign of the value; pi^(h/2) is positive so only the coefficient matters.
    pub fn signum(&self) -> i8 {
        sign_of(&self.coeff)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.h != other.h {
            return Err(Error::Homogeneity { left: self.h, right: other.h });
        }
        Ok(ScaledRational::new(&self.coeff + &other.coeff, self.h))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Q) -> Self {
        ScaledRational::new(&self.coeff * c, self.h)
    }

    /// Division; the pi-power of the divisor must not exceed the dividend's.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return domain("division by zero");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let h = self.h.checked_sub(other.h).ok_or_else(|| {
            Error::Domain(format!("negative pi power: pi^({}/2) / pi^({}/2)", self.h, other.h))
        })?;
        Ok(ScaledRational::new(&self.coeff / &other.coeff, h))
    }

    /// Sum of an iterator, rejecting mixed pi-powers.
    pub fn sum<'a, I: IntoIterator<Item = &'a ScaledRational>>(items: I) -> Result<Self> {
        items.into_iter().try_fold(Self::zero(), |acc, x| acc.checked_add(x))
    }

    /// Rational linear combination `sum c_i x_i`.
    pub fn lincomb(terms: &[(Q, &ScaledRational)]) -> Result<Self> {
        terms
            .iter()
            .try_fold(Self::zero(), |acc, (c, x)| acc.checked_add(&x.scale(c)))
    }

    /// Same combination with integer coefficients.
    pub fn combine(terms: &[(i64, &ScaledRational)]) -> Result<Self> {
        terms
            .iter()
            .try_fold(Self::zero(), |acc, (c, x)| acc.checked_add(&x.scale(&q(*c))))
    }
}

impl fmt::Display for ScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.h {
            0 => write!(f, "{}", self.coeff),
            h => write!(f, "{}*pi^({}/2)", self.coeff, h),
        }
    }
}

impl Serialize for ScaledRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ScaledRational", 3)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("pi_half_power", &self.h)?;
        st.serialize_field("approx", &decimal(&self.coeff, 12))?;
        st.end()
    }
}

impl Neg for &ScaledRational {
    type Output = ScaledRational;
    fn neg(self) -> ScaledRational {
        ScaledRational::new(-&self.coeff, self.h)
    }
}

impl Neg for ScaledRational {
    type Output = ScaledRational;
    fn neg(self) -> ScaledRational {
        -&self
    }
}

impl Mul for &ScaledRational {
    type Output = ScaledRational;
    fn mul(self, rhs: &ScaledRational) -> ScaledRational {
        ScaledRational::new(&self.coeff * &rhs.coeff, self.h + rhs.h)
    }
}

impl Mul for ScaledRational {
    type Output = ScaledRational;
    fn mul(self, rhs: ScaledRational) -> ScaledRational {
        &self * &rhs
    }
}

impl Mul<&Q> for &ScaledRational {
    type Output = ScaledRational;
    fn mul(self, rhs: &Q) -> ScaledRational {
        self.scale(rhs)
    }
}

impl From<Q> for ScaledRational {
    fn from(c: Q) -> Self {
        ScaledRational::rational(c)
    }
}

pub fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact Gamma(two_x / 2) for a positive integer `two_x`.
///
/// Integers give (m-1)! with h = 0; half-integers m + 1/2 give
/// (2m)! / (4^m m!) * sqrt(pi), i.e. h = 1.
pub fn gamma_value(two_x: i64) -> Result<ScaledRational> {
    if two_x <= 0 {
        return domain(format!("Gamma needs a positive argument, got {two_x}/2"));
    }
    if two_x.is_even() {
        let m = (two_x / 2) as u64;
        return Ok(ScaledRational::rational(Q::from_integer(factorial(m - 1))));
    }
    let m = ((two_x - 1) / 2) as u64;
    let num = factorial(2 * m);
    let den = BigInt::from(4u32).pow(m as u32) * factorial(m);
    Ok(ScaledRational::new(Q::new(num, den), 1))
}

/// A number a + b*sqrt(D) with a fixed positive rational radicand D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Q,
    pub b: Q,
    d: Q,
}

impl QuadExt {
    pub fn new(a: Q, b: Q, d: Q) -> Result<Self> {
        if !d.is_positive() {
            return domain(format!("radicand must be positive, got {d}"));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn rational(a: Q, d: &Q) -> Result<Self> {
        QuadExt::new(a, Q::zero(), d.clone())
    }

    pub fn radicand(&self) -> &Q {
        &self.d
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.d != o.d {
            return domain(format!("mixing Q(sqrt({})) with Q(sqrt({}))", self.d, o.d));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        Ok(QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        Ok(QuadExt {
            a: &self.a * &o.a + &self.b * &o.b * &self.d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        QuadExt { a: &self.a * c, b: &self.b * c, d: self.d.clone() }
    }

    pub fn add_rational(&self, c: &Q) -> Self {
        QuadExt { a: &self.a + c, b: self.b.clone(), d: self.d.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// a^2 - b^2 D, the product with the conjugate.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    /// Exact sign by comparing a^2 with b^2 D; no approximation involved.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // Opposite signs: the term of larger magnitude wins.
        match sign_of(&self.norm()) {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

/// Sign of an arbitrary a + b sqrt(D), validating D.
pub fn quadext_sign(a: Q, b: Q, d: Q) -> Result<i8> {
    Ok(QuadExt::new(a, b, d)?.sign())
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadExt", 4)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("radicand", &self.d.to_string())?;
        st.serialize_field("approx", &format!("{:.12e}", self.to_f64()))?;
        st.end()
    }
}

/// Exactly symmetric, pi-homogeneous square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    entries: Vec<Vec<ScaledRational>>,
    h: u32,
}

impl SymMatrix {
    /// Validates symmetry (exact equality) and homogeneity.
    pub fn new(entries: Vec<Vec<ScaledRational>>) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 {
            return Err(Error::Input("empty matrix".into()));
        }
        let mut h = None;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Input(format!("row {i} has length {}, expected {dim}", row.len())));
            }
            for (j, x) in row.iter().enumerate() {
                if *x != entries[j][i] {
                    return Err(Error::Input(format!("asymmetric entries at ({i},{j})")));
                }
                if !x.is_zero() {
                    match h {
                        None => h = Some(x.h()),
                        Some(h0) if h0 != x.h() => {
                            return Err(Error::Homogeneity { left: h0, right: x.h() })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(SymMatrix { entries, h: h.unwrap_or(0) })
    }

    /// Symmetric matrix with rational (h = 0) entries.
    pub fn from_rational(rows: Vec<Vec<Q>>) -> Result<Self> {
        SymMatrix::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(ScaledRational::rational).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn get(&self, i: usize, j: usize) -> &ScaledRational {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ScaledRational>] {
        &self.entries
    }

    /// Rational parts; the common positive factor pi^(h/2) is dropped.
    pub fn rational_part(&self) -> Vec<Vec<Q>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.coeff().clone()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_value(6).unwrap(), ScaledRational::integer(2));
        assert_eq!(gamma_value(1).unwrap(), ScaledRational::new(q(1), 1));
        assert_eq!(gamma_value(3).unwrap(), ScaledRational::new(qr(1, 2), 1));
        assert!(gamma_value(0).is_err());
        assert!(gamma_value(-3).is_err());
    }

    #[test]
    fn scaled_add_examples() {
        let a = ScaledRational::new(qr(1, 2), 2);
        let b = ScaledRational::new(qr(1, 4), 2);
        assert_eq!(a.checked_add(&b).unwrap(), ScaledRational::new(qr(3, 4), 2));
        let one = ScaledRational::integer(1);
        assert_eq!(one.checked_add(&ScaledRational::zero()).unwrap(), one);
        let err = one.checked_add(&ScaledRational::new(q(1), 2)).unwrap_err();
        assert_eq!(err, Error::Homogeneity { left: 0, right: 2 });
    }

    #[test]
    fn canonical_zero_drops_pi_power() {
        let x = ScaledRational::new(q(3), 2);
        let z = x.checked_sub(&x).unwrap();
        assert_eq!(z.h(), 0);
        assert!(z.is_zero());
    }

    #[test]
    fn quadext_sign_examples() {
        assert_eq!(quadext_sign(q(1), q(0), q(2)).unwrap(), 1);
        assert_eq!(quadext_sign(q(-3), q(2), q(2)).unwrap(), -1);
        assert_eq!(quadext_sign(q(2), q(-1), q(4)).unwrap(), 0);
        assert!(quadext_sign(q(1), q(1), q(0)).is_err());
        assert!(quadext_sign(q(1), q(1), q(-2)).is_err());
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn sym_matrix_validation() {
        let ok = SymMatrix::from_rational(vec![vec![q(1), q(2)], vec![q(2), q(1)]]);
        assert!(ok.is_ok());
        let bad = SymMatrix::from_rational(vec![vec![q(1), q(2)], vec![q(3), q(1)]]);
        assert!(matches!(bad, Err(Error::Input(_))));
        let mixed = SymMatrix::new(vec![
            vec![ScaledRational::new(q(1), 2), ScaledRational::zero()],
            vec![ScaledRational::zero(), ScaledRational::integer(1)],
        ]);
        assert!(matches!(mixed, Err(Error::Homogeneity { .. })));
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| qr(a, b))
    }

    fn scaled() -> impl Strategy<Value = ScaledRational> {
        (small_q(), 0u32..4).prop_map(|(c, h)| ScaledRational::new(c, h))
    }

    proptest! {
        #[test]
        fn gamma_recurrence(two_x in 1i64..60) {
            // Gamma(x + 1) = x Gamma(x)
            let lhs = gamma_value(two_x + 2).unwrap();
            let rhs = gamma_value(two_x).unwrap().scale(&qr(two_x, 2));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiplication_commutes_and_adds_h(x in scaled(), y in scaled(), z in scaled()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            let p = &x * &y;
            if !p.is_zero() {
                prop_assert_eq!(p.h(), x.h() + y.h());
            }
        }

        #[test]
        fn zero_is_additive_identity(x in scaled()) {
            prop_assert_eq!(x.checked_add(&ScaledRational::zero()).unwrap(), x.clone());
            prop_assert_eq!(ScaledRational::zero().checked_add(&x).unwrap(), x);
        }

        #[test]
        fn quadext_norm_identity(a in small_q(), b in small_q(), d in (1i64..40, 1i64..7)) {
            let d = qr(d.0, d.1);
            let v = QuadExt::new(a.clone(), b.clone(), d.clone()).unwrap();
            let p = v.mul(&v.conj()).unwrap();
            prop_assert_eq!(p.a, &a * &a - &b * &b * &d);
            prop_assert!(p.b.is_zero());
        }

        #[test]
        fn quadext_sign_antisymmetric(a in small_q(), b in small_q(), d in 1i64..40) {
            let v = QuadExt::new(a, b, q(d)).unwrap();
            let s = v.sign() * v.neg().sign();
            prop_assert!(s == -1 || s == 0);
            prop_assert_eq!(s == 0, v.a.is_zero() && v.b.is_zero());
        }

        #[test]
        fn quadext_sign_matches_float(a in small_q(), b in small_q(), d in 1i64..40) {
            let v = QuadExt::new(a, b, q(d)).unwrap();
            let f = v.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(v.sign(), if f > 0.0 { 1 } else { -1 });
            }
        }
    }
}
