//! A small computer-algebra kernel for radial functions
//! `sum c * r^i * (1+r^2)^(-a/2)` with exact moment integration.
//!
//! Everything the certification needs from radial calculus (bubble
//! profiles, shifted Laplacians, the integrands behind every radial
//! constant) is expressed in this class, which is closed under
//! sums, products and d/dr.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exactnum::{gamma_value, q, qr, ScaledRational, Q};

/// Exact value of the moment integral `int_0^inf r^i / (1+r^2)^(two_j/2) dr`.
///
/// Evaluated as (1/2) B((i+1)/2, j-(i+1)/2) through Gamma values; the
/// integral converges iff `i >= 0` and `i - two_j < -1`.
pub fn radial_integral(i: i64, two_j: i64) -> Result<ScaledRational> {
    if i < 0 || i - two_j >= -1 {
        return Err(Error::Convergence { i, two_j });
    }
    let num = &gamma_value(i + 1)? * &gamma_value(two_j - i - 1)?;
    Ok(num.checked_div(&gamma_value(two_j)?)?.scale(&qr(1, 2)))
}

/// `I_j^i` with integer exponent j, the form used throughout the formulas.
pub fn moment(j: i64, i: i64) -> Result<ScaledRational> {
    radial_integral(i, 2 * j)
}

/// Checks the two moment recurrences and their two corollaries at (n, l).
///
/// Every integral involved must converge; otherwise a convergence error
/// is returned.
pub fn check_moment_recurrences(n: i64, l: i64) -> Result<bool> {
    let base = moment(n, l)?;
    let prev_j = moment(n - 1, l)?;
    let next_l = moment(n, l + 2)?;
    let rec1 = base == prev_j.scale(&qr(2 * n - l - 3, 2 * n - 2));
    let rec2 = base == next_l.scale(&qr(2 * n - l - 3, l + 1));
    // Corollaries: shift l downward, and the (1 - r^2) weighted moment.
    let mut cor = true;
    if l >= 2 {
        let down = moment(n, l - 2)?;
        let down_prev = moment(n - 1, l - 2)?;
        cor &= base == down.scale(&qr(l - 1, 2 * n - l - 1));
        cor &= base == down_prev.scale(&qr(l - 1, 2 * n - 2));
    }
    let weighted = base.checked_sub(&next_l)?;
    cor &= weighted == base.scale(&qr(2 * n - 2 * l - 4, 2 * n - l - 3));
    Ok(rec1 && rec2 && cor)
}

/// Finite sum of terms `c * r^i * (1+r^2)^(-a/2)`, keyed by `(i, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadialExpr {
    terms: BTreeMap<(u32, i64), Q>,
}

impl RadialExpr {
    pub fn zero() -> Self {
        RadialExpr::default()
    }

    pub fn term(c: Q, i: u32, a: i64) -> Self {
        let mut e = RadialExpr::zero();
        e.push(i, a, c);
        e
    }

    pub fn constant(c: Q) -> Self {
        RadialExpr::term(c, 0, 0)
    }

    /// `(1+r^2)^(-a/2)`.
    pub fn x_power(a: i64) -> Self {
        RadialExpr::term(Q::one(), 0, a)
    }

    /// `r^i`.
    pub fn r_power(i: u32) -> Self {
        RadialExpr::term(Q::one(), i, 0)
    }

    fn push(&mut self, i: u32, a: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, a)).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, a));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &Q)> {
        self.terms.iter().map(|(&(i, a), c)| (i, a, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, a), c) in &o.terms {
            out.push(i, a, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = RadialExpr::zero();
        for (&(i, a), v) in &self.terms {
            out.push(i, a, v * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = RadialExpr::zero();
        for (&(i, a), v) in &self.terms {
            for (&(j, b), w) in &o.terms {
                out.push(i + j, a + b, v * w);
            }
        }
        out
    }

    /// d/dr, using d/dr (1+r^2)^(-a/2) = -a r (1+r^2)^(-(a+2)/2).
    pub fn derivative(&self) -> Self {
        let mut out = RadialExpr::zero();
        for (&(i, a), c) in &self.terms {
            if i > 0 {
                out.push(i - 1, a, c * q(i64::from(i)));
            }
            out.push(i + 1, a + 2, -(c * q(a)));
        }
        out
    }

    /// Multiplication by `r^p`; negative p requires every r-power to stay nonnegative.
    pub fn shift_r(&self, p: i64) -> Result<Self> {
        let mut out = RadialExpr::zero();
        for (&(i, a), c) in &self.terms {
            let ni = i64::from(i) + p;
            if ni < 0 {
                return domain(format!("r^{ni} term after shifting by r^{p}"));
            }
            out.push(ni as u32, a, c.clone());
        }
        Ok(out)
    }

    /// Division by r.
    pub fn div_r(&self) -> Result<Self> {
        self.shift_r(-1)
    }

    /// `f'' + (n - 1 + 2b) f' / r`: the radial part of the Laplacian of
    /// `f(|x|) p(x)` for a harmonic polynomial p of degree b.
    pub fn shifted_laplacian(&self, n: i64, b: i64) -> Result<Self> {
        let d1 = self.derivative();
        Ok(d1.derivative().add(&d1.div_r()?.scale(&q(n - 1 + 2 * b))))
    }

    /// The radial Laplacian in dimension n.
    pub fn laplacian(&self, n: i64) -> Result<Self> {
        self.shifted_laplacian(n, 0)
    }

    /// `u'' - u'/r`.
    pub fn hessian_gap(&self) -> Result<Self> {
        let d1 = self.derivative();
        Ok(d1.derivative().sub(&d1.div_r()?))
    }

    /// `(u'/r)'`.
    pub fn derivative_over_r_derivative(&self) -> Result<Self> {
        Ok(self.derivative().div_r()?.derivative())
    }

    /// `sum c * I^{i + extra}_{a/2}`: the integral of `r^extra * f` over (0, inf).
    ///
    /// Each term must converge and carry an integer (1+r^2) exponent.
    pub fn integrate(&self, extra_r_power: i64) -> Result<ScaledRational> {
        let mut total = ScaledRational::zero();
        for (&(i, a), c) in &self.terms {
            if a % 2 != 0 {
                return domain(format!("half-integer (1+r^2) exponent {a}/2 in an integrand"));
            }
            let v = radial_integral(i64::from(i) + extra_r_power, a)?;
            total = total.checked_add(&v.scale(c))?;
        }
        Ok(total)
    }

    /// Rewrites every even r-power through r^2 = (1+r^2) - 1 and returns the
    /// expression as `sum_a c_a (1+r^2)^(-a/2)`, keyed by a.
    pub fn to_x_powers(&self) -> Result<BTreeMap<i64, Q>> {
        let mut work: BTreeMap<(u32, i64), Q> = self.terms.clone();
        let mut out: BTreeMap<i64, Q> = BTreeMap::new();
        while let Some(((i, a), c)) = work.pop_last() {
            if i == 0 {
                *out.entry(a).or_insert_with(Q::zero) += c;
                continue;
            }
            if i % 2 != 0 {
                return domain(format!("odd r-power {i} cannot be written in (1+r^2) powers"));
            }
            for (key, v) in [((i - 2, a - 2), c.clone()), ((i - 2, a), -c)] {
                let slot = work.entry(key).or_insert_with(Q::zero);
                *slot += v;
                if slot.is_zero() {
                    work.remove(&key);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

/// The bubble profile `(1+r^2)^(-(n-order)/2)` of the order-`order` problem.
pub fn bubble(n: i64, order: i64) -> RadialExpr {
    RadialExpr::x_power(n - order)
}

/// `Z = r w' + (n - order)/2 * w` for the bubble of the given order.
pub fn bubble_z(n: i64, order: i64) -> Result<RadialExpr> {
    let w = bubble(n, order);
    Ok(w.derivative().shift_r(1)?.add(&w.scale(&qr(n - order, 2))))
}

/// Coefficients, keyed by the (1+r^2) exponent in half-units, of
/// `Delta_b^t (1+r^2)^(-two_a/2)` for t = 1, 2, 3, written with A = two_a
/// and B = n - A + 2b as in the closed-form Laplacian expansion.
pub fn newbasis_coefficients(two_a: i64, b: i64, n: i64, t: u32) -> BTreeMap<i64, Q> {
    let a = two_a;
    let bb = n - a + 2 * b;
    let p = |k: i64| (0..k).fold(1i128, |acc, s| acc * i128::from(a + 2 * s));
    let (b2, b4, b6) = (i128::from(bb - 2), i128::from(bb - 4), i128::from(bb - 6));
    let list: Vec<(i64, i128)> = match t {
        1 => vec![(a + 4, -p(2)), (a + 2, -p(1) * b2)],
        2 => vec![(a + 8, p(4)), (a + 6, p(3) * 2 * b4), (a + 4, p(2) * b2 * b4)],
        3 => vec![
            (a + 12, -p(6)),
            (a + 10, -p(5) * 3 * b6),
            (a + 8, -p(4) * b4 * 3 * b6),
            (a + 6, -p(3) * b2 * b4 * b6),
        ],
        _ => vec![],
    };
    list.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, q(c))).collect()
}

/// Compares `t` applications of the shifted Laplacian to `(1+r^2)^(-two_a/2)`
/// with the closed-form coefficient lists, for t = 1, 2, 3.
pub fn check_newbasis(two_a: i64, b: i64, n: i64) -> Result<bool> {
    let mut f = RadialExpr::x_power(two_a);
    for t in 1..=3 {
        f = f.shifted_laplacian(n, b)?;
        if f.to_x_powers()? != newbasis_coefficients(two_a, b, n, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integral_examples() {
        assert_eq!(radial_integral(1, 4).unwrap(), ScaledRational::rational(qr(1, 2)));
        assert_eq!(radial_integral(0, 2).unwrap(), ScaledRational::new(qr(1, 2), 2));
        assert_eq!(radial_integral(3, 6).unwrap(), ScaledRational::rational(qr(1, 4)));
        assert_eq!(radial_integral(1, 2).unwrap_err(), Error::Convergence { i: 1, two_j: 2 });
        assert!(radial_integral(-1, 10).is_err());
    }

    #[test]
    fn recurrence_examples() {
        assert!(check_moment_recurrences(3, 1).unwrap());
        assert!(check_moment_recurrences(4, 2).unwrap());
        assert!(matches!(check_moment_recurrences(2, 1), Err(Error::Convergence { .. })));
    }

    #[test]
    fn laplacian_examples() {
        assert!(RadialExpr::constant(q(1)).laplacian(5).unwrap().is_zero());
        let lap = RadialExpr::r_power(2).laplacian(3).unwrap();
        assert_eq!(lap, RadialExpr::constant(q(6)));
    }

    #[test]
    fn newbasis_first_display_with_constant_harmonic() {
        for two_a in 1..10 {
            let got = RadialExpr::x_power(two_a).laplacian(12).unwrap().to_x_powers().unwrap();
            assert_eq!(got, newbasis_coefficients(two_a, 0, 12, 1));
        }
    }

    #[test]
    fn integrate_examples() {
        // w^2 for the sixth-order bubble in n = 12, against r^5.
        let w = bubble(12, 6);
        let v = w.mul(&w).integrate(5).unwrap();
        assert_eq!(v, moment(6, 5).unwrap());
        assert!(RadialExpr::zero().integrate(3).unwrap().is_zero());
        // w w' = -(n-6) r (1+r^2)^(-(n-5)), against r^(n-6).
        let n = 12;
        let ww = w.mul(&w.derivative()).integrate(n - 6).unwrap();
        assert_eq!(ww, moment(n - 5, n - 5).unwrap().scale(&q(-(n - 6))));
    }

    #[test]
    fn half_integer_exponent_is_rejected() {
        assert!(matches!(bubble(13, 6).integrate(2), Err(Error::Domain(_))));
    }

    #[test]
    fn divergent_term_is_rejected_even_if_it_cancels() {
        let f = RadialExpr::term(q(1), 3, 2).sub(&RadialExpr::term(q(1), 3, 2));
        assert!(f.is_zero());
        // Nonzero divergent terms are refused.
        assert!(RadialExpr::term(q(1), 3, 2).integrate(0).is_err());
    }

    proptest! {
        #[test]
        fn fundamental_theorem(a in 3i64..30, m in 0u32..6, c in -5i64..5) {
            // d/dr (r^m X^{-a/2}) integrates to zero when both ends vanish.
            let f = RadialExpr::term(q(c), m + 1, 2 * a);
            if let Ok(v) = f.derivative().integrate(0) {
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in 0i64..12, b in 0i64..12, i in 0u32..5, j in 0u32..5) {
            let f = RadialExpr::term(q(2), i, a);
            let g = RadialExpr::term(qr(-3, 7), j, b);
            let lhs = f.mul(&g).derivative();
            let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn newbasis_grid(two_a in 1i64..25, b in 0i64..9, n in 8i64..31) {
            prop_assert!(check_newbasis(two_a, b, n).unwrap());
        }
    }
}
