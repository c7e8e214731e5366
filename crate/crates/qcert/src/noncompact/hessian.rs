//! Translation-direction Hessian: the constants c^I, c^II, c^III, the
//! m^IV bracket, the six 5x5 coefficient matrices and the two scalar sums.

use crate::error::Result;
use crate::exactnum::{gamma_value, q, qr, QuadExt, ScaledRational, Q};
use crate::pohozaev6::cbar;
use crate::radial::{bubble, moment, RadialExpr};

use super::{common_h, compute_a0, Quadratic};

type SR = ScaledRational;

/// sum of c * I_j^i over (c, j, i).
fn moments(terms: &[(i64, i64, i64)]) -> Result<SR> {
    terms.iter().try_fold(SR::zero(), |acc, &(c, j, i)| acc.checked_add(&moment(j, i)?.scale(&q(c))))
}

/// c^I_1..c^I_6 at total degree `sum`.
pub fn c_one(n: i64, sum: i64) -> Result<[SR; 6]> {
    let a = q((n - 6).pow(2) * (n - 4));
    let p = n + sum;
    Ok([
        moments(&[(n * n - 8, n - 1, p - 1), (4 * (n - 3), n - 1, p + 1)])?.scale(&(q(2) * &a)),
        moments(&[(n * (n + 2), n - 1, p - 3), (8 * (n + 1), n - 1, p - 1), (16, n - 1, p + 1)])?.scale(&-&a),
        moments(&[(n + 2, n - 2, p - 3), (4, n - 2, p - 1)])?.scale(&(q(-2) * &a)),
        moment(n - 3, p - 3)?.scale(&-&a),
        moment(n - 4, p - 5)?.scale(&q((n - 6).pow(2))),
        moment(n - 5, p - 7)?.scale(&q(-(n - 6))),
    ])
}

/// c^II_1..c^II_6 at total degree `sum`.
pub fn c_two(n: i64, sum: i64) -> Result<[SR; 6]> {
    let p = n + sum;
    let (n6, n4) = (n - 6, n - 4);
    Ok([
        moments(&[(n + 4, n, p + 1), (4, n, p + 3)])?.scale(&q(-2 * n6 * n6 * n4 * n4 * (n - 2))),
        moments(&[(n * (n + 4), n, p - 1), (8 * (n + 2), n, p + 1), (16, n, p + 3)])?
            .scale(&q(n6 * n6 * n4 * (n - 2))),
        moments(&[(n * n - 8, n - 1, p - 1), (4 * (n - 3), n - 1, p + 1)])?.scale(&q(2 * n6 * n6 * n4)),
        moment(n - 2, p - 1)?.scale(&q(n6 * n6 * n4 * n4)),
        moment(n - 3, p - 3)?.scale(&q(-n6 * n6 * n4)),
        moment(n - 4, p - 5)?.scale(&q(n6 * n4)),
    ])
}

/// c^III_1..c^III_8 at total degree `sum`.
pub fn c_three(n: i64, sum: i64) -> Result<[SR; 8]> {
    let p = n + sum;
    let (n6, n4) = (n - 6, n - 4);
    let [_, _, e3, e4, e5, _] = c_two(n, sum)?;
    let tail = moment(n - 4, p - 5)?.scale(&q(n6 * n6));
    Ok([
        moments(&[(n + 4, n, p + 1), (4, n, p + 3)])?.scale(&q(-n6 * n6 * n4 * n4 * (n - 2))),
        moments(&[((n + 2) * (n + 2), n, p - 1), (8 * (n + 2), n, p + 1), (16, n, p + 3)])?
            .scale(&q(n6 * n6 * n4 * n4)),
        e3,
        e4,
        e5,
        tail.clone(),
        moments(&[(n + 2, n - 2, p - 3), (4, n - 2, p - 1)])?.scale(&q(-2 * n6 * n6 * n4)),
        tail,
    ])
}

/// The m^IV radial bracket at total degree `sum`.
pub fn m_four(n: i64, sum: i64) -> Result<SR> {
    let p = n + sum;
    Ok(moments(&[
        (3 * n.pow(3) + 8 * n * n - 20 * n - 48, n, p - 1),
        (16 * (n * n - 8), n, p + 1),
        (32 * (n - 3), n, p + 3),
    ])?
    .scale(&qr((n - 6).pow(2) * (n - 4), 4 * n * (n + 2))))
}

/// The Hessian constants recomputed from their integrand definitions.
pub struct HessianOracles {
    pub one: [SR; 6],
    pub two: [SR; 6],
    pub three: [SR; 8],
    pub four: SR,
}

pub fn hessian_oracles(n: i64, sum: i64) -> Result<HessianOracles> {
    let w = bubble(n, 6);
    let lw = w.laplacian(n)?;
    let llw = lw.laplacian(n)?;
    let wd = w.derivative();
    let lwd = lw.derivative();
    let wr = w.derivative_over_r_derivative()?;
    let lwr = lw.derivative_over_r_derivative()?;
    let d2w = w.hessian_gap()?;
    let d2lw = lw.hessian_gap()?;
    let p = n + sum;
    let two = q(2);
    let int = |e: RadialExpr, extra: i64| e.integrate(extra);
    let one = [
        int(lwd.mul(&wr).add(&wd.mul(&lwr)), p - 3)?,
        int(lwd.mul(&lw), p - 4)?,
        int(lwd.mul(&wd), p - 5)?.scale(&two),
        int(wd.mul(&wr), p - 5)?,
        int(wd.mul(&wd), p - 7)?,
        int(wd.mul(&w), p - 8)?,
    ];
    let two_ = [
        int(d2lw.mul(&wr).add(&d2w.mul(&lwr)), p - 2)?,
        int(d2lw.mul(&lw), p - 3)?,
        int(d2lw.mul(&wd).add(&d2w.mul(&lwd)), p - 4)?,
        int(d2w.mul(&wr), p - 4)?,
        int(d2w.mul(&wd), p - 6)?,
        int(d2w.mul(&w), p - 7)?,
    ];
    let three = [
        int(d2lw.mul(&d2w), p - 3)?,
        int(lwd.mul(&lwd), p - 3)?,
        int(d2lw.mul(&wd).add(&d2w.mul(&lwd)), p - 4)?,
        int(d2w.mul(&d2w), p - 5)?,
        int(d2w.mul(&wd), p - 6)?,
        int(wd.mul(&wd), p - 7)?,
        int(lwd.mul(&wd), p - 5)?.scale(&two),
        int(wd.mul(&wd), p - 7)?,
    ];
    let four = int(llw.derivative().mul(&wd).scale(&two).add(&lwd.mul(&lwd)), p - 3)?
        .scale(&qr(1, 4 * n * (n + 2)));
    Ok(HessianOracles { one, two: two_, three, four })
}

/// True iff every closed-form Hessian constant equals its oracle.
pub fn hessian_constants_agree(n: i64, sum: i64) -> Result<bool> {
    let o = hessian_oracles(n, sum)?;
    Ok(c_one(n, sum)? == o.one && c_two(n, sum)? == o.two && c_three(n, sum)? == o.three && m_four(n, sum)? == o.four)
}

fn lc(terms: &[(Q, &SR)]) -> Result<SR> {
    SR::lincomb(terms)
}

/// c-bar^I_1..7 (index 0 unused).
fn cbar_one(n: i64, k: i64, m: i64) -> Result<Vec<SR>> {
    let b = cbar(n, k, m, &c_one(n, k + m)?)?;
    let mut out = vec![SR::zero()];
    out.extend(b[..7].iter().map(|x| -x));
    Ok(out)
}

/// c-bar^II_1..10 (index 0 unused).
fn cbar_two(n: i64, k: i64, m: i64) -> Result<Vec<SR>> {
    let [c1, c2, c3, c4, c5, c6] = c_two(n, k + m)?;
    let (s, km) = (k + m, k * m);
    let n2sq = (n - 2) * (n - 2);
    let big = (n - 6) * (n - 4) * (n - 2) + 16;
    Ok(vec![
        SR::zero(),
        lc(&[
            (qr(-(s - 6) * (n + s - 4) * (s - 4) * (n + s - 2) * (n - 6), 4 * (n - 1)), &c6),
            (qr(-(n * n - 2 * n - 8 + (n - 10) * (s - 2)), 2 * (n - 1)), &c3),
            (qr(n - 2, 4 * (n - 1)), &c2),
            (qr(-(n * n - 4 * n + 12), 2 * (n - 2) * (n - 1)), &c1),
            (qr(-(s - 4) * (n + s - 2) * (n + s - 4) * (n - 6), 2 * (n - 1)), &c5),
            (
                -qr((s - 4) * (n + s - 2) * big, 2 * (n - 4) * (n - 2) * (n - 1))
                    - qr(8 * (n - 2) * s * s - 8 * (n - 6) * s + 16 * (n - 4), (n - 4) * (n - 2) * (n - 1)),
                &c4,
            ),
        ])?,
        lc(&[
            (qr(-(s - 6) * (n + s - 4) * 2 * (n - 6), n2sq), &c6),
            (qr(-(4 * (n - 6) * s + 4 * (n * n - 8 * n + 20)), n2sq), &c5),
            (qr(-4 * (n * n - 8 * n + 20), (n - 4) * n2sq), &c4),
        ])?,
        lc(&[(qr(-2 * km, n - 2), &c1), (qr(-(s - 2) * (n + s) * 4 * km, (n - 4) * (n - 2)), &c4)])?,
        lc(&[(qr(2, n - 2), &c3), (qr(-8, (n - 4) * (n - 2)), &c4)])?,
        c5.scale(&qr(4, (n - 4) * (n - 2))),
        c6.scale(&qr(-4 * (n - 6), (n - 4) * n2sq)),
        c4.scale(&qr(-8, (n - 4) * (n - 2))),
        lc(&[
            (qr(-(s - 4) * (n + s - 4) * (n - 6), n - 1), &c6),
            (qr(-big, (n - 4) * (n - 2) * (n - 1)), &c4),
            (qr(-(n + s - 4) * (n - 6), n - 1), &c5),
        ])?,
        c6.scale(&qr(-4 * (n - 6), n2sq)),
        c4.scale(&qr(-8 * km, (n - 4) * (n - 2))),
    ])
}

/// c-bar^III_1..17 (index 0 unused).
fn cbar_three(n: i64, k: i64, m: i64) -> Result<Vec<SR>> {
    let [c1, c2, c3, c4, c5, c6, c7, c8] = c_three(n, k + m)?;
    let (s, km) = (k + m, k * m);
    let n2sq = (n - 2) * (n - 2);
    let n42 = (n - 4) * (n - 2);
    let big = (n - 6) * (n - 4) * (n - 2) + 16;
    Ok(vec![
        SR::zero(),
        lc(&[
            (qr(-(s - 6) * (n + s - 4) * (s - 4) * (n + s - 2) * (n - 6), 4 * (n - 1)), &c6),
            (qr(n * n - 4 * n + 12, (n - 2) * (n - 1)), &c3),
            (qr(n - 2, 4 * (n - 1)), &c2),
            (qr(n * n - 4 * n + 12, (n - 2) * (n - 1)), &c1),
            (
                qr((s - 4) * (n + s - 2) * (n - 6), n - 1)
                    + qr((s - 2) * (n + s - 2) * 16, n42 * (n - 1))
                    + qr((s - 1) * (n + s - 2) * 8, (n - 4) * (n - 1)),
                &c5,
            ),
            (
                qr((s - 4) * (n + s - 2) * big, 2 * n42 * (n - 1))
                    + qr(8 * (n - 2) * s * s - 8 * (n - 6) * s + 16 * (n - 4), n42 * (n - 1)),
                &c4,
            ),
            (qr((n + s - 4) * (n + s - 2) * 8, (n - 4) * (n - 1)), &c8),
        ])?,
        lc(&[
            (qr(-(s - 6) * (n + s - 4) * 2 * (n - 6), n2sq), &c6),
            (qr(8 * (n * n - 8 * n + 20), (n - 4) * n2sq), &c5),
            (qr(4 * (n * n - 8 * n + 20), (n - 4) * n2sq), &c4),
        ])?,
        lc(&[(qr(4 * km, n - 2), &c1), (qr((s - 2) * (n + s) * 4 * km, n42), &c4)])?,
        c4.scale(&qr(8, n42)),
        SR::zero(),
        c6.scale(&qr(-4 * (n - 6), (n - 4) * n2sq)),
        c4.scale(&qr(8, n42)),
        lc(&[
            (qr(-(s - 4) * (n + s - 4) * (n - 6), n - 1), &c6),
            (qr(big, n42 * (n - 1)), &c4),
            (qr(2 * (n - 6), n - 1) - qr((s - 1) * 8, (n - 4) * (n - 1)), &c5),
            (qr(n * n - 4 * n + 12, 2 * (n - 2) * (n - 1)), &c7),
            (
                qr(-(n + s - 4) * 8, (n - 4) * (n - 1)) + qr((s - 2) * (n + s - 4) * big, 2 * n42 * (n - 1)),
                &c8,
            ),
        ])?,
        lc(&[(qr(-4 * (n - 6), n2sq), &c6), (qr(4 * (n - 4), n2sq) + qr(16, (n - 4) * n2sq), &c8)])?,
        c4.scale(&qr(8 * km, n42)),
        lc(&[(qr(2, n - 2), &c3), (qr((s - 2) * (n + s - 2) * 4, n42), &c5)])?,
        c5.scale(&qr(16, n42)),
        lc(&[(qr(-4, n - 2), &c7), (qr(-(s - 2) * (n + s - 4) * 8, n42), &c8)])?,
        c8.scale(&qr((n + s - 4) * 8, n42)),
        c8.scale(&(qr(-48, n2sq) + qr(16, n2sq) + qr(32, n42))),
        lc(&[(qr(2, n - 2), &c7), (qr((s - 2) * (n + s - 4) * 4, n42), &c8)])?,
        c8.scale(&qr(8, n42)),
    ])
}

/// lambda_q = -q(n+2q+2), with the convention lambda_{-1} = n.
fn lam(n: i64, qi: i64) -> Q {
    if qi >= 0 {
        q(-qi * (n + 2 * qi + 2))
    } else {
        q(n)
    }
}

/// The common spherical bracket built from c-bar_2..7.
fn bracket(cb: &[SR], n: i64, qi: i64, qj: i64, k: i64, m: i64) -> Result<SR> {
    let (l, ll, lm, llm) = (lam(n, qi), lam(n, qj), lam(n, qi - 1), lam(n, qj - 1));
    lc(&[
        (&l * &ll, &cb[2]),
        (q(1), &cb[3]),
        (q(k) * &ll + q(m) * &l, &cb[4]),
        (q(-2) * (q(k) * &llm * &ll + q(m) * &lm * &l), &cb[5]),
        (q(-2) * ((&llm + &lm) * &ll * &l), &cb[6]),
        (q(k * k) * &ll + q(m * m) * &l, &cb[7]),
    ])
}

/// The six coefficient matrices, indexed q, q' = 0..4.
#[derive(Clone, Debug)]
pub struct HessianMatrices {
    pub one: Vec<Vec<SR>>,
    pub two_1: Vec<Vec<SR>>,
    pub two_2: Vec<Vec<SR>>,
    pub three_1: Vec<Vec<SR>>,
    pub three_2: Vec<Vec<SR>>,
    pub four: Vec<Vec<SR>>,
}

pub fn hessian_matrices(n: i64) -> Result<HessianMatrices> {
    let zero = || vec![vec![SR::zero(); 5]; 5];
    let mut hm = HessianMatrices { one: zero(), two_1: zero(), two_2: zero(), three_1: zero(), three_2: zero(), four: zero() };
    let d0 = n * (n + 2);
    let d1 = d0 * (n + 4);
    for qi in 0..5i64 {
        for qj in 0..5i64 {
            let (k, m) = (2 * qi + 2, 2 * qj + 2);
            let big_q = qi + qj + qi * qj;
            let (l, ll) = (lam(n, qi), lam(n, qj));
            let (b1, b2, b3) = (cbar_one(n, k, m)?, cbar_two(n, k, m)?, cbar_three(n, k, m)?);
            let (br1, br2, br3) = (bracket(&b1, n, qi, qj, k, m)?, bracket(&b2, n, qi, qj, k, m)?, bracket(&b3, n, qi, qj, k, m)?);
            let (a, b) = (qi as usize, qj as usize);
            hm.one[a][b] = lc(&[(qr(1, 2 * d0), &br1), (-(qr(big_q, 2 * d0) + qr(1, 4 * n)), &b1[1])])?;
            hm.two_1[a][b] = lc(&[(qr(2, d1), &br2), (-(qr(2 * big_q, d1) + qr(1, 2 * d0)), &b2[1])])?;
            hm.two_2[a][b] = lc(&[
                (qr(1, 2 * d1), &br2),
                (-(qr(big_q, 2 * d1) + qr(1, 4 * d0)), &b2[1]),
                (-(qr(big_q, 2 * d0) + qr(1, 4 * n)), &b2[8]),
                (&l * &ll * qr(1, 2 * d0), &b2[9]),
                (qr(1, 2 * d0), &b2[10]),
            ])?;
            let big_a = lc(&[(q(m), &b3[11]), (q(k) * &ll, &b3[12]), (qr(n + k + m - 2, 2), &b3[16])])?;
            let big_b = lc(&[(q(k), &b3[11]), (q(m) * &l, &b3[12]), (qr(n + k + m - 2, 2), &b3[16])])?;
            let big_c = lc(&[(ll.clone(), &b3[17]), (qr(-1, 2), &b3[16])])?;
            let big_d = lc(&[(l.clone(), &b3[17]), (qr(-1, 2), &b3[16])])?;
            let extra = lc(&[(&l + &ll, &b3[13]), (q(m) * &l + q(k) * &ll, &b3[14]), (&l * &ll, &b3[15])])?;
            hm.three_1[a][b] = lc(&[
                (qr(2, d1), &br3),
                (-(qr(2 * big_q, d1) + qr(1, 2 * d0)), &b3[1]),
                (qr(1, 2 * d0), &extra),
                (qr(n + 4 + 4 * qi, d1), &big_a),
                (qr(n + 4 + 4 * qj, d1), &big_b),
                (qr(8 * qi * (qi - 1), d1) + qr(4 * qi, d0), &big_c),
                (qr(8 * qj * (qj - 1), d1) + qr(4 * qj, d0), &big_d),
            ])?;
            hm.three_2[a][b] = lc(&[
                (qr(1, 2 * d1), &br3),
                (-(qr(big_q, 2 * d1) + qr(1, 4 * d0)), &b3[1]),
                (-(qr(big_q, 2 * d0) + qr(1, 4 * n)), &b3[8]),
                (&l * &ll * qr(1, 2 * d0), &b3[9]),
                (qr(1, 2 * d0), &b3[10]),
                (qr(qi, d1), &big_a),
                (qr(qj, d1), &big_b),
                (qr(2 * qi * (qi - 1), d1) + qr(qi, d0), &big_c),
                (qr(2 * qj * (qj - 1), d1) + qr(qj, d0), &big_d),
            ])?;
            hm.four[a][b] = m_four(n, k + m)?;
        }
    }
    Ok(hm)
}

/// The two Hessian sums at a_0, with their quadratic-form coefficients
/// (alpha, beta, gamma) in a_0 kept as scaled rationals.
#[derive(Clone, Debug)]
pub struct HessianSums {
    pub total: QuadExt,
    pub m2: QuadExt,
    pub total_form: [SR; 3],
    pub m2_form: [SR; 3],
}

/// m^1 = -m^{II,1} - m^{III,1} + m^{IV}, m^2 = -m^I - m^{II,2} - m^{III,2};
/// returns sum (m^1 + m^2) a a' and sum m^2 a a' at a_0. The positive
/// factor pi^(h/2) is dropped before the sign test.
pub fn hessian_sums(n: i64) -> Result<HessianSums> {
    super::require_n(n)?;
    let hm = hessian_matrices(n)?;
    let mut m1 = vec![vec![SR::zero(); 5]; 5];
    let mut m2 = vec![vec![SR::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            m1[i][j] = SR::combine(&[(-1, &hm.two_1[i][j]), (-1, &hm.three_1[i][j]), (1, &hm.four[i][j])])?;
            m2[i][j] = SR::combine(&[(-1, &hm.one[i][j]), (-1, &hm.two_2[i][j]), (-1, &hm.three_2[i][j])])?;
        }
    }
    let mut tot = vec![vec![SR::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            tot[i][j] = m1[i][j].checked_add(&m2[i][j])?;
        }
    }
    let h = common_h(&[tot.concat(), m2.concat()])?;
    let rational = |a: &[Vec<SR>]| -> Vec<Vec<Q>> { a.iter().map(|r| r.iter().map(|x| x.coeff().clone()).collect()).collect() };
    let (qt, q2) = (Quadratic::from_form(&rational(&tot)), Quadratic::from_form(&rational(&m2)));
    let a0 = compute_a0(n)?;
    let form = |x: &Quadratic| [x.alpha.clone(), x.beta.clone(), x.gamma.clone()].map(|c| SR::new(c, h));
    Ok(HessianSums { total: qt.eval(&a0)?, m2: q2.eval(&a0)?, total_form: form(&qt), m2_form: form(&q2) })
}

/// (n-6)^2 / (1024 (n-2)(n+2)(n+4)) * Gamma(n/2-12) Gamma(n/2+3) / Gamma(n+1),
/// the positive factor relating the sums to their transcribed closed forms.
pub fn closed_form_prefactor(n: i64) -> Result<SR> {
    let g = (&gamma_value(n - 24)? * &gamma_value(n + 6)?).checked_div(&gamma_value(2 * n + 2)?)?;
    Ok(g.scale(&qr((n - 6).pow(2), 1024 * (n - 2) * (n + 2) * (n + 4))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_integrands() {
        for n in [27, 30] {
            for sum in (4..=20).step_by(2) {
                assert!(hessian_constants_agree(n, sum).unwrap(), "n = {n}, k+m = {sum}");
            }
        }
    }

    #[test]
    fn cross_ties_hold() {
        let (two, three) = (c_two(29, 8).unwrap(), c_three(29, 8).unwrap());
        assert_eq!(three[0], two[0].scale(&qr(1, 2)));
        assert_eq!(three[2..5], two[2..5]);
    }

    #[test]
    fn sums_positive_at_27_and_40() {
        for n in [27, 40] {
            let s = hessian_sums(n).unwrap();
            assert_eq!((s.total.sign(), s.m2.sign()), (1, 1), "n = {n}");
        }
    }

    #[test]
    fn prefactor_is_positive() {
        for n in 27..40 {
            assert!(closed_form_prefactor(n).unwrap().signum() > 0);
        }
    }
}
