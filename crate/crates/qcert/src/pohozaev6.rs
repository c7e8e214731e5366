//! Sixth-order Pohozaev quadratic-form matrices.
//!
//! The radial constants c_1..c_6 feed the sphere-integration pipeline
//! c -> c-bar_1..10 -> c'_1..8, from which every entry of m^{D,s}, m^{W,s}
//! and m^{H,s,1} is assembled; m^{H,s,2} and m^{H,s,3} come from the
//! solutions of the order-6 linearized systems.

use crate::error::{domain, Result};
use crate::exactnum::{q, qr, ScaledRational, SymMatrix, Q};
use crate::linsys::{rhs_vector, solve_gamma, Order, ProblemIndex, RhsVariant};
use crate::pohozaev4::{kappa, lambda, BuiltMatrix, Family, FamilySpec, N0};
use crate::radial::{bubble, bubble_z, moment};

type SR = ScaledRational;

fn lc(terms: &[(Q, &SR)]) -> Result<SR> {
    SR::lincomb(terms)
}

/// True iff k + m = n - 6 (logarithmic case).
pub fn theta(n: i64, k: i64, m: i64) -> bool {
    k + m == n - 6
}

/// The radial constants c_1..c_6 at total degree `sum = k + m`.
///
/// On the logarithmic antidiagonal the divergent radial bracket of each
/// constant is replaced by 1 (its N0-scaled surrogate is applied at the
/// entry level).
pub fn coeffs_q6(n: i64, sum: i64, log_case: bool) -> Result<[SR; 6]> {
    let bracket = |terms: &[(Q, i64, i64)]| -> Result<SR> {
        if log_case {
            return Ok(SR::integer(1));
        }
        let mut acc = SR::zero();
        for (c, j, i) in terms {
            acc = acc.checked_add(&moment(*j, *i)?.scale(c))?;
        }
        Ok(acc)
    };
    let p = n + sum;
    let c1 = bracket(&[
        (qr(-(n * n - 4), 4 * (n - 4)), n, p - 1),
        (qr(-n, n - 4), n, p + 1),
        (qr(n * n - 20, 4 * (n - 4)), n, p + 3),
        (q(1), n, p + 5),
    ])?
    .scale(&q(4 * (n - 6).pow(2) * (n - 4).pow(2)));
    let c2 = bracket(&[
        (qr(-n * n * (n - 2), 16 * (n - 6)), n - 1, p - 3),
        (qr(n * n * (n - 10), 16 * (n - 6)), n - 1, p - 1),
        (qr(n * n - 6 * n - 4, 2 * (n - 6)), n - 1, p + 1),
        (q(1), n - 1, p + 3),
    ])?
    .scale(&q(-8 * (n - 6).pow(3)));
    let c3 = bracket(&[
        (qr(-(n * n - 2 * n - 4), 4 * (n - 5)), n - 2, p - 3),
        (qr(n * (n - 6), 4 * (n - 5)), n - 2, p - 1),
        (q(1), n - 2, p + 1),
    ])?
    .scale(&q(-4 * (n - 6).pow(2) * (n - 5)));
    let c4 = bracket(&[(q(-1), n - 3, p - 3), (q(1), n - 3, p - 1)])?.scale(&qr(-(n - 6).pow(2) * (n - 4), 2));
    let c5 = bracket(&[(q(-1), n - 4, p - 5), (q(1), n - 4, p - 3)])?.scale(&qr((n - 6).pow(2), 2));
    let c6 = bracket(&[(q(-1), n - 5, p - 7), (q(1), n - 5, p - 5)])?.scale(&qr(-(n - 6), 2));
    Ok([c1, c2, c3, c4, c5, c6])
}

/// c_1..c_6 recomputed from their integrand definitions with the radial
/// kernel (bubble w = (1+r^2)^{-(n-6)/2}, Z = r w' + (n-6)/2 w).
pub fn coeffs_q6_from_radial(n: i64, sum: i64) -> Result<[SR; 6]> {
    if sum >= n - 6 {
        return domain("radial constants diverge on or beyond the logarithmic antidiagonal");
    }
    let w = bubble(n, 6);
    let z = bubble_z(n, 6)?;
    let wr = w.derivative_over_r_derivative()?;
    let lw = w.laplacian(n)?;
    let lwr = lw.derivative_over_r_derivative()?;
    let lz = z.laplacian(n)?;
    let p = n + sum;
    Ok([
        lz.mul(&wr).add(&z.mul(&lwr)).integrate(p - 2)?,
        lz.mul(&lw).integrate(p - 3)?,
        lz.mul(&w.derivative()).add(&z.mul(&lw.derivative())).integrate(p - 4)?,
        z.mul(&wr).integrate(p - 4)?,
        z.mul(&w.derivative()).integrate(p - 6)?,
        z.mul(&w).integrate(p - 7)?,
    ])
}

/// Sphere integration: c_1..c_6 -> c-bar_1..c-bar_10 (0-based array).
pub fn cbar(n: i64, k: i64, m: i64, c: &[SR; 6]) -> Result<[SR; 10]> {
    let [c1, c2, c3, c4, c5, c6] = c;
    let s = k + m;
    let km = k * m;
    let n1 = (n - 1) * (n - 1);
    let n2sq = (n - 2) * (n - 2);
    let b1 = lc(&[
        (qr((s - 4) * (n + s - 6) * (s - 2) * (n + s - 4) * (n - 6), 4 * (n - 1)), c6),
        (qr(n * n - 2 * n - 8 + (n - 10) * (s - 2), 2 * (n - 1)), c3),
        (qr(-(n - 2), 4 * (n - 1)), c2),
        (qr(n * n - 4 * n + 12, 2 * (n - 2) * (n - 1)), c1),
        (qr((s - 2) * (n + s - 4).pow(2) * (n - 6), 2 * (n - 1)), c5),
        (
            qr((s - 2) * (n + s - 4) * ((n - 6) * (n - 4) * (n - 2) + 16), 2 * (n - 4) * (n - 2) * (n - 1))
                + qr(8 * (n - 2) * s * s - 8 * (n - 6) * s + 16 * (n - 4), (n - 4) * (n - 2) * (n - 1)),
            c4,
        ),
    ])?;
    let b2 = lc(&[
        (qr((s - 4) * (n + s - 6) * 2 * (n - 6), n2sq), c6),
        (qr(4 * (n - 6) * s + 4 * (n * n - 8 * n + 20), n2sq), c5),
        (qr(4 * (n - 4).pow(2) + 16, (n - 4) * n2sq), c4),
    ])?;
    let b3 = lc(&[(qr(2 * km, n - 2), c1), (qr(s * (n + s - 2) * 4 * km, (n - 4) * (n - 2)), c4)])?;
    let b4 = lc(&[(qr(-2, n - 2), c3), (qr(8, (n - 4) * (n - 2)), c4)])?;
    let b5 = c5.scale(&qr(-4, (n - 4) * (n - 2)));
    let b6 = c6.scale(&qr(4 * (n - 6), (n - 4) * n2sq));
    let b7 = c4.scale(&qr(8, (n - 4) * (n - 2)));
    let b8 = lc(&[
        (qr(-8 * (n + s - 4) * km, n2sq), c5),
        (-(qr(8 * km, (n - 4) * (n - 2)) + qr(8 * km, n2sq)), c4),
    ])?;
    let a9 = qr(2 * (3 * n - 4), (n - 4) * (n - 2) * n1) + qr(3 * n - 2, 8 * n1);
    let b9_c6 = qr(n - 6, 4) * &a9 * q((n + s - 6) * (s - 4))
        + qr(n - 6, 2) * qr((n - 6) * (n + s - 6) * (n * s - 4), (n - 4) * (n - 2) * n1);
    let b9_c5 = qr(3 * n.pow(3) - 12 * n * n - 36 * n + 64, 16 * n1) - qr(2 * s, (n - 4) * (n - 1))
        + qr((3 * n * n - 28 * n + 28) * (s - 4), 16 * n1)
        + qr((n - 4) * (n * s - 4), (n - 2) * n1)
        + qr(8 * (n + s - 4), n2sq * n1)
        + qr((3 * n - 4) * ((n - 6) * s + n * n - 8 * n + 20), n2sq * n1);
    let b9_c4 = qr((3 * n - 4) * (n * n - 8 * n + 20), (n - 4) * n2sq * n1)
        + qr(3 * n * n - 12 * n + 28, 16 * n1)
        + qr(8, (n - 4) * (n - 2) * n1)
        + qr(8, n2sq * n1);
    let b9 = lc(&[(-b9_c6, c6), (-b9_c5, c5), (-b9_c4, c4)])?;
    let b10_c6 = qr(n - 6, 2) * &a9
        - qr(n - 6, 2) * (qr(2 * (3 * n - 4), n2sq * n1) + qr((n - 6) * (n + 4), 4 * (n - 4) * n1));
    let b10 = c6.scale(&b10_c6);
    Ok([b1, b2, b3, b4, b5, b6, b7, b8, b9, b10])
}

/// c-bar_1..10 -> c'_1..8 (0-based array).
pub fn cprime(n: i64, k: i64, m: i64, b: &[SR; 10]) -> Result<[SR; 8]> {
    let [b1, b2, b3, b4, b5, b6, b7, b8, b9, b10] = b;
    let s = k + m;
    let km = k * m;
    let sq = k * k + m * m;
    let n1 = (n - 1) * (n - 1);
    let inner = lc(&[
        (q((s - 6 + n) * km - 2 * (n - 4) * k - (n + s - 2) * k * k), b5),
        (qr(-1, 4), b1),
        (q(k), b4),
        (q(k * k), b7),
    ])?;
    let p1 = lc(&[(q(1), b3), (qr(-s * (n + s - 2), 8), b1), (qr(-(m - k) * (n + s - 2), 2), &inner)])?;
    let p2 = lc(&[
        (q(2 * km * (n + s - 6) - 2 * (n - 4) * s - (n + s - 2) * sq), b5),
        (qr(-1, 2), b1),
        (q(s), b4),
        (q(sq), b7),
    ])?;
    let p3 = lc(&[(q(1), b2), (q(-4 * (n + s - 4)), b6), (q(-2 * s), b5)])?;
    let p4 = b6.scale(&q(-2));
    let p5_b6 = qr(km, 2) * q((n + s - 4) * (s - 2)) - q(km * (n + k - 2) * (n + m - 2)) + q(km * (2 * n + s - 4));
    let p5 = lc(&[(q(1), b8), (qr(km, 2), b2), (q(km * (2 * n + s - 8)), b5), (p5_b6, b6)])?;
    let p6 = b6.scale(&q(-km));
    let co7 = qr((n - 3).pow(2), 2 * n1) * q((s - 4) * (n + s - 6)) + q(s) + qr(2 * (s - 2), n - 1)
        - qr((n - 3) * (n - 2), n1) * q(sq - 5 * s + 12)
        - qr((n - 3) * n, n - 1) * q(s - 2)
        + qr((s - 4) * (n + s - 6), n - 1)
        - qr(n - 3, 2 * (n - 1)) * q(sq + s * (n - 4));
    let p7 = lc(&[(q(1), b9), (qr(1, n - 1), b2), (qr((n - 3) * s, n - 1), b5), (co7, b6)])?;
    let p8 = lc(&[(q(1), b10), (qr(-(n * n - 4 * n + 7), n1), b6)])?;
    Ok([p1, p2, p3, p4, p5, p6, p7, p8])
}

/// Source of c_1..c_6 for a given (n, k, m); lets callers swap in the
/// radial oracle or a perturbed variant.
pub type CoeffProvider6<'a> = dyn Fn(i64, i64, i64) -> Result<[SR; 6]> + Sync + 'a;

/// Closed-form provider.
pub fn closed_form_coeffs(n: i64, k: i64, m: i64) -> Result<[SR; 6]> {
    coeffs_q6(n, k + m, theta(n, k, m))
}

/// Radial-oracle provider; the logarithmic antidiagonal uses the closed form.
pub fn radial_coeffs(n: i64, k: i64, m: i64) -> Result<[SR; 6]> {
    if theta(n, k, m) {
        coeffs_q6(n, k + m, true)
    } else {
        coeffs_q6_from_radial(n, k + m)
    }
}

/// c'_1..8 at (n, k, m) through the given provider.
pub fn pipeline(n: i64, k: i64, m: i64, coeffs: &CoeffProvider6<'_>) -> Result<[SR; 8]> {
    cprime(n, k, m, &cbar(n, k, m, &coeffs(n, k, m)?)?)
}

/// Entry of m^{D}, m^{W} or m^{H,1} at (q, q'). With `scale_log`, entries on
/// the logarithmic antidiagonal are multiplied by N0.
pub fn entry_q6(
    spec: &FamilySpec,
    qi: i64,
    qj: i64,
    coeffs: &CoeffProvider6<'_>,
    scale_log: bool,
) -> Result<SR> {
    let FamilySpec { family, n, s, .. } = *spec;
    let (k, m) = (2 * qi + s, 2 * qj + s);
    let p = pipeline(n, k, m, coeffs)?;
    let (l, lp) = (lambda(family, n, s, qi), lambda(family, n, s, qj));
    let ll = &l * &lp;
    let big_l = lc(&[(q(1), &p[0]), (l.clone(), &p[1]), (ll.clone(), &p[2]), (&ll * (&l + &lp), &p[3])])?;
    let v = match family {
        Family::D => big_l,
        Family::W => {
            let g = q(s * s * (n + s).pow(2));
            let w6 = q(4 * (qi - 1) * (qj - 1) + 2 * (s + 1) * (qi + qj - 2) + (s + 1) * (n + 2 * s));
            lc(&[(q(2 * s * (n + s)), &big_l), (g.clone(), &p[4]), (g * w6, &p[5])])?
        }
        Family::H => {
            let ks = kappa(n, s);
            let k2 = &ks * &ks;
            let qq = qi + qj;
            let br6 = q(s * (s - 1) * (n + 2 * s - 2) * (n + 2 * s - 4)
                + s * (n + 2 * s - 2) * (4 * qi * qj - 2 * qq - s * s + 2 * s * (qq + 1))
                + s * s * (2 * s * (1 - qq) - 4 * qi * qj + 2 * qq + n - 4));
            lc(&[
                (ks.clone(), &big_l),
                (&k2 / q(s * (n + s - 2)), &p[4]),
                (&k2 / q(s * s * (n + s - 2).pow(2)) * br6, &p[5]),
                (k2.clone(), &p[6]),
                (&k2 * q(4 * (qi - 1) * (qj - 1) + 2 * s * (qq - 2) + s * (n + 2 * s - 2)), &p[7]),
            ])?
        }
    };
    Ok(if scale_log && theta(n, k, m) { v.scale(&q(N0)) } else { v })
}

/// Raw H2 and H3 contributions at (q, q'), before symmetrization.
pub fn h23_raw(spec: &FamilySpec, qi: i64, qj: i64) -> Result<(SR, SR)> {
    let FamilySpec { n, s, .. } = *spec;
    let (k, m) = (2 * qi + s, 2 * qj + s);
    let f = {
        let t = qr(n - 6, 4 * (n - 1)) * kappa(n, s);
        &t * &t
    };
    let rhs_idx = ProblemIndex::new(Order::Six, n, m - 2, qj - 1)?;
    let b = rhs_vector(&rhs_idx, RhsVariant::Plain)?;
    let bp = rhs_vector(&rhs_idx, RhsVariant::Primed)?;
    let g = solve_gamma(&ProblemIndex::new(Order::Six, n, k - 2, qi - 1)?)?.gamma;
    if theta(n, k, m) {
        let v = -qr(n - 6, 2) * &f * &g[(qi + 1) as usize] * &b[(qj + 3) as usize];
        return Ok((SR::zero(), SR::rational(v)));
    }
    let mut h2 = SR::zero();
    let mut h3 = SR::zero();
    for i in 1..=qj + 4 {
        for j in 1..=qi + 2 {
            let big_j = n + 3 - i - j;
            let mom = moment(big_j, n - 1 + 2 * s)?;
            let (bi, bpi, gj) = (&b[(i - 1) as usize], &bp[(i - 1) as usize], &g[(j - 1) as usize]);
            let c2 = bi * gj * (qr((n - 2 * s - 2 * i - 2 * j + 6) * (n - 2 - 2 * j), big_j) - q(n + 2 - 4 * j - 2 * s));
            let c3 = gj * (qr(n - 2 * s - 2 * i - 2 * j + 6, big_j) * bpi - q(n - 6) * bi);
            h2 = h2.checked_add(&mom.scale(&c2))?;
            h3 = h3.checked_add(&mom.scale(&c3))?;
        }
    }
    let half = f * qr(1, 2);
    Ok((h2.scale(&half), h3.scale(&half)))
}

/// Builds the sixth-order matrix with the given constants provider.
pub fn matrix_q6_with(spec: &FamilySpec, coeffs: &CoeffProvider6<'_>) -> Result<BuiltMatrix> {
    if spec.order_shift != 6 {
        return domain("sixth-order builder needs order_shift = 6");
    }
    let qs = spec.q_indices();
    let dim = qs.len();
    let mut raw = vec![vec![SR::zero(); dim]; dim];
    for (a, &qi) in qs.iter().enumerate() {
        for (b, &qj) in qs.iter().enumerate() {
            raw[a][b] = entry_q6(spec, qi, qj, coeffs, true)?;
        }
    }
    let h1_symmetric = (0..dim).all(|a| (0..dim).all(|b| raw[a][b] == raw[b][a]));
    let mut asym = 0;
    if spec.family == Family::H {
        let mut x = vec![vec![SR::zero(); dim]; dim];
        for (a, &qi) in qs.iter().enumerate() {
            for (b, &qj) in qs.iter().enumerate() {
                let (h2, h3) = h23_raw(spec, qi, qj)?;
                x[a][b] = h2.checked_add(&h3)?;
            }
        }
        for (a, &qi) in qs.iter().enumerate() {
            for (b, &qj) in qs.iter().enumerate() {
                if x[a][b] != x[b][a] {
                    asym += 1;
                }
                let scale = if theta(spec.n, 2 * qi + spec.s, 2 * qj + spec.s) { qr(N0, 2) } else { qr(1, 2) };
                raw[a][b] = raw[a][b].checked_add(&x[a][b].checked_add(&x[b][a])?.scale(&scale))?;
            }
        }
    }
    let matrix = SymMatrix::new(raw)?;
    Ok(BuiltMatrix { spec: *spec, q_indices: qs, matrix, h1_symmetric, h23_asymmetric_pairs: asym })
}

/// The closed-form sixth-order matrix.
pub fn matrix_q6(spec: &FamilySpec) -> Result<BuiltMatrix> {
    matrix_q6_with(spec, &closed_form_coeffs)
}

/// The same matrix with c_1..c_6 taken from the radial oracle.
pub fn matrix_q6_radial(spec: &FamilySpec) -> Result<BuiltMatrix> {
    matrix_q6_with(spec, &radial_coeffs)
}

/// m^{D,2} for n >= 27 without the logarithmic rescaling, rows and columns
/// indexed by q = 0..4; used by the non-compactness construction.
pub fn m_d2_unscaled(n: i64) -> Result<Vec<Vec<SR>>> {
    let spec = FamilySpec { family: Family::D, n, s: 2, order_shift: 6 };
    (0..=4)
        .map(|qi| {
            (0..=4)
                .map(|qj| {
                    if theta(n, 2 * qi + 2, 2 * qj + 2) {
                        return domain(format!("logarithmic entry at n = {n}, (q, q') = ({qi}, {qj})"));
                    }
                    entry_q6(&spec, qi, qj, &closed_form_coeffs, false)
                })
                .collect()
        })
        .collect()
}

/// True iff both providers give identical constants at (n, sum).
pub fn radial_constants_agree(n: i64, sum: i64) -> Result<bool> {
    Ok(coeffs_q6(n, sum, false)? == coeffs_q6_from_radial(n, sum)?)
}

/// Certifies every admissible (family, n, s) of the sixth-order forms
/// against the expectation table.
pub fn scan_q6(ns: std::ops::RangeInclusive<i64>, families: &[Family]) -> Vec<crate::report::VerificationReport> {
    crate::scan::scan(6, ns, families, crate::scan::SFilter::All, matrix_q6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definiteness::classify;
    use crate::pohozaev4::specs;

    #[test]
    fn radial_constants_match_closed_form() {
        for n in 10..=24 {
            let d = (n - 6) / 2;
            for sum in (4..=2 * d).step_by(2) {
                if sum < n - 6 {
                    assert!(radial_constants_agree(n, sum).unwrap(), "n = {n}, k+m = {sum}");
                }
            }
        }
    }

    #[test]
    fn log_constants_are_the_bare_prefactors() {
        let c = coeffs_q6(12, 6, true).unwrap();
        assert_eq!(c[5], SR::rational(qr(-3, 1)));
        assert_eq!(c[3], SR::rational(q(-36 * 8 / 2)));
    }

    #[test]
    fn raw_matrices_are_symmetric() {
        for fam in Family::ALL {
            for n in [16, 19, 22] {
                for spec in specs(fam, n, 6) {
                    assert!(matrix_q6(&spec).unwrap().h1_symmetric, "{fam} n = {n} s = {}", spec.s);
                }
            }
        }
    }

    #[test]
    fn radial_variant_builds_identical_matrices() {
        for fam in Family::ALL {
            for spec in specs(fam, 18, 6) {
                assert_eq!(matrix_q6(&spec).unwrap().matrix, matrix_q6_radial(&spec).unwrap().matrix);
            }
        }
    }

    #[test]
    fn first_failures() {
        let d27 = matrix_q6(&FamilySpec::new(Family::D, 27, 2, 6).unwrap()).unwrap();
        assert!(!classify(&d27.matrix).unwrap().is_positive_definite());
        let d26 = matrix_q6(&FamilySpec::new(Family::D, 26, 2, 6).unwrap()).unwrap();
        assert!(classify(&d26.matrix).unwrap().is_positive_definite());
    }

    #[test]
    fn m_d2_has_no_log_entries_from_27() {
        assert!(m_d2_unscaled(27).is_ok());
        assert!(m_d2_unscaled(24).is_err());
    }
}
