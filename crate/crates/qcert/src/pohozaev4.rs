//! Fourth-order Pohozaev quadratic-form matrices m^{D,s}, m^{W,s} and
//! m^{H,s} = m^{H,s,1} + m^{H,s,2} + m^{H,s,3}.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactnum::{q, qr, ScaledRational, SymMatrix, Q};
use crate::linsys::{rhs_vector, solve_gamma, Order, ProblemIndex, RhsVariant};
use crate::radial::{bubble, bubble_z, moment, RadialExpr};

/// Scale applied to entries on the logarithmic (theta = 1) antidiagonal.
pub const N0: i64 = 10_000_000_000;

/// Eigenfamilies of the stability operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Family {
    D,
    W,
    H,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::D, Family::W, Family::H];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::D => "D",
            Family::W => "W",
            Family::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Family::D),
            "W" | "w" => Ok(Family::W),
            "H" | "h" => Ok(Family::H),
            _ => domain(format!("unknown family {s:?}")),
        }
    }
}

/// Index data shared by both orders: `order_shift` is 4 or 6 and
/// d = floor((n - order_shift)/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: i64,
    pub s: i64,
    pub order_shift: i64,
}

impl FamilySpec {
    pub fn new(family: Family, n: i64, s: i64, order_shift: i64) -> Result<Self> {
        let spec = FamilySpec { family, n, s, order_shift };
        if !spec.s_range().contains(&s) || spec.q_indices().is_empty() {
            return domain(format!("family {family} has no admissible block at n = {n}, s = {s}"));
        }
        Ok(spec)
    }

    pub fn d(&self) -> i64 {
        (self.n - self.order_shift).div_euclid(2)
    }

    pub fn s_range(&self) -> std::ops::RangeInclusive<i64> {
        s_range(self.family, self.n, self.order_shift)
    }

    /// q (equivalently q') values indexing the matrix.
    pub fn q_indices(&self) -> Vec<i64> {
        let lo = if self.family == Family::D { 0 } else { 1 };
        (lo..=(self.d() - self.s).div_euclid(2)).collect()
    }

    /// theta = 1 iff k + m hits the logarithmic case.
    pub fn theta(&self, k: i64, m: i64) -> bool {
        k + m == self.n - self.order_shift
    }
}

pub fn s_range(family: Family, n: i64, order_shift: i64) -> std::ops::RangeInclusive<i64> {
    let d = (n - order_shift).div_euclid(2);
    match family {
        Family::D => 2..=d,
        Family::W => 1..=d - 2,
        Family::H => 2..=d - 2,
    }
}

/// All admissible specs for a family at dimension n.
pub fn specs(family: Family, n: i64, order_shift: i64) -> Vec<FamilySpec> {
    s_range(family, n, order_shift)
        .filter_map(|s| FamilySpec::new(family, n, s, order_shift).ok())
        .collect()
}

/// Eigenvalue lambda_q of the stability operator on the family's q-th block.
pub fn lambda(family: Family, n: i64, s: i64, qi: i64) -> Q {
    match family {
        Family::D => q(-qi * (n + 2 * qi + 2 * s - 2)),
        Family::W => qr(-(n + s + 2 * qi - 2) * (s + 2 * qi), 2),
        Family::H => {
            q(s - 1) * (q(2) - qr(n - 2, n - 1) * q(n + s - 1)) - q((qi + 1) * (n + 2 * qi + 2 * s - 4))
        }
    }
}

/// kappa_s, the Gram factor of the H-family eigenvectors.
pub fn kappa(n: i64, s: i64) -> Q {
    qr(n - 2, n - 1) * q(s * (s - 1) * (n + s - 1) * (n + s - 2))
}

/// c_1..c_4 as functions of (n, k, m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSet4 {
    pub c: [Q; 4],
}

pub fn coeffs_q4(n: i64, k: i64, m: i64) -> CoeffSet4 {
    let s = k + m;
    let c1 = q(s * (n.pow(3) - (s + 2) * n * n + (6 * s - 4) * n - 4 * s + 8));
    let c2 = q(2 * (n - 1) * s * (n + s - 2) * k * m);
    let c3 = qr(8 * (n - 3) * (n - 1) * s, (n - 2) * (n + s - 4));
    let c4 = qr((n - 3) * (n.pow(3) - 4 * n * n + 16 * n - 16) * s, 2 * (n - 2) * (n - 1) * (n + s - 4));
    CoeffSet4 { c: [c1, c2, c3, c4] }
}

/// The common prefactor (n-4)^2 / (8(n-3)(n-2)(n-1)) * I_{n-3}^{n+k+m-3},
/// with the moment replaced by N0 on the theta = 1 antidiagonal.
pub fn prefactor_q4(n: i64, k: i64, m: i64) -> Result<ScaledRational> {
    let base = qr((n - 4) * (n - 4), 8 * (n - 3) * (n - 2) * (n - 1));
    if k + m == n - 4 {
        return Ok(ScaledRational::rational(base * q(N0)));
    }
    Ok(moment(n - 3, n + k + m - 3)?.scale(&base))
}

/// Prefactor times c_1..c_4: every Q4 entry is a combination of these.
pub fn scaled_coeffs_q4(n: i64, k: i64, m: i64) -> Result<[ScaledRational; 4]> {
    let p = prefactor_q4(n, k, m)?;
    let c = coeffs_q4(n, k, m).c;
    Ok([p.scale(&c[0]), p.scale(&c[1]), p.scale(&c[2]), p.scale(&c[3])])
}

/// The four radial integrals of the polar-coordinate expansion of the
/// fourth-order Pohozaev term, against r^{k+m+n-1}, r^{k+m+n-3}, r^{k+m+n-5}.
pub fn radial_reduction_integrals(n: i64, k: i64, m: i64) -> Result<[ScaledRational; 3]> {
    let s = k + m;
    let w = bubble(n, 4);
    let z = bubble_z(n, 4)?;
    let wd = w.derivative();
    let r1 = z.mul(&wd.derivative()).integrate(s + n - 3)?.checked_sub(&z.mul(&wd).integrate(s + n - 4)?)?;
    let r2 = z.mul(&wd).integrate(s + n - 4)?;
    let r3 = z.mul(&w).integrate(s + n - 5)?;
    Ok([r1, r2, r3])
}

/// Prefactor times c_1..c_4 recovered from the radial expansion, after the
/// sphere integration-by-parts factor (k+m-2)(n+k+m-4) is applied to the
/// Laplacian term. Valid off the theta = 1 antidiagonal.
pub fn scaled_coeffs_q4_from_radial(n: i64, k: i64, m: i64) -> Result<[ScaledRational; 4]> {
    if k + m >= n - 4 {
        return domain("radial reduction diverges on or beyond the logarithmic antidiagonal");
    }
    let s = k + m;
    let km = k * m;
    let [r1, r2, r3] = radial_reduction_integrals(n, k, m)?;
    let a1 = qr(4 + (n - 2) * (n - 2), 2 * (n - 2) * (n - 1));
    let a2 = qr(n - 6, 2 * (n - 1));
    let beta = qr(n - 4, 4 * (n - 1));
    let r2_coeff = qr(2, n - 2) - qr(n - 2, 2) - &a1 - &a2 * q(s - 2) - qr(2 * s, n - 2);
    let rddot = ScaledRational::lincomb(&[
        (-a1, &r1),
        (r2_coeff, &r2),
        (-&beta * q((s - 2) * (n + s - 4)), &r3),
    ])?;
    let hh = ScaledRational::lincomb(&[(qr(-km, n - 2), &r1), (qr(-(n + s - 2) * km, n - 2), &r2)])?;
    let ric = r3.scale(&qr(-(n - 4), (n - 2) * (n - 2)));
    let div2 = r3.scale(&(&beta * qr(n.pow(3) - 4 * n * n + 16 * n - 16, 4 * (n - 2) * (n - 2) * (n - 1))));
    // The bracket reads -c1 Rddot - c2 <H,H> + c3 <Ric,Ric> - c4 <d2H,d2H>.
    Ok([-rddot, -hh, ric, -div2])
}

/// Entry of m^{D}, m^{W} or m^{H,1} from the prefactored constants `pc`.
fn entry_from_coeffs(spec: &FamilySpec, qi: i64, qj: i64, pc: &[ScaledRational; 4]) -> Result<ScaledRational> {
    let FamilySpec { family, n, s, .. } = *spec;
    let (k, m) = (2 * qi + s, 2 * qj + s);
    let sum = k + m;
    let (l, lp) = (lambda(family, n, s, qi), lambda(family, n, s, qj));
    let [c1, c2, c3, c4] = pc;
    // (1/8) c1 (2(lambda + lambda') + (n+k+m-2)(k+m)) - c2
    let base = ScaledRational::lincomb(&[(qr(1, 8) * (q(2) * (&l + &lp) + q((n + sum - 2) * sum)), c1), (q(-1), c2)])?;
    match family {
        Family::D => base.checked_add(&c3.scale(&(&l * &lp))),
        Family::W => {
            let g = q(s * (n + s));
            let w3 = q(4) * &g * &l * &lp + q(k * m * s * s * (n + s) * (n + s));
            c3.scale(&(w3 * qr(1, 2))).checked_add(&base.scale(&(q(2) * g)))
        }
        Family::H => {
            let ks = kappa(n, s);
            let inner = ScaledRational::lincomb(&[
                (&l * &lp + qr((n - 2) * (s - 1) * (n + s - 1) * k * m, 2 * (n - 1)) + &ks * qr(1, n - 1), c3),
                (-ks.clone(), c4),
            ])?
            .checked_add(&base)?;
            Ok(inner.scale(&ks))
        }
    }
}

/// Raw (unsymmetrized) H2 and H3 contributions at (q, q').
fn h23_raw(spec: &FamilySpec, qi: i64, qj: i64) -> Result<(ScaledRational, ScaledRational)> {
    let FamilySpec { n, s, .. } = *spec;
    let (k, m) = (2 * qi + s, 2 * qj + s);
    let f = {
        let t = qr(n - 4, 4 * (n - 1)) * kappa(n, s);
        &t * &t
    };
    let rhs_idx = ProblemIndex::new(Order::Four, n, m - 2, qj - 1)?;
    let b = rhs_vector(&rhs_idx, RhsVariant::Plain)?;
    let bp = rhs_vector(&rhs_idx, RhsVariant::Primed)?;
    let g = solve_gamma(&ProblemIndex::new(Order::Four, n, k - 2, qi - 1)?)?.gamma;
    if spec.theta(k, m) {
        let v = qr(n - 4, 2) * &f * &g[(qi + 1) as usize] * &b[(qj + 2) as usize];
        return Ok((ScaledRational::zero(), ScaledRational::rational(v)));
    }
    let mut h2 = ScaledRational::zero();
    let mut h3 = ScaledRational::zero();
    for i in 1..=qj + 3 {
        for j in 1..=qi + 2 {
            let big_j = n + 3 - i - j;
            let mom = moment(big_j, n - 1 + 2 * s)?;
            let (bi, bpi, gj) = (&b[(i - 1) as usize], &bp[(i - 1) as usize], &g[(j - 1) as usize]);
            let c2 = bi * gj * (qr((n - 2 * s - 2 * i - 2 * j + 6) * (n - 2 * j), big_j) - q(n + 4 - 4 * j - 2 * s));
            let c3 = gj * (qr(n - 2 * s - 2 * i - 2 * j + 6, big_j) * bpi - q(n - 4) * bi);
            h2 = h2.checked_add(&mom.scale(&c2))?;
            h3 = h3.checked_add(&mom.scale(&c3))?;
        }
    }
    let half = -f * qr(1, 2);
    Ok((h2.scale(&half), h3.scale(&half)))
}

/// A built matrix with its provenance data.
#[derive(Clone, Debug)]
pub struct BuiltMatrix {
    pub spec: FamilySpec,
    pub q_indices: Vec<i64>,
    pub matrix: SymMatrix,
    /// For H: whether the first block m^{H,s,1} was exactly symmetric
    /// before any symmetrization (it must be), and the largest index pair
    /// at which the raw m^{H,s,2} + m^{H,s,3} block was asymmetric.
    pub h1_symmetric: bool,
    pub h23_asymmetric_pairs: usize,
}

/// Source of the prefactored constants for a given (n, k, m).
pub type CoeffProvider<'a> = dyn Fn(i64, i64, i64) -> Result<[ScaledRational; 4]> + Sync + 'a;

/// Builds the matrix with a caller-supplied source of the prefactored
/// constants (closed form, radial oracle, or a perturbed variant).
pub fn matrix_q4_with(spec: &FamilySpec, coeffs: &CoeffProvider<'_>) -> Result<BuiltMatrix> {
    if spec.order_shift != 4 {
        return domain("fourth-order builder needs order_shift = 4");
    }
    let qs = spec.q_indices();
    let dim = qs.len();
    let mut raw = vec![vec![ScaledRational::zero(); dim]; dim];
    for (a, &qi) in qs.iter().enumerate() {
        for (b, &qj) in qs.iter().enumerate() {
            let (k, m) = (2 * qi + spec.s, 2 * qj + spec.s);
            let pc = coeffs(spec.n, k, m)?;
            raw[a][b] = entry_from_coeffs(spec, qi, qj, &pc)?;
        }
    }
    let h1_symmetric = (0..dim).all(|a| (0..dim).all(|b| raw[a][b] == raw[b][a]));
    let mut asym = 0;
    if spec.family == Family::H {
        let mut x = vec![vec![ScaledRational::zero(); dim]; dim];
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
                let scale = if spec.theta(2 * qi + spec.s, 2 * qj + spec.s) { qr(N0, 2) } else { qr(1, 2) };
                let sym = x[a][b].checked_add(&x[b][a])?.scale(&scale);
                raw[a][b] = raw[a][b].checked_add(&sym)?;
            }
        }
    }
    let matrix = SymMatrix::new(raw)?;
    Ok(BuiltMatrix { spec: *spec, q_indices: qs, matrix, h1_symmetric, h23_asymmetric_pairs: asym })
}

/// The closed-form fourth-order matrix.
pub fn matrix_q4(spec: &FamilySpec) -> Result<BuiltMatrix> {
    matrix_q4_with(spec, &scaled_coeffs_q4)
}

/// The radial-oracle variant: constants off the antidiagonal come from the
/// radial expansion; antidiagonal entries use the closed form.
pub fn matrix_q4_radial(spec: &FamilySpec) -> Result<BuiltMatrix> {
    matrix_q4_with(spec, &|n, k, m| {
        if k + m == n - 4 {
            scaled_coeffs_q4(n, k, m)
        } else {
            scaled_coeffs_q4_from_radial(n, k, m)
        }
    })
}

/// Radial integrand factor of the H2/H3 sums, rebuilt from the kernel:
/// integral of r^{n-1+2s} (1+r^2)^{-J}.
pub fn h_moment_from_kernel(n: i64, s: i64, big_j: i64) -> Result<ScaledRational> {
    RadialExpr::x_power(2 * big_j).integrate(n - 1 + 2 * s)
}

/// True iff every prefactored constant of the closed form equals the radial
/// reduction at (n, k, m).
pub fn radial_reduction_agrees(n: i64, k: i64, m: i64) -> Result<bool> {
    Ok(scaled_coeffs_q4(n, k, m)? == scaled_coeffs_q4_from_radial(n, k, m)?)
}

/// Zero check helper for tests and reports.
pub fn is_zero_matrix(m: &SymMatrix) -> bool {
    m.entries().iter().all(|r| r.iter().all(|x| x.coeff().is_zero()))
}

/// Certifies every admissible (family, n, s) of the fourth-order forms
/// against the expectation table.
pub fn scan_q4(ns: std::ops::RangeInclusive<i64>, families: &[Family]) -> Vec<crate::report::VerificationReport> {
    crate::scan::scan(4, ns, families, crate::scan::SFilter::All, matrix_q4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definiteness::{classify, Classification};

    #[test]
    fn pinned_d_entry_n8() {
        let spec = FamilySpec::new(Family::D, 8, 2, 4).unwrap();
        let m = matrix_q4(&spec).unwrap();
        assert_eq!(m.matrix.dim(), 1);
        assert_eq!(m.matrix.get(0, 0), &ScaledRational::integer(32 * N0));
        // The hand substitution behind it.
        let c = coeffs_q4(8, 2, 2).c;
        assert_eq!(c[0], q(1120));
        assert_eq!(c[1], q(2240));
        assert_eq!(qr(16, 8 * 5 * 6 * 7), qr(1, 105));
    }

    #[test]
    fn radial_reduction_matches_closed_form() {
        for n in 10..=24 {
            let d = (n - 4) / 2;
            for k in 2..=d {
                for m in 2..=d {
                    if k + m < n - 4 {
                        assert!(radial_reduction_agrees(n, k, m).unwrap(), "{n} {k} {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn radial_variant_builds_identical_matrices() {
        for fam in Family::ALL {
            for n in [14, 17, 22] {
                for spec in specs(fam, n, 4) {
                    let a = matrix_q4(&spec).unwrap();
                    let b = matrix_q4_radial(&spec).unwrap();
                    assert_eq!(a.matrix, b.matrix);
                }
            }
        }
    }

    #[test]
    fn h_moment_kernel_agrees() {
        for j in 10..16 {
            assert_eq!(h_moment_from_kernel(14, 2, j).unwrap(), moment(j, 14 - 1 + 4).unwrap());
        }
    }

    #[test]
    fn boundary_verdicts() {
        let d25 = matrix_q4(&FamilySpec::new(Family::D, 25, 2, 4).unwrap()).unwrap();
        assert_ne!(classify(&d25.matrix).unwrap().classification, Classification::PositiveDefinite);
        let h12 = matrix_q4(&FamilySpec::new(Family::H, 12, 2, 4).unwrap()).unwrap();
        assert_eq!(h12.matrix.dim(), 1);
        assert!(h12.matrix.get(0, 0).signum() > 0);
        assert!(h12.h1_symmetric);
    }

    #[test]
    fn homogeneity_by_parity() {
        for n in [20, 21] {
            let m = matrix_q4(&FamilySpec::new(Family::W, n, 1, 4).unwrap()).unwrap();
            assert_eq!(m.matrix.h(), if n % 2 == 0 { 0 } else { 2 });
        }
    }

    #[test]
    fn empty_blocks_are_rejected() {
        assert!(FamilySpec::new(Family::H, 10, 2, 4).is_err());
        assert!(FamilySpec::new(Family::D, 8, 3, 4).is_err());
    }
}
