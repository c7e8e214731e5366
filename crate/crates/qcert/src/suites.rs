//! The eight acceptance suites. Each returns the reports it produced; a
//! suite passes iff every report passes.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::definiteness::{classify_rational, float_sanity_against, leading_minors, SignCounts};
use crate::exactnum::{q, qr, ScaledRational, SymMatrix, Q};
use crate::expected::{Expected, FamilyClaim};
use crate::linsys::{
    certify_cancellation, certify_with_rhs, column_oracle_report, cross_order_report, rhs_vector, solve_gamma, Order,
    ProblemIndex, RhsVariant,
};
use crate::noncompact::{certify_n, verify_k_plus_m_relation};
use crate::pohozaev4::{
    coeffs_q4, matrix_q4, matrix_q4_radial, matrix_q4_with, prefactor_q4, radial_reduction_agrees, Family, FamilySpec, N0,
};
use crate::pohozaev6::{closed_form_coeffs, matrix_q6, matrix_q6_radial, matrix_q6_with, radial_constants_agree};
use crate::radial::check_moment_recurrences;
use crate::report::{run_check, VerificationReport};
use crate::scan::{dual_path_report, scan, Builder, SFilter};
use crate::Result;

/// One acceptance criterion and its reports.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub criterion: u8,
    pub title: &'static str,
    pub reports: Vec<VerificationReport>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(VerificationReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    /// `PASS criterion 3 (...) [n checks]` or the FAIL analogue.
    pub fn summary_line(&self) -> String {
        let bad = self.failures().count();
        format!(
            "{} criterion {} ({}): {} checks, {} not passing",
            if self.passed() { "PASS" } else { "FAIL" },
            self.criterion,
            self.title,
            self.reports.len(),
            bad
        )
    }
}

fn tag(reports: Vec<VerificationReport>, criterion: u8) -> Vec<VerificationReport> {
    reports.into_iter().map(|r| r.criterion(criterion)).collect()
}

/// PD ranges with every s, then the failure window at the stated s.
fn threshold_suite(order_shift: i64, build: Builder) -> Vec<VerificationReport> {
    let e = Expected::get();
    let mut out = Vec::new();
    for fam in Family::ALL {
        let FamilyClaim { pd, fail_s, fail_window } = e.family(order_shift, fam).clone();
        out.extend(scan(order_shift, pd.0..=pd.1, &[fam], SFilter::All, build));
        out.extend(scan(order_shift, fail_window.0..=fail_window.1, &[fam], SFilter::Only(fail_s), build));
    }
    out
}

pub fn criterion_1() -> SuiteOutcome {
    SuiteOutcome { criterion: 1, title: "fourth-order thresholds", reports: threshold_suite(4, matrix_q4) }
}

pub fn criterion_2() -> SuiteOutcome {
    SuiteOutcome { criterion: 2, title: "sixth-order thresholds", reports: threshold_suite(6, matrix_q6) }
}

/// The pinned D-family entry at n = 8, s = 2, and its hand substitution.
pub fn pinned_entry_report() -> VerificationReport {
    let base = VerificationReport::new("q4.pinned_entry").criterion(3).param("family", "D").param("n", 8).param("s", 2);
    run_check(base, |rep| {
        let built = matrix_q4(&FamilySpec::new(Family::D, 8, 2, 4)?)?;
        let pinned: Q = Expected::get()
            .pinned_q4_d_n8_s2
            .parse()
            .map_err(|e| crate::Error::Input(format!("pinned value: {e}")))?;
        // Substitution by hand: lambda_0 = 0, so the entry is
        // prefactor * ((1/8) c1 (n+k+m-2)(k+m) - c2) * N0.
        let (n, k, m) = (8, 2, 2);
        let c = coeffs_q4(n, k, m).c;
        let bracket = qr(1, 8) * &c[0] * q((n + k + m - 2) * (k + m)) - &c[1];
        let prefactor = qr((n - 4) * (n - 4), 8 * (n - 3) * (n - 2) * (n - 1));
        let by_hand = &prefactor * &bracket * q(N0);
        let engine_prefactor = prefactor_q4(n, k, m)?;
        let ok = built.matrix.dim() == 1
            && *built.matrix.get(0, 0) == ScaledRational::rational(pinned.clone())
            && by_hand == pinned
            && c[0] == q(1120)
            && c[1] == q(2240)
            && bracket == q(3360)
            && prefactor == qr(1, 105)
            && *engine_prefactor.coeff() == &prefactor * q(N0);
        Ok(rep
            .outcome(ok, format!("[{pinned}]"), format!("[{}]", built.matrix.get(0, 0)))
            .witness(json!({ "c1": c[0].to_string(), "c2": c[1].to_string(), "bracket": bracket.to_string(), "prefactor": prefactor.to_string() })))
    })
}

pub fn criterion_3() -> SuiteOutcome {
    SuiteOutcome { criterion: 3, title: "hand-pinned entry", reports: vec![pinned_entry_report()] }
}

/// Every admissible index of the given orders with n up to `max_n`.
pub fn linsys_grid(orders: &[Order], max_n: i64) -> Vec<ProblemIndex> {
    orders.iter().flat_map(|&o| ProblemIndex::grid(o, 0..=max_n)).collect()
}

/// (n, k, s) admissible for every order.
pub fn common_grid(max_n: i64) -> Vec<(i64, i64, i64)> {
    ProblemIndex::grid(Order::Six, 0..=max_n)
        .into_iter()
        .filter(|i| Order::ALL.iter().all(|&o| ProblemIndex::admissible(o, i.n, i.k, i.s)))
        .map(|i| (i.n, i.k, i.s))
        .collect()
}

pub fn pinned_gamma_report() -> VerificationReport {
    let base = VerificationReport::new("linsys.pinned_gamma").criterion(4).param("order", 4).param("n", 10).param("k", 2).param("s", 0);
    run_check(base, |rep| {
        let sol = solve_gamma(&ProblemIndex::new(Order::Four, 10, 2, 0)?)?;
        let want = vec![qr(-1, 8), qr(-1, 16), qr(-1, 36)];
        let ok = sol.gamma == want;
        let show = |v: &[Q]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        Ok(rep.outcome(ok, format!("({})", show(&want)), format!("({})", show(&sol.gamma))))
    })
}

pub fn criterion_4() -> SuiteOutcome {
    let max_n = Expected::get().linsys_max_n;
    let mut reports: Vec<VerificationReport> = linsys_grid(&Order::ALL, max_n).par_iter().map(certify_cancellation).collect();
    reports.extend(common_grid(max_n).par_iter().map(|&(n, k, s)| cross_order_report(n, k, s)).collect::<Vec<_>>());
    reports.push(pinned_gamma_report());
    SuiteOutcome { criterion: 4, title: "linearized systems", reports: tag(reports, 4) }
}

fn bool_report(check: &str, params: &[(&str, i64)], expected: &str, f: impl FnOnce() -> Result<bool>) -> VerificationReport {
    let base = params.iter().fold(VerificationReport::new(check), |r, (k, v)| r.param(k, *v));
    run_check(base, |rep| {
        let ok = f()?;
        Ok(rep.outcome(ok, expected, if ok { expected.to_string() } else { "mismatch".to_string() }))
    })
}

/// Radial-oracle equivalences: the closed-form Laplacian coefficient lists
/// against the symbolic kernel, the sixth-order constants against their
/// integrands, the moment recurrences, and full dual-path matrix rebuilds.
pub fn criterion_5() -> SuiteOutcome {
    let e = Expected::get();
    let grid = linsys_grid(&Order::ALL, e.linsys_max_n);
    let mut reports: Vec<VerificationReport> = grid.par_iter().map(column_oracle_report).collect();

    let mut newbasis = BTreeSet::new();
    for i in &grid {
        let (shift, t) = match i.order {
            Order::Two => (2, 1),
            Order::Four => (0, 2),
            Order::Six => (-2, 3),
        };
        for j in 1..=i.unknowns() as i64 {
            newbasis.insert((i.n + shift - 2 * j, i.k - 2 * i.s, i.n, t));
        }
    }
    let newbasis: Vec<_> = newbasis.into_iter().collect();
    reports.extend(newbasis.par_iter().map(|&(two_a, b, n, _)| {
        bool_report("radial.newbasis", &[("two_a", two_a), ("b", b), ("n", n)], "coefficient lists reproduced", || {
            crate::radial::check_newbasis(two_a, b, n)
        })
    }).collect::<Vec<_>>());

    let mut c6 = Vec::new();
    for n in 12..=e.radial_constants_max_n {
        let d = (n - 6) / 2;
        for sum in (4..=2 * d).step_by(2).filter(|&s| s < n - 6) {
            c6.push((n, sum));
        }
    }
    reports.extend(c6.par_iter().map(|&(n, sum)| {
        bool_report("q6.radial_constants", &[("n", n), ("k_plus_m", sum)], "c1..c6 equal their integrals", || {
            radial_constants_agree(n, sum)
        })
    }).collect::<Vec<_>>());

    let mut q4 = Vec::new();
    for n in 8..=e.radial_constants_max_n {
        let d = (n - 4) / 2;
        for k in 1..=d {
            for m in (k..=d).step_by(2) {
                if k + m < n - 4 {
                    q4.push((n, k, m));
                }
            }
        }
    }
    reports.extend(q4.par_iter().map(|&(n, k, m)| {
        bool_report("q4.radial_reduction", &[("n", n), ("k", k), ("m", m)], "prefactored constants equal the radial reduction", || {
            radial_reduction_agrees(n, k, m)
        })
    }).collect::<Vec<_>>());

    let (lo, hi) = e.moment_recurrence_n;
    let moments: Vec<(i64, i64)> = (lo..=hi).flat_map(|n| (0..=2 * n - 4).map(move |l| (n, l))).collect();
    reports.extend(moments.par_iter().map(|&(n, l)| {
        bool_report("radial.moment_recurrence", &[("n", n), ("l", l)], "recurrences hold", || check_moment_recurrences(n, l))
    }).collect::<Vec<_>>());

    let nc = e.noncompact.window.0;
    let hess: Vec<(i64, i64)> = (nc..=nc + 3).flat_map(|n| (4..=20).step_by(2).map(move |s| (n, s))).collect();
    reports.extend(hess.par_iter().map(|&(n, sum)| {
        bool_report("noncompact.hessian_constants", &[("n", n), ("k_plus_m", sum)], "Hessian constants equal their integrals", || {
            crate::noncompact::hessian::hessian_constants_agree(n, sum)
        })
    }).collect::<Vec<_>>());

    let mut dual: Vec<(FamilySpec, Builder, Builder)> = Vec::new();
    for fam in Family::ALL {
        for n in 8..=e.radial_constants_max_n {
            for spec in crate::pohozaev4::specs(fam, n, 4) {
                dual.push((spec, matrix_q4, matrix_q4_radial));
            }
            for spec in crate::pohozaev4::specs(fam, n, 6) {
                dual.push((spec, matrix_q6, matrix_q6_radial));
            }
        }
    }
    reports.extend(dual.par_iter().map(|(spec, primary, oracle)| {
        let start = Instant::now();
        match primary(spec) {
            Ok(b) => dual_path_report(&b, *oracle),
            Err(err) => crate::scan::spec_report("dual_path", spec).error(&err).timed(start),
        }
    }).collect::<Vec<_>>());

    SuiteOutcome { criterion: 5, title: "radial oracle equivalence", reports: tag(reports, 5) }
}

pub fn criterion_6(with_tables: bool) -> SuiteOutcome {
    let e = &Expected::get().noncompact;
    let ns: Vec<i64> = (e.window.0..=e.window.1).collect();
    let mut reports: Vec<VerificationReport> = ns.par_iter().flat_map_iter(|&n| certify_n(n, with_tables)).collect();
    let (lo, hi) = e.k_plus_m_range;
    let mut km = Vec::new();
    for n in [e.window.0, 30, e.n52_threshold, e.window.1] {
        for k in (lo..=hi).step_by(2) {
            for m in (lo..=hi).step_by(2) {
                km.push((n, k, m));
            }
        }
    }
    reports.extend(km.par_iter().map(|&(n, k, m)| verify_k_plus_m_relation(n, k, m)).collect::<Vec<_>>());
    SuiteOutcome { criterion: 6, title: "non-compactness constants", reports: tag(reports, 6) }
}

/// Kinds of random matrices in the property suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Gram,
    DiagonalShifted,
    Symmetric,
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    qr(rng.random_range(-9i64..=9), rng.random_range(1i64..=5))
}

/// A reproducible random symmetric matrix of the given kind.
pub fn random_matrix(rng: &mut ChaCha8Rng, kind: RandomKind, dim: usize) -> Vec<Vec<Q>> {
    let mut sym = vec![vec![Q::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let x = random_q(rng);
            sym[i][j] = x.clone();
            sym[j][i] = x;
        }
    }
    match kind {
        RandomKind::Symmetric => sym,
        RandomKind::DiagonalShifted => {
            let shift = q(rng.random_range(-4i64..=20));
            for (i, row) in sym.iter_mut().enumerate() {
                row[i] += &shift;
            }
            sym
        }
        RandomKind::Gram => {
            let rank = rng.random_range(1..=dim);
            let b: Vec<Vec<Q>> = (0..rank).map(|_| (0..dim).map(|_| random_q(rng)).collect()).collect();
            (0..dim)
                .map(|i| (0..dim).map(|j| b.iter().fold(Q::zero(), |acc, r| acc + &r[i] * &r[j])).collect())
                .collect()
        }
    }
}

/// Property checks on one seeded random matrix.
pub fn definiteness_property_report(seed: u64, index: u64, max_dim: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
    let kind = [RandomKind::Gram, RandomKind::DiagonalShifted, RandomKind::Symmetric][(index % 3) as usize];
    let dim = rng.random_range(1..=max_dim);
    let base = VerificationReport::new("definiteness.properties")
        .criterion(7)
        .param("seed", seed)
        .param("index", index)
        .param("kind", format!("{kind:?}"))
        .param("dim", dim);
    let m = random_matrix(&mut rng, kind, dim);
    run_check(base, |rep| {
        let v = classify_rational(&m)?;
        let mut problems = Vec::new();
        let sylvester_pd = leading_minors(&m).iter().all(Signed::is_positive);
        if sylvester_pd != v.is_positive_definite() {
            problems.push("Sturm and Sylvester disagree".to_string());
        }
        let c = qr(rng.random_range(1i64..=7), rng.random_range(1i64..=5));
        let scaled: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| x * &c).collect()).collect();
        if classify_rational(&scaled)?.eigen_sign_counts != v.eigen_sign_counts {
            problems.push(format!("scaling by {c} changed the sign counts"));
        }
        let neg: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let nc = classify_rational(&neg)?.eigen_sign_counts;
        let mirrored = SignCounts { negative: v.eigen_sign_counts.positive, zero: v.eigen_sign_counts.zero, positive: v.eigen_sign_counts.negative };
        if nc != mirrored {
            problems.push("negation did not mirror the classification".to_string());
        }
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(&mut rng);
        let permuted: Vec<Vec<Q>> = perm.iter().map(|&i| perm.iter().map(|&j| m[i][j].clone()).collect()).collect();
        if classify_rational(&permuted)?.eigen_sign_counts != v.eigen_sign_counts {
            problems.push(format!("permutation {perm:?} changed the sign counts"));
        }
        if kind == RandomKind::Gram && v.eigen_sign_counts.negative != 0 {
            problems.push("Gram matrix has a negative eigenvalue".to_string());
        }
        let sanity = float_sanity_against(&m, &v);
        if !sanity.is_consistent() {
            problems.push(format!("float check: {sanity:?}"));
        }
        let ok = problems.is_empty();
        let actual = serde_json::to_value(v.classification).expect("classification serializes");
        let rep = rep.outcome(ok, "all properties hold", if ok { actual.as_str().unwrap_or_default().to_string() } else { problems.join("; ") });
        Ok(if ok { rep } else { rep.witness(json!({ "problems": problems, "verdict": v })) })
    })
}

pub fn criterion_7() -> SuiteOutcome {
    let d = &Expected::get().definiteness;
    let reports = (0..d.random_matrices as u64)
        .into_par_iter()
        .map(|i| definiteness_property_report(d.seed, i, d.max_dim))
        .collect();
    SuiteOutcome { criterion: 7, title: "definiteness engine properties", reports }
}

fn fault_report(check: &str, params: &[(&str, i64)], f: impl FnOnce() -> Result<(bool, bool, String)>) -> VerificationReport {
    let base = params.iter().fold(VerificationReport::new(check).criterion(8), |r, (k, v)| r.param(k, *v));
    run_check(base, |rep| {
        let (baseline_ok, detected, detail) = f()?;
        let ok = baseline_ok && detected;
        Ok(rep.outcome(ok, "baseline passes; perturbation detected", format!("baseline passes: {baseline_ok}; detected: {detected}; {detail}")))
    })
}

/// Every nonzero b entry of the index, perturbed by +1 in turn, must break
/// the certification.
pub fn rhs_fault_report(idx: &ProblemIndex) -> VerificationReport {
    let params = [("order", idx.order.value()), ("n", idx.n), ("k", idx.k), ("s", idx.s)];
    fault_report("fault.rhs_entry", &params, || {
        let b = rhs_vector(idx, RhsVariant::Plain)?;
        let baseline = certify_with_rhs(idx, &b).passed();
        let mut undetected = Vec::new();
        for i in (0..b.len()).filter(|&i| !b[i].is_zero()) {
            let mut p = b.clone();
            p[i] += Q::one();
            if certify_with_rhs(idx, &p).passed() {
                undetected.push(i + 1);
            }
        }
        Ok((baseline, undetected.is_empty(), format!("undetected rows {undetected:?}")))
    })
}

/// Perturbs c_{i+1} (a raw fourth-order constant) by +1 at every (k, m)
/// and requires the dual-path comparison to fail.
pub fn q4_coeff_fault_report(spec: &FamilySpec, i: usize) -> VerificationReport {
    let params = [("order", 4), ("n", spec.n), ("s", spec.s), ("c_index", i as i64 + 1)];
    fault_report("fault.q4_constant", &params, || {
        let built = matrix_q4(spec)?;
        let baseline = dual_path_report(&built, matrix_q4).passed();
        let perturbed = matrix_q4_with(spec, &|n, k, m| {
            let p = prefactor_q4(n, k, m)?;
            let mut c = coeffs_q4(n, k, m).c;
            c[i] += Q::one();
            Ok([p.scale(&c[0]), p.scale(&c[1]), p.scale(&c[2]), p.scale(&c[3])])
        })?;
        let detected = !dual_path_report(&perturbed, matrix_q4).passed();
        Ok((baseline, detected, String::new()))
    })
}

/// Perturbs c_{i+1} of the sixth-order constants by one unit of its pi
/// power and requires the dual-path comparison to fail.
pub fn q6_coeff_fault_report(spec: &FamilySpec, i: usize) -> VerificationReport {
    let params = [("order", 6), ("n", spec.n), ("s", spec.s), ("c_index", i as i64 + 1)];
    fault_report("fault.q6_constant", &params, || {
        let built = matrix_q6(spec)?;
        let baseline = dual_path_report(&built, matrix_q6).passed();
        let perturbed = matrix_q6_with(spec, &|n, k, m| {
            let mut c = closed_form_coeffs(n, k, m)?;
            let h = c.iter().find(|x| !x.is_zero()).map_or(0, ScaledRational::h);
            c[i] = c[i].checked_add(&ScaledRational::new(Q::one(), h))?;
            Ok(c)
        })?;
        let detected = !dual_path_report(&perturbed, matrix_q6).passed();
        Ok((baseline, detected, String::new()))
    })
}

/// Adds one unit (of the matrix's pi power) to a symmetric pair of entries
/// and requires the dual-path comparison to fail.
pub fn matrix_entry_fault_report(spec: &FamilySpec, row: usize, col: usize) -> VerificationReport {
    let params = [("order", spec.order_shift), ("n", spec.n), ("s", spec.s), ("row", row as i64), ("col", col as i64)];
    let build: Builder = if spec.order_shift == 4 { matrix_q4 } else { matrix_q6 };
    fault_report("fault.matrix_entry", &params, || {
        let mut built = build(spec)?;
        let baseline = dual_path_report(&built, build).passed();
        let mut e = built.matrix.entries().to_vec();
        let unit = ScaledRational::new(Q::one(), built.matrix.h());
        e[row][col] = e[row][col].checked_add(&unit)?;
        if row != col {
            e[col][row] = e[col][row].checked_add(&unit)?;
        }
        built.matrix = SymMatrix::new(e)?;
        let detected = !dual_path_report(&built, build).passed();
        Ok((baseline, detected, String::new()))
    })
}

pub fn criterion_8() -> SuiteOutcome {
    let mut reports = Vec::new();
    let samples = [(Order::Two, 12, 4, 1), (Order::Four, 10, 2, 0), (Order::Four, 20, 8, 3), (Order::Six, 14, 4, 1), (Order::Six, 30, 12, 5)];
    for (o, n, k, s) in samples {
        match ProblemIndex::new(o, n, k, s) {
            Ok(idx) => reports.push(rhs_fault_report(&idx)),
            Err(e) => reports.push(VerificationReport::new("fault.rhs_entry").criterion(8).error(&e)),
        }
    }
    let spec = |f, n, s, shift| FamilySpec::new(f, n, s, shift);
    match (spec(Family::H, 20, 2, 4), spec(Family::H, 22, 2, 6), spec(Family::W, 20, 1, 4), spec(Family::D, 24, 2, 6)) {
        (Ok(h4), Ok(h6), Ok(w4), Ok(d6)) => {
            reports.extend((0..4).map(|i| q4_coeff_fault_report(&h4, i)));
            reports.extend((0..6).map(|i| q6_coeff_fault_report(&h6, i)));
            reports.push(matrix_entry_fault_report(&w4, 0, 0));
            reports.push(matrix_entry_fault_report(&w4, 0, 1));
            reports.push(matrix_entry_fault_report(&d6, 1, 2));
        }
        (a, b, c, d) => {
            for e in [a.err(), b.err(), c.err(), d.err()].into_iter().flatten() {
                reports.push(VerificationReport::new("fault.setup").criterion(8).error(&e));
            }
        }
    }
    SuiteOutcome { criterion: 8, title: "fault injection", reports }
}

/// All eight suites in order.
pub fn all(with_tables: bool) -> Vec<SuiteOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(with_tables),
        criterion_7(),
        criterion_8(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_entry_passes() {
        assert!(pinned_entry_report().passed());
        assert!(pinned_gamma_report().passed());
    }

    #[test]
    fn random_matrices_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_matrix(&mut a, RandomKind::Gram, 5), random_matrix(&mut b, RandomKind::Gram, 5));
    }

    #[test]
    fn property_reports_pass_on_a_sample() {
        for i in 0..30 {
            let r = definiteness_property_report(1, i, 6);
            assert!(r.passed(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn rhs_faults_are_detected() {
        let idx = ProblemIndex::new(Order::Four, 10, 2, 0).unwrap();
        assert!(rhs_fault_report(&idx).passed());
    }

    #[test]
    fn matrix_entry_fault_is_detected() {
        let spec = FamilySpec::new(Family::W, 16, 1, 4).unwrap();
        assert!(matrix_entry_fault_report(&spec, 0, 0).passed());
    }

    #[test]
    fn common_grid_is_admissible_everywhere() {
        let g = common_grid(20);
        assert!(!g.is_empty());
        assert!(g.iter().all(|&(n, k, s)| Order::ALL.iter().all(|&o| ProblemIndex::admissible(o, n, k, s))));
    }
}
