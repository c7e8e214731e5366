//! Cross-module invariants over randomized parameters.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qcert::definiteness::classify;
use qcert::linsys::{certify_with_rhs, rhs_vector, solve_gamma, Order, ProblemIndex, RhsVariant};
use qcert::pohozaev4::{matrix_q4, matrix_q4_radial, specs, Family};
use qcert::scan::dual_path_report;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::D), Just(Family::W), Just(Family::H)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn any_rhs_perturbation_is_detected(order in 0usize..3, n in 12i64..40, k_off in 0i64..30, s_off in 0i64..20, row in 0usize..32) {
        let order = Order::ALL[order];
        let grid = ProblemIndex::grid(order, n..=n);
        prop_assume!(!grid.is_empty());
        let idx = grid[((k_off * 31 + s_off) as usize) % grid.len()];
        let mut b = rhs_vector(&idx, RhsVariant::Plain).unwrap();
        prop_assert!(certify_with_rhs(&idx, &b).passed());
        let i = row % b.len();
        prop_assume!(!b[i].is_zero());
        b[i] += BigRational::one();
        prop_assert!(!certify_with_rhs(&idx, &b).passed());
    }

    #[test]
    fn gamma_is_unique_per_index(order in 0usize..3, n in 12i64..30) {
        for idx in ProblemIndex::grid(Order::ALL[order], n..=n).into_iter().take(6) {
            prop_assert_eq!(solve_gamma(&idx).unwrap(), solve_gamma(&idx).unwrap());
        }
    }

    #[test]
    fn q4_matrices_are_homogeneous_and_dual_path_stable(f in family(), n in 8i64..24) {
        for spec in specs(f, n, 4) {
            let built = matrix_q4(&spec).unwrap();
            let h = built.matrix.h();
            prop_assert!(built.matrix.entries().iter().flatten().all(|x| x.is_zero() || x.h() == h));
            prop_assert!(built.h1_symmetric);
            prop_assert!(dual_path_report(&built, matrix_q4_radial).passed());
            prop_assert!(classify(&built.matrix).unwrap().is_positive_definite());
        }
    }
}
