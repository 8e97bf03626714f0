mod common;

use common::kato;
use katolab::invariants::{
    alternating_sum, betti_numbers, build_report_for, euler_characteristic, invariant_monomials,
    multiplicity_one, theta_lattice, twisted_betti_numbers, verify_j0_relation,
};
use katolab::kato::is_l_positive;
use katolab::linalg::rank_q;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn euler_characteristic_agrees(n in 2usize..=12, k in 1usize..=30) {
        let chi = (k * (n - 1)) as i64;
        prop_assert_eq!(alternating_sum(&betti_numbers(n, k)), chi);
        prop_assert_eq!(alternating_sum(&twisted_betti_numbers(n, k)), chi);
        prop_assert_eq!(euler_characteristic(n, k), chi);
    }

    #[test]
    fn invariant_monomials_are_fixed_and_independent(k in kato(5, 6)) {
        let mons = invariant_monomials(k.matrix(), k.l());
        let exps: Vec<_> = mons.iter().map(|m| m.exponent.clone()).collect();
        for e in &exps {
            prop_assert_eq!(&k.matrix().left_mul_vec(e), e);
        }
        prop_assert_eq!(rank_q(&exps), exps.len());
    }

    #[test]
    fn fixed_lattice_rank_bounds_type(k in kato(6, 8)) {
        let m1 = multiplicity_one(k.matrix());
        prop_assert!(m1 >= k.l());
        if k.l() == k.n() - 2 {
            prop_assert_eq!(m1, k.n() - 2);
        }
    }

    #[test]
    fn theta_has_full_rank_and_finite_index(k in kato(6, 8)) {
        let theta = theta_lattice(&k).unwrap();
        prop_assert_eq!(theta.basis.rank(), multiplicity_one(k.matrix()));
        prop_assert!(theta.index.is_finite());
        if k.l() > 0 {
            prop_assert!(verify_j0_relation(k.form()).unwrap());
        }
    }

    #[test]
    fn report_of_power(k in kato(4, 4), p in 1usize..=3) {
        let base = build_report_for(&k).unwrap();
        let cover = build_report_for(&k.power(p).unwrap()).unwrap();
        prop_assert_eq!(cover.k, p * base.k);
        prop_assert_eq!(cover.l, base.l);
        prop_assert_eq!(cover.rank_r, base.rank_r);
        prop_assert!(cover.m1 >= base.m1);
        if is_l_positive(k.matrix()).unwrap() {
            prop_assert!(base.k >= base.n - base.l);
        }
    }
}
