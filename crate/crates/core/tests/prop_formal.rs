mod common;

use common::kato;
use katolab::formal::{
    linear_invariant_fields, one_form_nullity, pushforward_invariance, tangent_field_nullity,
    top_type_generators, MonomialVectorField,
};
use katolab::invariants::multiplicity_one;
use katolab::kato::KatoMatrix;
use num_rational::BigRational;
use proptest::prelude::*;

fn field(n: usize) -> impl Strategy<Value = MonomialVectorField> {
    prop::collection::vec((0..n, prop::collection::vec(0i64..=2, n), -3i64..=3), 1..=3).prop_map(
        move |terms| {
            terms
                .into_iter()
                .map(|(t, e, c)| MonomialVectorField::monomial(n, t, &e, c))
                .fold(MonomialVectorField::zero(n), |acc, f| &acc + &f)
        },
    )
}

fn invariant_fields(k: &KatoMatrix) -> Vec<MonomialVectorField> {
    let mut v = linear_invariant_fields(k);
    if k.l() == k.n() - 2 {
        v.extend(top_type_generators(k.n()));
    }
    v
}

fn positive_type_zero() -> impl Strategy<Value = KatoMatrix> {
    kato(3, 4)
        .prop_filter("type 0", |k| k.l() == 0)
        .prop_map(|k| {
            let p = katolab::kato::positivity_power(k.matrix()).unwrap();
            k.power(p).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn invariance_is_linear(k in kato(4, 4), pick in (0usize..64, 0usize..64), c in (-5i64..=5, 1i64..=4), noise in field(4)) {
        let fields = invariant_fields(&k);
        prop_assume!(!fields.is_empty());
        let x = &fields[pick.0 % fields.len()];
        let y = &fields[pick.1 % fields.len()];
        let c = BigRational::new(c.0.into(), c.1.into());
        prop_assert!(pushforward_invariance(k.matrix(), x).unwrap());
        prop_assert!(pushforward_invariance(k.matrix(), &(&x.scale(&c) + y)).unwrap());
        let n = k.n();
        let noise = MonomialVectorField::from_components(noise.components()[..n].iter().map(|p| {
            let mut q = katolab::formal::SparseLaurentPoly::zero(n);
            for (e, c) in p.terms() {
                q.add_term(e[..n].to_vec(), c.clone());
            }
            q
        }).collect());
        // Invariant plus non-invariant is non-invariant.
        if !pushforward_invariance(k.matrix(), &noise).unwrap() {
            prop_assert!(!pushforward_invariance(k.matrix(), &(x + &noise)).unwrap());
        }
    }

    #[test]
    fn tangent_nullity_is_constant(k in positive_type_zero()) {
        let m1 = multiplicity_one(k.matrix());
        let mut prev = usize::MAX;
        for d in 0..=3 {
            let v = tangent_field_nullity(&k, d).unwrap();
            prop_assert!(v <= prev);
            prop_assert_eq!(v, m1);
            prev = v;
        }
    }

    #[test]
    fn one_forms_vanish(k in kato(4, 4)) {
        let p = katolab::kato::positivity_power(k.matrix()).unwrap();
        let k = k.power(p).unwrap();
        for d in 0..=2 {
            prop_assert_eq!(one_form_nullity(&k, d).unwrap(), 0);
        }
    }
}
