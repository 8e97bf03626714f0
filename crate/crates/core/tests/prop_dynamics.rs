mod common;

use common::{kato, point};
use katolab::dynamics::{
    eval_inverse, eval_map, perron_data, stable_membership, GaussRat, GaussianRationalPoint,
    Membership, DEFAULT_TOL,
};
use katolab::kato::KatoMatrix;
use katolab::linalg::mat_mul;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn kato_pair(max_n: usize, max_k: usize) -> impl Strategy<Value = (KatoMatrix, KatoMatrix)> {
    kato(max_n, max_k).prop_flat_map(move |a| {
        let n = a.n();
        common::kato_word(n, max_k)
            .prop_filter("same n", move |w| w.n() == n)
            .prop_map(move |w| (a.clone(), KatoMatrix::from_word(w).unwrap()))
    })
}

fn with_point(max_n: usize, max_k: usize, torus: bool) -> impl Strategy<Value = (KatoMatrix, GaussianRationalPoint)> {
    kato(max_n, max_k).prop_flat_map(move |k| {
        let l = if torus { 0 } else { k.l() };
        point(k.n(), l).prop_map(move |z| (k.clone(), z))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_law((a, b) in kato_pair(4, 4), z in point(4, 0)) {
        let n = a.n();
        let z = GaussianRationalPoint::new(z.coords()[..n].to_vec());
        let ab = mat_mul(a.matrix(), b.matrix()).unwrap();
        let lhs = eval_map(&ab, &z).unwrap();
        let rhs = eval_map(a.matrix(), &eval_map(b.matrix(), &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_roundtrip((k, z) in with_point(4, 4, false)) {
        let fz = eval_map(k.matrix(), &z).unwrap();
        prop_assert_eq!(eval_inverse(&k, &fz).unwrap(), z.clone());
        let hz = eval_inverse(&k, &z).unwrap();
        prop_assert_eq!(eval_map(k.matrix(), &hz).unwrap(), z);
    }

    #[test]
    fn stable_membership_ignores_the_torus_part(
        k in kato(4, 4),
        w in prop::collection::vec((1i64..=3, 3i64..=9), 4),
        z1 in prop::collection::vec((-20i64..=20, 1i64..=5), 4),
        z2 in prop::collection::vec((-20i64..=20, 1i64..=5), 4),
    ) {
        let p = katolab::kato::positivity_power(k.matrix()).unwrap();
        let k = k.power(p).unwrap();
        let (n, l) = (k.n(), k.l());
        let build = |zs: &[(i64, i64)]| {
            let mut c: Vec<GaussRat> = zs[..l]
                .iter()
                .map(|&(p, q)| GaussRat::new(BigRational::new(p.into(), q.into()), BigRational::from_integer(0.into())))
                .collect();
            c.extend(w[..n - l].iter().map(|&(p, q)| GaussRat::new(BigRational::new(p.into(), q.into()), BigRational::from_integer(0.into()))));
            GaussianRationalPoint::new(c)
        };
        let m1 = stable_membership(&k, &build(&z1), 64).unwrap();
        let m2 = stable_membership(&k, &build(&z2), 64).unwrap();
        prop_assert!(matches!(m1, Membership::In(_)), "{:?}", m1);
        prop_assert!(matches!(m2, Membership::In(_)), "{:?}", m2);
    }

    #[test]
    fn perron_surd_has_unit_norm(k in kato(4, 6)) {
        let data = perron_data(&k, DEFAULT_TOL).unwrap();
        prop_assert!(data.value > 1.0);
        prop_assert!(data.vector.iter().all(|&x| x > 0.0));
        prop_assert!(data.residual <= DEFAULT_TOL);
        if let Some(s) = &data.power_exact {
            // (a + b√d)(a − b√d) / den² = det(B^p) = ±1
            let norm = &s.a * &s.a - &s.b * &s.b * &s.d;
            prop_assert_eq!(norm.abs(), &s.den * &s.den);
            prop_assert!((s.to_f64() - data.power_value).abs() <= 1e-9 * data.power_value);
        }
    }
}
