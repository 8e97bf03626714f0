#![allow(dead_code)]

use katolab::dynamics::{GaussRat, GaussianRationalPoint};
use katolab::kato::{FactorSeq, KatoMatrix};
use katolab::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn word(max_n: usize, max_k: usize) -> impl Strategy<Value = FactorSeq> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1..=n, 1..=max_k)
            .prop_map(move |idx| FactorSeq::new(n, idx).unwrap())
    })
}

pub fn kato_word(max_n: usize, max_k: usize) -> impl Strategy<Value = FactorSeq> {
    word(max_n, max_k).prop_filter("A_n^p is excluded", |w| w.is_kato())
}

pub fn kato(max_n: usize, max_k: usize) -> impl Strategy<Value = KatoMatrix> {
    kato_word(max_n, max_k).prop_map(|w| KatoMatrix::from_word(w).unwrap())
}

pub fn ratio(nonzero: bool) -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=7)
        .prop_filter("zero", move |(p, _)| !nonzero || *p != 0)
        .prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

pub fn gauss(nonzero: bool) -> impl Strategy<Value = GaussRat> {
    (ratio(false), ratio(false))
        .prop_filter("zero", move |(re, im)| {
            !nonzero || !(num_traits::Zero::is_zero(re) && num_traits::Zero::is_zero(im))
        })
        .prop_map(|(re, im)| GaussRat::new(re, im))
}

/// Point of `ℂˡ × (ℂ*)ⁿ⁻ˡ`.
pub fn point(n: usize, l: usize) -> impl Strategy<Value = GaussianRationalPoint> {
    (
        prop::collection::vec(gauss(false), l),
        prop::collection::vec(gauss(true), n - l),
    )
        .prop_map(|(mut a, b)| {
            a.extend(b);
            GaussianRationalPoint::new(a)
        })
}

pub fn square(max_n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-range..=range, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
