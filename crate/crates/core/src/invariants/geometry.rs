use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::lattices::multiplicity_one;
use crate::bigjson;
use crate::kato::KatoMatrix;

/// `dim H⁰(M_A, TM_A)`, exact where it is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HolVfDimension {
    Exact(usize),
    LowerBound(usize),
}

/// Algebraic dimension `a(M_A)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgDim {
    Exact(usize),
    /// Inclusive `[lower, upper]`.
    Bounds(usize, usize),
}

/// `m(1)` for `l = 0` and `A > 0`, `(n−1)(n−2)` for `l = n−2 ≥ 1`, and the
/// lower bound `l² − l + m(1)` otherwise.
pub fn hol_vf_dimension(k: &KatoMatrix) -> HolVfDimension {
    let (n, l) = (k.n(), k.l());
    let m1 = multiplicity_one(k.matrix());
    if n >= 3 && l == n - 2 {
        HolVfDimension::Exact((n - 1) * (n - 2))
    } else if l == 0 && k.matrix().is_positive() {
        HolVfDimension::Exact(m1)
    } else {
        HolVfDimension::LowerBound(l * l - l + m1)
    }
}

/// `n − 2` when `l = n − 2`, otherwise `max(m(1), l) ≤ a(M_A) ≤ n − 1`.
pub fn alg_dim(k: &KatoMatrix) -> AlgDim {
    let (n, l) = (k.n(), k.l());
    if l == n - 2 {
        AlgDim::Exact(n - 2)
    } else {
        AlgDim::Bounds(multiplicity_one(k.matrix()).max(l), n - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalBundle {
    pub det: i64,
    /// `K = O(−A(1) − … − A(l) − C)`, twisted by the flat bundle `L` of
    /// order two when `det A = −1`.
    pub descriptor: String,
    /// The same relation raised to the power `n − l − 1`.
    pub power_descriptor: String,
    pub kodaira: String,
    #[serde(with = "bigjson::opt_scalar")]
    pub anticanonical_h0: Option<BigInt>,
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `h⁰(K*) = C(2n−3, n−2)`, stated for `l = n−2`, `det A = 1`, `n ≥ 3`.
pub fn anticanonical_h0(k: &KatoMatrix) -> Option<BigInt> {
    let (n, l) = (k.n(), k.l());
    let det = k.matrix().det();
    (n >= 3 && l == n - 2 && det == BigInt::from(1))
        .then(|| binomial(2 * n as u64 - 3, n as u64 - 2))
}

pub fn canonical_descriptor(k: &KatoMatrix) -> CanonicalBundle {
    let (n, l) = (k.n(), k.l());
    let det: i64 = if k.matrix().det() == BigInt::from(1) { 1 } else { -1 };
    let divisors = match l {
        0 => "-C".to_string(),
        1 => "-A(1)-C".to_string(),
        2 => "-A(1)-A(2)-C".to_string(),
        _ => format!("-A(1)-...-A({l})-C"),
    };
    let m = n - l - 1;
    let twist = |s: &str| if det == 1 { String::new() } else { s.to_string() };
    CanonicalBundle {
        det,
        descriptor: format!("K = {}O({divisors})", twist("L ⊗ ")),
        power_descriptor: format!(
            "K^{m} = {}O(-{}C)",
            twist(&format!("L^{m} ⊗ ")),
            n - 1
        ),
        kodaira: "-inf".into(),
        anticanonical_h0: anticanonical_h0(k),
    }
}
