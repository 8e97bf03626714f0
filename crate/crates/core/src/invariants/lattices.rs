use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::InvariantsError;
use crate::bigjson;
use crate::kato::{KatoMatrix, StandardForm};
use crate::linalg::{lattice_index, left_fixed_lattice, multiplicity_of_one, IntMatrix, LatticeBasis, LatticeIndex};

/// `m(1) = n − rank_ℚ(A − I)`.
pub fn multiplicity_one(a: &IntMatrix) -> usize {
    multiplicity_of_one(a)
}

#[derive(Debug, Clone)]
pub struct ThetaLattice {
    pub basis: LatticeBasis,
    /// `[K_A : Θ]`.
    pub index: LatticeIndex,
    pub k_a: LatticeBasis,
    pub k_b: LatticeBasis,
}

/// `Θ = {(I, K − aJ_0) : ΣI = a(n−l−1), K ∈ K_B}` inside `K_A`, with
/// `J_0 = (1, …, 1)`.
///
/// Generated by `(e_1 − e_p, 0)`, `((n−l−1)e_1, −J_0)` and `(0, K)`.
pub fn theta_lattice(k: &KatoMatrix) -> Result<ThetaLattice, InvariantsError> {
    let n = k.n();
    let form = k.form();
    let l = form.l;
    let m = (n - l - 1) as i64;
    let k_a = left_fixed_lattice(k.matrix());
    let k_b = left_fixed_lattice(&form.b);
    let mut gens = Vec::new();
    if l > 0 {
        for p in 1..l {
            let mut v = vec![BigInt::zero(); n];
            v[0] = 1.into();
            v[p] = (-1).into();
            gens.push(v);
        }
        let mut v = vec![BigInt::from(-1); n];
        v[..l].fill(BigInt::zero());
        v[0] = m.into();
        gens.push(v);
    }
    for row in k_b.rows() {
        let mut v = vec![BigInt::zero(); l];
        v.extend(row.iter().cloned());
        gens.push(v);
    }
    let basis = LatticeBasis::from_generators(n, &gens)?;
    if k_b.rank() + l != k_a.rank() {
        return Err(InvariantsError::Inconsistent(format!(
            "rank K_B = {} but rank K_A − l = {}",
            k_b.rank(),
            k_a.rank() as i64 - l as i64
        )));
    }
    let index = lattice_index(&basis, &k_a)?;
    if !index.is_finite() {
        return Err(InvariantsError::Inconsistent("Θ has infinite index in K_A".into()));
    }
    Ok(ThetaLattice {
        basis,
        index,
        k_a,
        k_b,
    })
}

/// Exact check of `J_0 B − J_0 = (n−l−1) L`. Requires `l ≥ 1`.
pub fn verify_j0_relation(form: &StandardForm) -> Result<bool, InvariantsError> {
    if form.l == 0 {
        return Err(InvariantsError::TypeZero);
    }
    let r = form.r();
    let j0 = vec![BigInt::from(1); r];
    let lhs = form.b.left_mul_vec(&j0);
    let m = BigInt::from(r - 1);
    Ok(lhs
        .iter()
        .zip(&form.row)
        .all(|(x, lx)| x - 1 == &m * lx))
}

/// Laurent monomial `z^I` with `I A = I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantMonomial {
    #[serde(with = "bigjson::vector")]
    pub exponent: Vec<BigInt>,
    pub display: String,
}

fn var(i: usize, l: usize) -> String {
    if l > 0 && i >= l {
        format!("w{}", i + 1)
    } else {
        format!("z{}", i + 1)
    }
}

fn power(name: String, e: &BigInt) -> String {
    if e == &BigInt::from(1) {
        name
    } else {
        format!("{name}^{e}")
    }
}

/// Renders `z^I` as `z1/(w2*w3)`; the first `l` variables are `z`, the
/// rest `w` (all `z` when `l = 0`).
pub fn render_monomial(exponent: &[BigInt], l: usize) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (i, e) in exponent.iter().enumerate() {
        if e.is_positive() {
            num.push(power(var(i, l), e));
        } else if e.is_negative() {
            den.push(power(var(i, l), &-e));
        }
    }
    let top = if num.is_empty() {
        "1".to_string()
    } else {
        num.join("*")
    };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", den[0]),
        _ => format!("{top}/({})", den.join("*")),
    }
}

/// The monomials `z^{I_j}` for the HNF basis `I_1, …, I_{m(1)}` of `K_A`.
pub fn invariant_monomials(a: &IntMatrix, l: usize) -> Vec<InvariantMonomial> {
    left_fixed_lattice(a)
        .rows()
        .iter()
        .map(|r| InvariantMonomial {
            display: render_monomial(r, l),
            exponent: r.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kato::FactorSeq;

    fn kato(n: usize, w: &[usize]) -> KatoMatrix {
        KatoMatrix::from_word(FactorSeq::new(n, w.to_vec()).unwrap()).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_one(kato(3, &[2, 3]).matrix()), 1);
        assert_eq!(multiplicity_one(kato(2, &[1, 2]).matrix()), 0);
        assert_eq!(multiplicity_one(&IntMatrix::identity(4)), 4);
    }

    #[test]
    fn theta_for_top_type() {
        let t = theta_lattice(&kato(3, &[2, 3])).unwrap();
        assert_eq!(t.basis.rows(), &[ints(&[1, -1, -1])]);
        assert_eq!(t.index, LatticeIndex::Finite(1u32.into()));

        let t = theta_lattice(&kato(4, &[3, 4])).unwrap();
        assert_eq!(t.basis, t.k_a);
        assert_eq!(t.basis.rank(), 2);
        assert!(t.k_a.contains(&ints(&[1, 0, -1, -1])));
        assert!(t.k_a.contains(&ints(&[0, 1, -1, -1])));
    }

    #[test]
    fn theta_for_type_zero() {
        let t = theta_lattice(&kato(2, &[1, 2])).unwrap();
        assert_eq!(t.basis.rank(), 0);
        assert_eq!(t.index, LatticeIndex::Finite(1u32.into()));
    }

    #[test]
    fn j0_relation() {
        assert!(verify_j0_relation(kato(3, &[2, 3]).form()).unwrap());
        assert!(verify_j0_relation(kato(4, &[3, 4]).form()).unwrap());
        let mut bad = kato(3, &[2, 3]).form().clone();
        bad.row[1] += 1;
        assert!(!verify_j0_relation(&bad).unwrap());
        assert!(matches!(
            verify_j0_relation(kato(2, &[1, 2]).form()),
            Err(InvariantsError::TypeZero)
        ));
    }

    #[test]
    fn monomials() {
        let m = invariant_monomials(kato(3, &[2, 3]).matrix(), 1);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].display, "z1/(w2*w3)");
        let m = invariant_monomials(kato(4, &[3, 4]).matrix(), 2);
        let shown: Vec<_> = m.iter().map(|x| x.display.as_str()).collect();
        assert_eq!(shown, ["z1/(w3*w4)", "z2/(w3*w4)"]);
        assert!(invariant_monomials(kato(2, &[1, 2]).matrix(), 0).is_empty());
        assert_eq!(render_monomial(&ints(&[2, 0, -1]), 0), "z1^2/z3");
    }
}
