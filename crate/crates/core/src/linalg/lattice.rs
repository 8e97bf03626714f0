use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hnf::{hermite_normal_form, smith_invariants};
use super::{IntMatrix, LinalgError};
use crate::bigjson;

/// Sublattice of ℤᵐ, stored as the non-zero rows of its row Hermite normal
/// form. Two `LatticeBasis` values are equal iff they span the same lattice.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBasis {
    ambient_dim: usize,
    #[serde(with = "bigjson::rows")]
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// Lattice spanned by arbitrary generators (dependent or zero rows allowed).
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        if let Some(bad) = gens.iter().find(|g| g.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch(ambient_dim, bad.len()));
        }
        let d = hermite_normal_form(gens);
        let rows = d.h.into_iter().take(d.rank).collect();
        Ok(LatticeBasis { ambient_dim, rows })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            rows: IntMatrix::identity(ambient_dim).rows(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter()
            .position(|x| !x.is_zero())
            .expect("basis rows are non-zero")
    }

    /// Integer coordinates of `v` in this basis.
    ///
    /// `Ok(None)` means `v` lies in the rational span but not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch(self.ambient_dim, v.len()));
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut integral = true;
        // Forward substitution along the echelon pivots. A non-integral
        // coordinate rescales the residual so the arithmetic stays in ℤ; the
        // coordinates are then only used for the span test.
        for row in &self.rows {
            let p = Self::pivot(row);
            let piv = &row[p];
            let g = rest[p].gcd(piv);
            let (mut q_num, mut q_den) = if g.is_zero() {
                (BigInt::zero(), BigInt::from(1))
            } else {
                (&rest[p] / &g, piv / &g)
            };
            if q_den.is_negative() {
                q_num = -q_num;
                q_den = -q_den;
            }
            if q_den != BigInt::from(1) {
                integral = false;
                for x in rest.iter_mut() {
                    *x *= &q_den;
                }
            }
            for (x, r) in rest.iter_mut().zip(row) {
                *x -= &q_num * r;
            }
            coords.push(q_num);
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(LinalgError::NotInSpan);
        }
        Ok(integral.then_some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        matches!(self.coordinates(v), Ok(Some(_)))
    }
}

impl fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(ℤ^{}; ", self.ambient_dim)?;
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({})", items.join(","))
            })
            .collect();
        write!(f, "{})", rows.join(" "))
    }
}

/// Index of one lattice in another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigUint),
    Infinite,
}

impl LatticeIndex {
    pub fn is_finite(&self) -> bool {
        matches!(self, LatticeIndex::Finite(_))
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(v) => write!(f, "{v}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for LatticeIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LatticeIndex::Finite(v) => bigjson::scalar::serialize(&BigInt::from(v.clone()), s),
            LatticeIndex::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for LatticeIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        if v.as_str() == Some("infinite") {
            return Ok(LatticeIndex::Infinite);
        }
        let x: bigjson::JsonInt = serde_json::from_value(v).map_err(D::Error::custom)?;
        x.0.to_biguint()
            .filter(|u| !u.is_zero())
            .map(LatticeIndex::Finite)
            .ok_or_else(|| D::Error::custom("lattice index must be a positive integer"))
    }
}

/// `[sup : sub]`, computed from the Smith form of the change-of-basis matrix.
///
/// Every row of `sub` must be a lattice point of `sup`; the index is
/// `Infinite` when `sub` has smaller rank.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<LatticeIndex, LinalgError> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(LinalgError::DimensionMismatch(sub.ambient_dim, sup.ambient_dim));
    }
    let mut change = Vec::with_capacity(sub.rank());
    for row in sub.rows() {
        match sup.coordinates(row)? {
            Some(c) => change.push(c),
            None => return Err(LinalgError::NotContained),
        }
    }
    if sub.rank() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    if sup.rank() == 0 {
        return Ok(LatticeIndex::Finite(BigUint::from(1u32)));
    }
    let inv = smith_invariants(&change);
    let index: BigInt = inv.iter().product();
    Ok(LatticeIndex::Finite(
        index.to_biguint().expect("Smith invariants are positive"),
    ))
}

/// Lattice of row vectors `v` with `v·a = v`.
pub fn left_fixed_lattice(a: &IntMatrix) -> LatticeBasis {
    let n = a.n();
    let d = hermite_normal_form(&a.minus_identity().rows());
    let kernel: Vec<Vec<BigInt>> = d.u[d.rank..].to_vec();
    LatticeBasis::from_generators(n, &kernel).expect("kernel rows have length n")
}

/// Integer solutions `v` of `M v = 0` for an `m × k` matrix given by rows.
pub fn right_kernel(rows: &[Vec<BigInt>], k: usize) -> LatticeBasis {
    let transposed: Vec<Vec<BigInt>> = (0..k)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    if rows.is_empty() {
        return LatticeBasis::full(k);
    }
    let d = hermite_normal_form(&transposed);
    LatticeBasis::from_generators(k, &d.u[d.rank..]).expect("kernel rows have length k")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lat(m: usize, rows: &[&[i64]]) -> LatticeBasis {
        let gens: Vec<Vec<BigInt>> = rows.iter().map(|r| v(r)).collect();
        LatticeBasis::from_generators(m, &gens).unwrap()
    }

    #[test]
    fn fixed_lattice_examples() {
        let a = IntMatrix::parse("1,0,2;0,0,1;0,1,2").unwrap();
        let k = left_fixed_lattice(&a);
        assert_eq!(k.rank(), 1);
        assert_eq!(k.rows(), &[v(&[1, -1, -1])]);

        let k = left_fixed_lattice(&IntMatrix::parse("0,1;1,2").unwrap());
        assert_eq!(k.rank(), 0);

        let k = left_fixed_lattice(&IntMatrix::identity(3));
        assert_eq!(k, LatticeBasis::full(3));
    }

    #[test]
    fn right_kernel_examples() {
        let k = right_kernel(&[v(&[1, 1, 0]), v(&[0, 1, 1])], 3);
        assert_eq!(k.rows(), &[v(&[1, -1, 1])]);
        assert_eq!(right_kernel(&[v(&[1, 0]), v(&[0, 1])], 2).rank(), 0);
        assert_eq!(right_kernel(&[], 2), LatticeBasis::full(2));
    }

    #[test]
    fn index_examples() {
        let full = LatticeBasis::full(2);
        let doubled = lat(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            lattice_index(&doubled, &full).unwrap(),
            LatticeIndex::Finite(4u32.into())
        );
        assert_eq!(
            lattice_index(&full, &full).unwrap(),
            LatticeIndex::Finite(1u32.into())
        );
        let line = lat(2, &[&[2, 0]]);
        assert_eq!(lattice_index(&line, &full).unwrap(), LatticeIndex::Infinite);
    }

    #[test]
    fn containment_errors() {
        let sup = lat(2, &[&[2, 0], &[0, 2]]);
        let sub = LatticeBasis::full(2);
        assert!(matches!(
            lattice_index(&sub, &sup),
            Err(LinalgError::NotContained)
        ));
        let axis = lat(2, &[&[1, 0]]);
        let other = lat(2, &[&[0, 1]]);
        assert!(matches!(
            lattice_index(&other, &axis),
            Err(LinalgError::NotInSpan)
        ));
    }

    #[test]
    fn generators_are_canonicalized() {
        let a = lat(3, &[&[2, -2, -2], &[1, -1, -1]]);
        let b = lat(3, &[&[-1, 1, 1]]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[3, -3, -3])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn index_serializes_as_number_or_string() {
        let s = serde_json::to_string(&LatticeIndex::Finite(3u32.into())).unwrap();
        assert_eq!(s, "3");
        let s = serde_json::to_string(&LatticeIndex::Infinite).unwrap();
        assert_eq!(s, "\"infinite\"");
        let back: LatticeIndex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, LatticeIndex::Infinite);
    }
}
