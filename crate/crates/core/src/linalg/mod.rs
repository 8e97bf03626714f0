//! Exact integer linear algebra: products, Hermite/Smith normal forms,
//! fixed lattices and lattice indices.

mod charpoly;
mod hnf;
mod lattice;
mod matrix;

use num_bigint::BigInt;
use thiserror::Error;

use crate::limits::ResourceError;

pub use charpoly::char_poly;
pub use hnf::{hermite_normal_form, smith_invariants, HnfDecomp};
pub use lattice::{lattice_index, left_fixed_lattice, right_kernel, LatticeBasis, LatticeIndex};
pub use matrix::{mat_mul, rank_q, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty matrix")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("vector is not in the rational span of the lattice")]
    NotInSpan,
    #[error("sublattice is not contained in the lattice")]
    NotContained,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// Geometric multiplicity of the eigenvalue 1, `n − rank_ℚ(a − I)`.
pub fn multiplicity_of_one(a: &IntMatrix) -> usize {
    a.n() - rank_q(&a.minus_identity().rows())
}
