//! Exact computations on Kato matrices: products of the elementary
//! blow-up matrices `A_1, …, A_n` of `GL(n, ℤ)`, the monomial germs
//! `z ↦ z^A` they define, and the invariants of the associated compact
//! complex manifolds.
//!
//! Integer and rational arithmetic is arbitrary precision throughout. The
//! only floating-point code is the Perron eigenvalue iteration in
//! [`dynamics`], which reports its own residual.

mod bigjson;
pub mod dynamics;
pub mod formal;
pub mod invariants;
pub mod kato;
pub mod limits;
pub mod linalg;

pub use dynamics::{GaussianRationalPoint, Membership, PerronData};
pub use formal::{MonomialVectorField, SparseLaurentPoly};
pub use invariants::{build_report, InvariantReport};
pub use kato::{compose_factors, factorize, is_kato, FactorSeq, KatoError, KatoMatrix, StandardForm};
pub use linalg::{IntMatrix, LatticeBasis, LatticeIndex, LinalgError};
