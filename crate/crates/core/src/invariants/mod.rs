//! Closed-form invariants of the Kato manifold `M_A`.

mod betti;
mod geometry;
mod lattices;
mod report;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::kato::KatoError;
use crate::linalg::LinalgError;

pub use betti::{alternating_sum, betti_numbers, euler_characteristic, twisted_betti_numbers};
pub use geometry::{
    alg_dim, anticanonical_h0, canonical_descriptor, hol_vf_dimension, AlgDim, CanonicalBundle,
    HolVfDimension,
};
pub use lattices::{
    invariant_monomials, multiplicity_one, render_monomial, theta_lattice, verify_j0_relation,
    InvariantMonomial, ThetaLattice,
};
pub use report::{build_report, build_report_for, covering_sheets, InvariantReport, PerronAlpha, Pi1Complement};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantsError {
    #[error("the relation needs type l >= 1")]
    TypeZero,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Kato(#[from] KatoError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
