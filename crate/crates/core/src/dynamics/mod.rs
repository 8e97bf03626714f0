//! Dynamics of the monomial germ `F_A(z) = z^A` on exact Gaussian-rational
//! points, plus the floating-point Perron data of the block `B`.

mod contraction;
mod map;
mod perron;
mod point;
mod roots;
mod stable;

use thiserror::Error;

use crate::kato::KatoError;
use crate::limits::ResourceError;
use crate::linalg::LinalgError;

pub use contraction::{certify_ball12_contraction, certify_contraction, Ball, BallSampler, ContractionReport};
pub use map::{
    check_domain, contracts_unit_ball, eval_inverse, eval_map, in_punctured_ball, inverse_matrix,
    unit_ball_witness,
};
pub use perron::{perron_data, PerronData, QuadraticSurd, DEFAULT_TOL};
pub use point::{GaussRat, GaussianRationalPoint};
pub use roots::{root_of_unity_check, root_of_unity_orders};
pub use stable::{
    fundamental_domain_membership, orbit_scan, stable_membership, Membership, OrbitScan,
    DEFAULT_MAX_ITER,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("coordinate {coordinate} must be non-zero")]
    Domain { coordinate: usize },
    #[error("coordinate {coordinate} is zero but carries a negative exponent")]
    ZeroToNegativePower { coordinate: usize },
    #[error("power iteration did not converge ({iterations} iterations, residual {residual:e})")]
    PerronNotConverged { iterations: usize, residual: f64 },
    #[error("matrix entries are too large for floating point")]
    NonFinite,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Kato(#[from] KatoError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}
