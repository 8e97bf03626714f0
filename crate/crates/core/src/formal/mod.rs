//! Symbolic checks of the invariance equations for vector fields and
//! one-forms under the germ `F_A`.

mod fields;
mod poly;
mod series;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{root_of_unity_orders, DynamicsError};
use crate::kato::{positivity_power, KatoError};
use crate::linalg::IntMatrix;

pub use fields::{independent_count, linear_invariant_fields, pushforward_invariance, top_type_generators};
pub use poly::{Exponent, MonomialVectorField, SparseLaurentPoly};
pub use series::{
    nullity_profile, one_form_nullity, tangent_field_nullity, SparseEchelon, DEFAULT_DEGREE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormalError {
    #[error("field has {got} components, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("field components must be polynomials")]
    NotPolynomial,
    #[error("matrix must have strictly positive entries")]
    NotPositive,
    #[error("matrix must be l-positive (B > 0)")]
    NotLPositive,
    #[error("exponent does not fit in 64 bits")]
    ExponentOverflow,
    #[error(transparent)]
    Kato(#[from] KatoError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Whether the hypothesis "A positive, no root of unity in the spectrum"
/// holds, under which `M_A − C` carries no non-constant holomorphic
/// functions. Advisory only: nothing is computed about the functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionNote {
    pub positive: bool,
    /// Orders `m` of the roots of unity among the eigenvalues.
    pub root_of_unity_orders: Vec<usize>,
    pub hypothesis_holds: bool,
    pub advice: String,
}

pub fn function_nullity_note(a: &IntMatrix) -> Result<FunctionNote, FormalError> {
    let positive = a.is_positive();
    let orders = root_of_unity_orders(a)?;
    let holds = positive && orders.is_empty();
    let advice = if holds {
        "hypothesis holds: no non-constant holomorphic functions on M_A - C".to_string()
    } else if !orders.is_empty() {
        format!("spectrum contains roots of unity of order {orders:?}; the criterion does not apply")
    } else {
        match positivity_power(a) {
            Ok(p) => format!("matrix is not positive; apply the criterion to A^{p}"),
            Err(_) => "matrix is not positive; the criterion does not apply".to_string(),
        }
    };
    Ok(FunctionNote {
        positive,
        root_of_unity_orders: orders,
        hypothesis_holds: holds,
        advice,
    })
}
