use serde::{Deserialize, Serialize};

use super::map::{check_domain, eval_inverse, eval_map, in_punctured_ball};
use super::point::GaussianRationalPoint;
use super::DynamicsError;
use crate::kato::KatoMatrix;

pub const DEFAULT_MAX_ITER: usize = 256;

/// Result of the forward-orbit search for the stable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// The least `m` with `F^m(z) ∈ 𝔹*`; then `z` lies in the stable set.
    In(usize),
    /// No entry into `𝔹*` within the iteration or size budget. This is not
    /// a proof of non-membership.
    Undetermined,
}

/// Iterates `F_A` from `z` until it enters `𝔹*`.
///
/// Running past the digit cap also gives `Undetermined`.
pub fn stable_membership(
    k: &KatoMatrix,
    z: &GaussianRationalPoint,
    max_iter: usize,
) -> Result<Membership, DynamicsError> {
    check_domain(k, z)?;
    let mut cur = z.clone();
    for m in 0..=max_iter {
        if in_punctured_ball(k.l(), &cur) {
            return Ok(Membership::In(m));
        }
        if m == max_iter {
            break;
        }
        cur = match eval_map(k.matrix(), &cur) {
            Ok(next) => next,
            Err(DynamicsError::Resource(e)) => {
                log::debug!("stable_membership stopped at step {m}: {e}");
                return Ok(Membership::Undetermined);
            }
            Err(e) => return Err(e),
        };
    }
    Ok(Membership::Undetermined)
}

/// `z ∈ 𝔹* − F_A(𝔹*)`, i.e. `z ∈ 𝔹*` and `H_A(z) ∉ 𝔹*`.
pub fn fundamental_domain_membership(
    k: &KatoMatrix,
    z: &GaussianRationalPoint,
) -> Result<bool, DynamicsError> {
    check_domain(k, z)?;
    if !in_punctured_ball(k.l(), z) {
        return Ok(false);
    }
    Ok(!in_punctured_ball(k.l(), &eval_inverse(k, z)?))
}

/// A backward orbit `z, H(z), H²(z), …` followed until it leaves `𝔹*`.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitScan {
    pub orbit: Vec<GaussianRationalPoint>,
    /// Positions in `orbit` that lie in the fundamental domain.
    pub domain_hits: Vec<usize>,
    /// Index of the first point outside `𝔹*`, if reached.
    pub exit: Option<usize>,
}

impl OrbitScan {
    pub fn is_determined(&self) -> bool {
        self.exit.is_some()
    }
}

/// Scans at most `max_steps` backward iterates of a point of `𝔹*`.
pub fn orbit_scan(
    k: &KatoMatrix,
    z: &GaussianRationalPoint,
    max_steps: usize,
) -> Result<OrbitScan, DynamicsError> {
    check_domain(k, z)?;
    let mut orbit = vec![z.clone()];
    let mut domain_hits = Vec::new();
    let mut exit = None;
    for j in 0..=max_steps {
        let cur = &orbit[j];
        if !in_punctured_ball(k.l(), cur) {
            exit = Some(j);
            break;
        }
        if j == max_steps {
            break;
        }
        let prev = match eval_inverse(k, cur) {
            Ok(p) => p,
            Err(DynamicsError::Resource(_)) => break,
            Err(e) => return Err(e),
        };
        if !in_punctured_ball(k.l(), &prev) {
            domain_hits.push(j);
        }
        orbit.push(prev);
    }
    Ok(OrbitScan {
        orbit,
        domain_hits,
        exit,
    })
}
