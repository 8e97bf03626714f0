use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{factorize, KatoError};
use crate::bigjson;
use crate::linalg::IntMatrix;

/// Block form `A = [[I_l, G], [0, B]]` of a type-`l` Kato matrix.
///
/// Every row of `G` equals `L`, so `F_A(z, w) = (z_1 w^L, …, z_l w^L, F_B(w))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardForm {
    pub l: usize,
    #[serde(rename = "G", with = "bigjson::rows")]
    pub g: Vec<Vec<BigInt>>,
    #[serde(rename = "B")]
    pub b: IntMatrix,
    #[serde(rename = "L", with = "bigjson::vector")]
    pub row: Vec<BigInt>,
}

impl StandardForm {
    pub fn n(&self) -> usize {
        self.l + self.b.n()
    }

    /// `n − l`, the size of `B`.
    pub fn r(&self) -> usize {
        self.b.n()
    }

    pub fn reassemble(&self) -> IntMatrix {
        let l = self.l;
        IntMatrix::from_fn(self.n(), |i, j| match (i < l, j < l) {
            (true, true) if i == j => BigInt::one(),
            (true, true) | (false, true) => BigInt::zero(),
            (true, false) => self.g[i][j - l].clone(),
            (false, false) => self.b.get(i - l, j - l).clone(),
        })
    }
}

/// Splits `a` at `l`. Fails if the top-left block is not `I_l`, the
/// bottom-left block is not zero, or the rows of `G` differ.
pub fn standard_form(a: &IntMatrix, l: usize) -> Result<StandardForm, KatoError> {
    let n = a.n();
    if l + 2 > n {
        return Err(KatoError::Inconsistent(format!("type {l} too large for n = {n}")));
    }
    for i in 0..n {
        for j in 0..l {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if *a.get(i, j) != want {
                return Err(KatoError::Inconsistent(format!(
                    "entry ({}, {}) breaks the block form at l = {l}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let g = a.block(0..l, l..n);
    let row = g.first().cloned().unwrap_or_default();
    if g.iter().any(|r| *r != row) {
        return Err(KatoError::Inconsistent("rows of G differ".into()));
    }
    Ok(StandardForm {
        l,
        g,
        b: a.trailing_block(l),
        row,
    })
}

fn bool_mul(x: &[Vec<bool>], y: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && y[k][j])).collect())
        .collect()
}

fn pattern(b: &IntMatrix) -> Vec<Vec<bool>> {
    (0..b.n())
        .map(|i| (0..b.n()).map(|j| !b.get(i, j).is_zero()).collect())
        .collect()
}

fn kato_form(a: &IntMatrix) -> Result<StandardForm, KatoError> {
    let seq = factorize(a)?;
    if !seq.is_kato() {
        return Err(KatoError::NotKato);
    }
    standard_form(a, seq.type_l())
}

/// True iff the `B` block is strictly positive.
pub fn is_l_positive(a: &IntMatrix) -> Result<bool, KatoError> {
    Ok(kato_form(a)?.b.is_positive())
}

/// Least `p ≥ 1` with `A^p` l-positive, i.e. `B^p > 0`. Always `p ≤ n − l`.
///
/// Only the zero pattern matters, so this runs on boolean matrices.
pub fn positivity_power(a: &IntMatrix) -> Result<usize, KatoError> {
    let form = kato_form(a)?;
    let base = pattern(&form.b);
    let mut cur = base.clone();
    let bound = form.r();
    for p in 1..=bound {
        if cur.iter().flatten().all(|&x| x) {
            return Ok(p);
        }
        cur = bool_mul(&cur, &base);
    }
    Err(KatoError::Inconsistent(format!(
        "B^p has a zero entry for every p <= {bound}"
    )))
}

/// The `(n−1)`-dimensional Kato matrix obtained by deleting line and column
/// `j` (one-based, `1 ≤ j ≤ l`).
pub fn erase_index(a: &IntMatrix, j: usize) -> Result<IntMatrix, KatoError> {
    let form = kato_form(a)?;
    if j == 0 || j > form.l {
        return Err(KatoError::IndexExceedsType { j, l: form.l });
    }
    Ok(a.delete_row_col(j - 1))
}
