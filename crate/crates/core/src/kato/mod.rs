//! Kato matrices: words in the elementary matrices `A_1, …, A_n`, their
//! unique factorization, and the block normal form `[[I_l, G], [0, B]]`.

mod factor;
mod standard;
mod word;

use std::fmt;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use factor::{compose_factors, elementary, factorize, is_kato, precedes, type_of, KatoMatrix};
pub use standard::{erase_index, is_l_positive, positivity_power, standard_form, StandardForm};
pub use word::{cover_sheets, cyclic_normal_form, det_from_word, FactorSeq};

/// Why a matrix is not a product of elementary matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAProductReason {
    /// `n < 2`.
    Dimension,
    /// The identity is the empty word; words have at least one letter.
    Identity,
    NegativeEntry,
    /// `A^(n) − Σ A^(i)` has a negative entry.
    NegativeRemainder,
    /// `A^(n) − Σ A^(i)` vanishes.
    ZeroRemainder,
    /// The remaining columns are not ordered by `≺`.
    ColumnOrder,
    /// The remainder column fits nowhere in the `≺`-chain.
    NoInsertion,
    IterationCap,
}

impl fmt::Display for NotAProductReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dimension => "dimension must be at least 2",
            Self::Identity => "the identity is not a non-empty word",
            Self::NegativeEntry => "negative entry",
            Self::NegativeRemainder => "last column minus the others has a negative entry",
            Self::ZeroRemainder => "last column equals the sum of the others",
            Self::ColumnOrder => "columns are not in chain order",
            Self::NoInsertion => "no valid insertion position for the peeled column",
            Self::IterationCap => "iteration cap exceeded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KatoError {
    #[error("NotAProduct: {0}")]
    NotAProduct(NotAProductReason),
    #[error("AmbiguousOrder: {positions} valid insertion positions at step {step}")]
    AmbiguousOrder { step: usize, positions: usize },
    #[error("not a Kato matrix: the word is a power of A_n")]
    NotKato,
    #[error("index {j} out of range 1..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("empty factor word")]
    EmptyWord,
    #[error("index {j} exceeds the type l = {l}")]
    IndexExceedsType { j: usize, l: usize },
    #[error("matrix is not l-positive")]
    NotLPositive,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl KatoError {
    /// True for the errors that mean "this input is not a Kato matrix".
    pub fn is_not_kato(&self) -> bool {
        matches!(
            self,
            KatoError::NotAProduct(_) | KatoError::AmbiguousOrder { .. } | KatoError::NotKato
        )
    }
}
