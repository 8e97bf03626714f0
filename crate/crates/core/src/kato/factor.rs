use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::standard::{standard_form, StandardForm};
use super::{FactorSeq, KatoError, NotAProductReason};
use crate::linalg::{mat_mul, IntMatrix};

/// `A_j`: columns `e_1, …, e_{j−1}, e_{j+1}, …, e_n, (1, …, 1)`.
pub fn elementary(n: usize, j: usize) -> Result<IntMatrix, KatoError> {
    if n < 2 {
        return Err(KatoError::Dimension(n));
    }
    if j == 0 || j > n {
        return Err(KatoError::IndexOutOfRange { j, n });
    }
    let j = j - 1;
    Ok(IntMatrix::from_fn(n, |r, c| {
        let one = if c == n - 1 {
            true
        } else if c < j {
            r == c
        } else {
            r == c + 1
        };
        if one {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// `A_{j_1} ⋯ A_{j_k}`, built by right multiplication on columns.
pub fn compose_factors(seq: &FactorSeq) -> Result<IntMatrix, KatoError> {
    let n = seq.n();
    let mut cols = IntMatrix::identity(n).rows();
    for &j in seq.indices() {
        // B·A_j = (B¹ … B^{j−1}, B^{j+1} … Bⁿ, Σ Bⁱ)
        let sum: Vec<BigInt> = (0..n)
            .map(|r| cols.iter().map(|c| &c[r]).sum())
            .collect();
        cols.remove(j - 1);
        cols.push(sum);
    }
    let m = IntMatrix::from_columns(&cols);
    m.check_limits()?;
    Ok(m)
}

fn basis_index(v: &[BigInt]) -> Option<usize> {
    let mut idx = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || idx.is_some() {
            return None;
        }
        idx = Some(i);
    }
    idx
}

/// The column order `x ≺ y`: by index when both are standard basis
/// vectors, otherwise componentwise `≤` with at least one strict entry.
pub fn precedes(x: &[BigInt], y: &[BigInt]) -> bool {
    if let (Some(i), Some(j)) = (basis_index(x), basis_index(y)) {
        return i < j;
    }
    x.iter().zip(y).all(|(a, b)| a <= b) && x.iter().zip(y).any(|(a, b)| a < b)
}

/// Recovers the unique word of a product of elementary matrices by peeling
/// one factor from the right at a time.
///
/// Powers `A_n^p` are accepted here; see [`is_kato`] for the exclusion.
pub fn factorize(a: &IntMatrix) -> Result<FactorSeq, KatoError> {
    use NotAProductReason::*;
    let n = a.n();
    let fail = |r| Err(KatoError::NotAProduct(r));
    if n < 2 {
        return fail(Dimension);
    }
    if a.is_identity() {
        return fail(Identity);
    }
    if !a.is_nonnegative() {
        return fail(NegativeEntry);
    }
    // The entry sum drops by at least n − 1 per step.
    let cap = (a.entry_sum() / BigInt::from(n - 1) + 1u32)
        .to_usize()
        .unwrap_or(usize::MAX);
    let mut cols: Vec<Vec<BigInt>> = (0..n).map(|j| a.column(j)).collect();
    let mut rev = Vec::new();
    for step in 0.. {
        if step >= cap {
            return fail(IterationCap);
        }
        let last = cols.pop().expect("n >= 2");
        let c: Vec<BigInt> = (0..n)
            .map(|r| &last[r] - cols.iter().map(|col| &col[r]).sum::<BigInt>())
            .collect();
        if c.iter().any(|x| x.is_negative()) {
            return fail(NegativeRemainder);
        }
        if c.iter().all(|x| x.is_zero()) {
            return fail(ZeroRemainder);
        }
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if !precedes(&cols[i], &cols[j]) {
                    return fail(ColumnOrder);
                }
            }
        }
        let valid: Vec<usize> = (0..=cols.len())
            .filter(|&p| {
                cols[..p].iter().all(|x| precedes(x, &c)) && cols[p..].iter().all(|x| precedes(&c, x))
            })
            .collect();
        let pos = match valid.as_slice() {
            [] => return fail(NoInsertion),
            [p] => *p,
            _ => {
                log::warn!(
                    "ambiguous insertion at step {step}: positions {valid:?} for column {c:?}"
                );
                return Err(KatoError::AmbiguousOrder {
                    step,
                    positions: valid.len(),
                });
            }
        };
        cols.insert(pos, c);
        rev.push(pos + 1);
        if cols.iter().enumerate().all(|(i, col)| basis_index(col) == Some(i)) {
            break;
        }
    }
    rev.reverse();
    FactorSeq::new(n, rev)
}

/// True iff `a` is a product of elementary matrices other than `A_n^p`.
pub fn is_kato(a: &IntMatrix) -> bool {
    factorize(a).is_ok_and(|s| s.is_kato())
}

/// The type `l = min j_p − 1`.
pub fn type_of(a: &IntMatrix) -> Result<usize, KatoError> {
    let seq = factorize(a)?;
    if !seq.is_kato() {
        return Err(KatoError::NotKato);
    }
    Ok(seq.type_l())
}

/// A validated Kato matrix together with its word and block form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatoMatrix {
    matrix: IntMatrix,
    word: FactorSeq,
    form: StandardForm,
}

impl KatoMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self, KatoError> {
        let word = factorize(&matrix)?;
        Self::with_word(matrix, word)
    }

    pub fn from_word(word: FactorSeq) -> Result<Self, KatoError> {
        let matrix = compose_factors(&word)?;
        Self::with_word(matrix, word)
    }

    fn with_word(matrix: IntMatrix, word: FactorSeq) -> Result<Self, KatoError> {
        if !word.is_kato() {
            return Err(KatoError::NotKato);
        }
        let form = standard_form(&matrix, word.type_l())?;
        Ok(KatoMatrix { matrix, word, form })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> &FactorSeq {
        &self.word
    }

    pub fn form(&self) -> &StandardForm {
        &self.form
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn k(&self) -> usize {
        self.word.k()
    }

    pub fn l(&self) -> usize {
        self.form.l
    }

    /// `A^p` as a Kato matrix; its word is the word of `A` repeated.
    pub fn power(&self, p: usize) -> Result<Self, KatoError> {
        Self::from_word(self.word.repeat(p))
    }

    pub fn product(&self, other: &KatoMatrix) -> Result<Self, KatoError> {
        Self::new(mat_mul(&self.matrix, &other.matrix)?)
    }
}
