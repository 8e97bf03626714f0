//! Fixed inputs shared by the benchmarks.

use katolab::kato::{FactorSeq, KatoMatrix};

/// `A_1 A_2 … A_n` repeated `reps` times: a type-0 word of length `n·reps`.
pub fn staircase(n: usize, reps: usize) -> FactorSeq {
    let idx: Vec<usize> = (1..=n).cycle().take(n * reps).collect();
    FactorSeq::new(n, idx).expect("indices are in range")
}

/// `(A_{n−1} A_n)^p`, of type `n − 2`.
pub fn top_type(n: usize, p: usize) -> KatoMatrix {
    let idx: Vec<usize> = [n - 1, n].iter().copied().cycle().take(2 * p).collect();
    KatoMatrix::from_word(FactorSeq::new(n, idx).expect("indices are in range"))
        .expect("word is Kato")
}
