use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{mat_mul, IntMatrix, LinalgError};

/// Characteristic polynomial `det(x·I − a)`, coefficients from the constant
/// term upwards (the last one is 1).
///
/// Faddeev–LeVerrier recursion; every division is exact over ℤ.
pub fn char_poly(a: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let n = a.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = mat_mul(a, &m)?;
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let am = mat_mul(a, &m)?;
        let trace: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    Ok(coeffs)
}
