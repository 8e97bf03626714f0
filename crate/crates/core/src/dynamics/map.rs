use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::point::{abs_sq, check_complex, GaussRat, GaussianRationalPoint};
use super::DynamicsError;
use crate::kato::{factorize, KatoError, KatoMatrix};
use crate::limits::{self, ResourceError};
use crate::linalg::IntMatrix;

/// `z^e` for an integer exponent, with a size check after every product.
pub(crate) fn pow_checked(z: &GaussRat, e: &BigInt) -> Result<GaussRat, DynamicsError> {
    if e.is_zero() {
        return Ok(GaussRat::one());
    }
    let base = if e.is_negative() {
        if z.is_zero() {
            return Err(DynamicsError::ZeroToNegativePower { coordinate: 0 });
        }
        // 1/z = conj(z)/|z|²
        z.conj().unscale(abs_sq(z))
    } else {
        z.clone()
    };
    if base.is_zero() || base.is_one() {
        return Ok(base);
    }
    let mut e = e
        .abs()
        .to_u64()
        .ok_or(ResourceError {
            digits: u64::MAX,
            cap: limits::digit_cap(),
        })?;
    let mut acc = GaussRat::one();
    let mut sq = base;
    loop {
        if e & 1 == 1 {
            acc = &acc * &sq;
            check_complex(&acc)?;
        }
        e >>= 1;
        if e == 0 {
            return Ok(acc);
        }
        sq = &sq * &sq;
        check_complex(&sq)?;
    }
}

/// `F_A(z) = z^A`, the `i`-th coordinate being `∏_j z_j^{a_ij}`.
pub fn eval_map(a: &IntMatrix, z: &GaussianRationalPoint) -> Result<GaussianRationalPoint, DynamicsError> {
    let n = a.n();
    if z.dim() != n {
        return Err(DynamicsError::Dimension {
            expected: n,
            got: z.dim(),
        });
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = GaussRat::one();
        for (j, zj) in z.coords().iter().enumerate() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            let f = pow_checked(zj, e).map_err(|err| match err {
                DynamicsError::ZeroToNegativePower { .. } => {
                    DynamicsError::ZeroToNegativePower { coordinate: j + 1 }
                }
                other => other,
            })?;
            acc = &acc * &f;
            check_complex(&acc)?;
        }
        out.push(acc);
    }
    Ok(GaussianRationalPoint::new(out))
}

/// `A^{-1} = [[I, −L B⁻¹ (every row)], [0, B⁻¹]]`, read off the block form.
pub fn inverse_matrix(k: &KatoMatrix) -> Result<IntMatrix, DynamicsError> {
    let form = k.form();
    let l = form.l;
    let b_inv = form.b.inverse_unimodular()?;
    let top: Vec<BigInt> = if l == 0 {
        Vec::new()
    } else {
        b_inv.left_mul_vec(&form.row).into_iter().map(|x| -x).collect()
    };
    Ok(IntMatrix::from_fn(k.n(), |i, j| match (i < l, j < l) {
        (true, true) if i == j => BigInt::one(),
        (_, true) => BigInt::zero(),
        (true, false) => top[j - l].clone(),
        (false, false) => b_inv.get(i - l, j - l).clone(),
    }))
}

/// Checks that `z` lies in `ℂˡ × (ℂ*)ⁿ⁻ˡ`.
pub fn check_domain(k: &KatoMatrix, z: &GaussianRationalPoint) -> Result<(), DynamicsError> {
    if z.dim() != k.n() {
        return Err(DynamicsError::Dimension {
            expected: k.n(),
            got: z.dim(),
        });
    }
    match z.first_zero_from(k.l()) {
        Some(i) => Err(DynamicsError::Domain { coordinate: i + 1 }),
        None => Ok(()),
    }
}

/// The inverse germ `H_A = F_{A⁻¹}`, defined on `ℂˡ × (ℂ*)ⁿ⁻ˡ`.
pub fn eval_inverse(k: &KatoMatrix, z: &GaussianRationalPoint) -> Result<GaussianRationalPoint, DynamicsError> {
    check_domain(k, z)?;
    eval_map(&inverse_matrix(k)?, z)
}

/// Whether `F_A` maps the closed unit ball into the open one. This fails
/// exactly for the words `(q, n, …, n)`.
pub fn contracts_unit_ball(a: &IntMatrix) -> Result<bool, KatoError> {
    let seq = factorize(a)?;
    let n = seq.n();
    Ok(!seq.indices()[1..].iter().all(|&j| j == n))
}

/// For a word `(q, n, …, n)`, the boundary point `e_n` and its image `e_q`.
pub fn unit_ball_witness(a: &IntMatrix) -> Result<Option<(GaussianRationalPoint, GaussianRationalPoint)>, DynamicsError> {
    if contracts_unit_ball(a)? {
        return Ok(None);
    }
    let n = a.n();
    let en = GaussianRationalPoint::basis(n, n - 1);
    let image = eval_map(a, &en)?;
    Ok(Some((en, image)))
}

/// `z ∈ 𝔹*`: `‖z‖ < 1` and the last `n − l` coordinates are non-zero.
pub fn in_punctured_ball(l: usize, z: &GaussianRationalPoint) -> bool {
    z.first_zero_from(l).is_none() && z.norm_sq() < BigRational::one()
}
