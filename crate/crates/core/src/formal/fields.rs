use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::{MonomialVectorField, SparseLaurentPoly};
use super::FormalError;
use crate::kato::KatoMatrix;
use crate::linalg::{rank_q, right_kernel, IntMatrix};

fn row_i64(a: &IntMatrix, s: usize) -> Result<Vec<i64>, FormalError> {
    a.row(s)
        .iter()
        .map(|x| x.to_i64().ok_or(FormalError::ExponentOverflow))
        .collect()
}

/// `(F_A)_* X = X`, i.e. `dF_A(X(z)) = X(F_A(z))`, compared symbolically.
///
/// Component `s` of the left side is `Σ_t a_st z^{A_s − e_t} X_t(z)`.
pub fn pushforward_invariance(a: &IntMatrix, x: &MonomialVectorField) -> Result<bool, FormalError> {
    let n = a.n();
    if x.n() != n {
        return Err(FormalError::Dimension {
            expected: n,
            got: x.n(),
        });
    }
    if !x.is_polynomial() {
        return Err(FormalError::NotPolynomial);
    }
    for s in 0..n {
        let row = row_i64(a, s)?;
        let mut lhs = SparseLaurentPoly::zero(n);
        for (t, xt) in x.components().iter().enumerate() {
            if row[t] == 0 || xt.is_zero() {
                continue;
            }
            let mut e = row.clone();
            e[t] -= 1;
            lhs = &lhs + &xt.shift(&e).scale(&BigRational::from_integer(row[t].into()));
        }
        let rhs = x.components()[s].compose_monomial_map(a);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For type `l = n − 2`: `X_{s,t} = z_s ∂/∂z_t` and
/// `Y_j = w_{n−1} w_n ∂/∂z_j` for `1 ≤ s, t, j ≤ n − 2`.
pub fn top_type_generators(n: usize) -> Vec<MonomialVectorField> {
    let l = n.saturating_sub(2);
    let mut out = Vec::new();
    for s in 0..l {
        for t in 0..l {
            let mut e = vec![0; n];
            e[s] = 1;
            out.push(MonomialVectorField::monomial(n, t, &e, 1));
        }
    }
    for j in 0..l {
        let mut e = vec![0; n];
        e[n - 2] = 1;
        e[n - 1] = 1;
        out.push(MonomialVectorField::monomial(n, j, &e, 1));
    }
    out
}

/// The invariant fields `Σ d_st z_s ∂/∂z_t + Σ v_p w_p ∂/∂w_p` for
/// `v ∈ Q = {v : Bv = v, Lv = 0}`, one per basis element.
pub fn linear_invariant_fields(k: &KatoMatrix) -> Vec<MonomialVectorField> {
    let n = k.n();
    let form = k.form();
    let l = form.l;
    let r = form.r();
    let mut out = Vec::new();
    for s in 0..l {
        for t in 0..l {
            let mut e = vec![0; n];
            e[s] = 1;
            out.push(MonomialVectorField::monomial(n, t, &e, 1));
        }
    }
    let mut rows = form.b.minus_identity().rows();
    if l > 0 {
        rows.push(form.row.clone());
    }
    for v in right_kernel(&rows, r).rows() {
        let mut comps = vec![SparseLaurentPoly::zero(n); n];
        for (p, c) in v.iter().enumerate() {
            let mut e = vec![0; n];
            e[l + p] = 1;
            comps[l + p] = SparseLaurentPoly::monomial(e, BigRational::from_integer(c.clone()));
        }
        out.push(MonomialVectorField::from_components(comps));
    }
    out
}

/// Rank over ℚ of the coefficient vectors of the fields.
pub fn independent_count(fields: &[MonomialVectorField]) -> usize {
    let mut keys = BTreeMap::new();
    for f in fields {
        for (key, _) in f.coefficients() {
            let next = keys.len();
            keys.entry((key.0, key.1.clone())).or_insert(next);
        }
    }
    // Clear denominators row by row; rank is unchanged.
    let rows: Vec<Vec<BigInt>> = fields
        .iter()
        .map(|f| {
            let mut row = vec![BigRational::zero(); keys.len()];
            for ((t, e), c) in f.coefficients() {
                row[keys[&(t, e.clone())]] = c.clone();
            }
            let den = row
                .iter()
                .fold(BigInt::from(1), |acc, c| num_integer::lcm(acc, c.denom().clone()));
            row.iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    if keys.is_empty() {
        return 0;
    }
    rank_q(&rows)
}
