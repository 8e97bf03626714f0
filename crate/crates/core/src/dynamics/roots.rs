//! Detection of roots of unity among the eigenvalues of an integer matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::DynamicsError;
use crate::linalg::{char_poly, IntMatrix};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().expect("non-zero divisor");
    while r.len() >= b.len() {
        let q = r.last().unwrap() / lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Monic greatest common divisor over ℚ.
fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

fn to_q(p: &[BigInt]) -> Poly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

fn euler_phi(mut m: usize) -> usize {
    let mut phi = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// `Φ_1, …, Φ_max` with `Φ_m = (x^m − 1) / ∏_{d | m, d < m} Φ_d`.
fn cyclotomics(max: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = vec![Vec::new()];
    for m in 1..=max {
        let mut p: Poly = vec![BigRational::zero(); m + 1];
        p[0] = -BigRational::one();
        p[m] = BigRational::one();
        for d in (1..m).filter(|d| m % d == 0) {
            p = div_exact(&p, &out[d]);
        }
        out.push(p);
    }
    out
}

fn div_exact(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for shift in (0..q.len()).rev() {
        let c = &r[shift + b.len() - 1] / lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

/// The orders `m` of the roots of unity that are eigenvalues of `a`.
pub fn root_of_unity_orders(a: &IntMatrix) -> Result<Vec<usize>, DynamicsError> {
    let n = a.n();
    let chi = to_q(&char_poly(a)?);
    // φ(m) ≥ √(m/2), so φ(m) ≤ n forces m ≤ 2n².
    let max = 2 * n * n + 2;
    let phis = cyclotomics(max);
    Ok((1..=max)
        .filter(|&m| euler_phi(m) <= n)
        .filter(|&m| gcd(&chi, &phis[m]).len() > 1)
        .collect())
}

/// True iff some eigenvalue of `a` is a root of unity, decided by exact
/// gcds of the characteristic polynomial with cyclotomic polynomials.
pub fn root_of_unity_check(a: &IntMatrix) -> Result<bool, DynamicsError> {
    Ok(!root_of_unity_orders(a)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    fn ints(p: &Poly) -> Vec<i64> {
        use num_traits::ToPrimitive;
        p.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let c = cyclotomics(12);
        assert_eq!(ints(&c[1]), vec![-1, 1]);
        assert_eq!(ints(&c[4]), vec![1, 0, 1]);
        assert_eq!(ints(&c[6]), vec![1, -1, 1]);
        assert_eq!(ints(&c[12]), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn examples() {
        assert!(root_of_unity_check(&IntMatrix::identity(3)).unwrap());
        assert!(!root_of_unity_check(&m("0,1;1,2")).unwrap());
        assert!(!root_of_unity_check(&m("1,2;2,5")).unwrap());
        assert_eq!(root_of_unity_orders(&m("1,0,2;0,0,1;0,1,2")).unwrap(), vec![1]);
        // rotation by a quarter turn
        assert_eq!(root_of_unity_orders(&m("0,-1;1,0")).unwrap(), vec![4]);
        assert_eq!(root_of_unity_orders(&m("-1,0;0,1")).unwrap(), vec![1, 2]);
    }
}
