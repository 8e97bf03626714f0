use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::DynamicsError;
use crate::kato::{positivity_power, KatoMatrix};
use crate::linalg::IntMatrix;

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 100_000;
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// `(a + b√d) / den` with `d` square-free (or `b = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub den: BigInt,
}

/// Splits `m ≥ 0` as `s² · d`, pulling out every square factor found by
/// trial division; a leftover perfect square is absorbed as well.
fn extract_square(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.clone();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    if rest.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && BigInt::from(p * p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        s *= bp.pow(e / 2);
        if e % 2 == 1 {
            d *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    } else {
        d *= rest;
    }
    (s, d)
}

impl QuadraticSurd {
    /// Larger root of `x² − tr·x + det`, if real.
    pub fn dominant_root(tr: &BigInt, det: &BigInt) -> Option<Self> {
        let disc = tr * tr - BigInt::from(4) * det;
        if disc.is_negative() {
            return None;
        }
        let (s, d) = extract_square(&disc);
        let (a, b, d) = if d.is_one() {
            (tr + s, BigInt::zero(), d)
        } else {
            (tr.clone(), s, d)
        };
        let den = BigInt::from(2);
        let g = a.gcd(&b).gcd(&den);
        Some(QuadraticSurd {
            a: a / &g,
            b: b / &g,
            d,
            den: den / &g,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::INFINITY);
        (f(&self.a) + f(&self.b) * f(&self.d).sqrt()) / f(&self.den)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.b.is_zero() {
            self.a.to_string()
        } else {
            let mut s = String::new();
            if !self.a.is_zero() {
                s.push_str(&self.a.to_string());
                if self.b.is_positive() {
                    s.push('+');
                }
            }
            if self.b == -BigInt::one() {
                s.push('-');
            } else if !self.b.is_one() {
                s.push_str(&self.b.to_string());
            }
            s.push('√');
            s.push_str(&self.d.to_string());
            s
        };
        match (self.den.is_one(), self.b.is_zero()) {
            (true, _) => f.write_str(&body),
            (false, true) => write!(f, "{body}/{}", self.den),
            (false, false) => write!(f, "({body})/{}", self.den),
        }
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dominant eigenvalue data of the block `B` of a Kato matrix.
#[derive(Debug, Clone, Serialize)]
pub struct PerronData {
    /// `α(B) = α(B^p)^{1/p}`.
    pub value: f64,
    /// Exact `α(B)` when `B` is 2×2.
    pub exact: Option<QuadraticSurd>,
    /// `α(B^p)` from power iteration.
    pub power_value: f64,
    /// Exact `α(B^p)` when `B` is 2×2.
    pub power_exact: Option<QuadraticSurd>,
    /// Perron vector of `B^p` (also of `B`), normalised to `‖f‖∞ = 1`.
    pub vector: Vec<f64>,
    pub power_used: usize,
    /// `‖B^p f − α(B^p) f‖∞ / (α(B^p) ‖f‖∞)`.
    pub residual: f64,
    pub iterations: usize,
}

fn trace(m: &IntMatrix) -> BigInt {
    (0..m.n()).map(|i| m.get(i, i).clone()).sum()
}

fn apply(m: &[Vec<f64>], f: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(f).map(|(a, b)| a * b).sum())
        .collect()
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Power iteration on the strictly positive power `B^p`, certified by the
/// relative residual. Fails if the residual stays above `tol`.
pub fn perron_data(k: &KatoMatrix, tol: f64) -> Result<PerronData, DynamicsError> {
    let b = &k.form().b;
    let p = positivity_power(k.matrix())?;
    let bp = b.pow(p as u64)?;
    let rows = bp
        .to_f64_rows()
        .filter(|r| r.iter().flatten().all(|x| x.is_finite()))
        .ok_or(DynamicsError::NonFinite)?;

    let mut f = vec![1.0; bp.n()];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let g = apply(&rows, &f);
        lambda = sup_norm(&g);
        let next: Vec<f64> = g.iter().map(|x| x / lambda).collect();
        let step = sup_norm(&next.iter().zip(&f).map(|(a, b)| a - b).collect::<Vec<_>>());
        f = next;
        if step <= tol * 1e-2 {
            let g = apply(&rows, &f);
            lambda = sup_norm(&g);
            let r: Vec<f64> = g.iter().zip(&f).map(|(x, y)| x - lambda * y).collect();
            residual = sup_norm(&r) / lambda;
            if residual <= tol {
                break;
            }
        }
    }
    if residual > tol || f.iter().any(|&x| x <= 0.0) {
        return Err(DynamicsError::PerronNotConverged {
            iterations,
            residual,
        });
    }

    let (exact, power_exact) = if b.n() == 2 {
        (
            QuadraticSurd::dominant_root(&trace(b), &b.det()),
            QuadraticSurd::dominant_root(&trace(&bp), &bp.det()),
        )
    } else {
        (None, None)
    };
    Ok(PerronData {
        value: lambda.powf(1.0 / p as f64),
        exact,
        power_value: lambda,
        power_exact,
        vector: f,
        power_used: p,
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kato::FactorSeq;

    fn kato(s: &str) -> KatoMatrix {
        KatoMatrix::new(IntMatrix::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn square_extraction() {
        let (s, d) = extract_square(&BigInt::from(32));
        assert_eq!((s, d), (BigInt::from(4), BigInt::from(2)));
        let (s, d) = extract_square(&BigInt::from(49));
        assert_eq!((s, d), (BigInt::from(7), BigInt::from(1)));
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64) * 5;
        assert_eq!(extract_square(&big), (BigInt::from(1_000_003u64), BigInt::from(5)));
    }

    #[test]
    fn surd_display() {
        let s = QuadraticSurd::dominant_root(&BigInt::from(6), &BigInt::one()).unwrap();
        assert_eq!(s.to_string(), "3+2√2");
        let s = QuadraticSurd::dominant_root(&BigInt::from(3), &BigInt::one()).unwrap();
        assert_eq!(s.to_string(), "(3+√5)/2");
        let s = QuadraticSurd::dominant_root(&BigInt::from(5), &BigInt::from(6)).unwrap();
        assert_eq!(s.to_string(), "3");
    }

    #[test]
    fn positive_block() {
        let d = perron_data(&kato("1,2;2,5"), DEFAULT_TOL).unwrap();
        assert_eq!(d.power_used, 1);
        assert_eq!(d.exact.as_ref().unwrap().to_string(), "3+2√2");
        assert!((d.value - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
        assert!(d.residual <= 1e-10);
        assert!(d.vector.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn block_needing_a_square() {
        for s in ["0,1;1,2", "1,0,2;0,0,1;0,1,2"] {
            let d = perron_data(&kato(s), DEFAULT_TOL).unwrap();
            assert_eq!(d.power_used, 2);
            assert_eq!(d.exact.as_ref().unwrap().to_string(), "1+√2");
            assert_eq!(d.power_exact.as_ref().unwrap().to_string(), "3+2√2");
            assert!((d.value - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        }
    }

    #[test]
    fn larger_block_has_no_surd() {
        let k = KatoMatrix::from_word(FactorSeq::new(3, vec![1, 3]).unwrap()).unwrap();
        let d = perron_data(&k, DEFAULT_TOL).unwrap();
        assert!(d.exact.is_none());
        assert!(d.value > 1.0);
    }
}
