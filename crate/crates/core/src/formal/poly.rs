use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::IntMatrix;

pub type Exponent = Vec<i64>;

/// Laurent polynomial in `n` variables with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseLaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl SparseLaurentPoly {
    pub fn zero(n: usize) -> Self {
        SparseLaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: Exponent, coeff: BigRational) -> Self {
        let mut p = Self::zero(exponent.len());
        p.add_term(exponent, coeff);
        p
    }

    /// `c · z^e` with an integer coefficient.
    pub fn term(exponent: &[i64], c: i64) -> Self {
        Self::monomial(exponent.to_vec(), BigRational::from_integer(c.into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().flatten().all(|&e| e >= 0)
    }

    pub fn add_term(&mut self, exponent: Exponent, coeff: BigRational) {
        assert_eq!(exponent.len(), self.n, "exponent length");
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SparseLaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `z^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        SparseLaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `p(z^A)`: every monomial `z^I` becomes `z^{IA}`.
    pub fn compose_monomial_map(&self, a: &IntMatrix) -> Self {
        let n = a.n();
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let big: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
            let image = a
                .left_mul_vec(&big)
                .iter()
                .map(|x| x.to_i64().expect("exponent fits in i64"))
                .collect();
            out.add_term(image, c.clone());
        }
        out
    }
}

impl Add for &SparseLaurentPoly {
    type Output = SparseLaurentPoly;
    fn add(self, rhs: &SparseLaurentPoly) -> SparseLaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparseLaurentPoly {
    type Output = SparseLaurentPoly;
    fn neg(self) -> SparseLaurentPoly {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &SparseLaurentPoly {
    type Output = SparseLaurentPoly;
    fn sub(self, rhs: &SparseLaurentPoly) -> SparseLaurentPoly {
        self + &-rhs
    }
}

impl fmt::Debug for SparseLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| if x == 1 { format!("z{}", i + 1) } else { format!("z{}^{x}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else if c.is_negative() {
                    format!("({c})*{}", mono.join("*"))
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ_t X_t(z) ∂/∂z_t` with Laurent polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialVectorField {
    components: Vec<SparseLaurentPoly>,
}

impl MonomialVectorField {
    pub fn zero(n: usize) -> Self {
        MonomialVectorField {
            components: vec![SparseLaurentPoly::zero(n); n],
        }
    }

    /// `c · z^e ∂/∂z_t` (zero-based `t`).
    pub fn monomial(n: usize, t: usize, exponent: &[i64], c: i64) -> Self {
        let mut x = Self::zero(n);
        x.components[t] = SparseLaurentPoly::term(exponent, c);
        x
    }

    pub fn from_components(components: Vec<SparseLaurentPoly>) -> Self {
        MonomialVectorField { components }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[SparseLaurentPoly] {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(|p| p.is_polynomial())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        MonomialVectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Coefficients keyed by `(component, exponent)`.
    pub fn coefficients(&self) -> impl Iterator<Item = ((usize, &Exponent), &BigRational)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(t, p)| p.terms().map(move |(e, c)| ((t, e), c)))
    }
}

impl Add for &MonomialVectorField {
    type Output = MonomialVectorField;
    fn add(self, rhs: &MonomialVectorField) -> MonomialVectorField {
        MonomialVectorField {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let p = SparseLaurentPoly::term(&[1, 0], 2);
        let q = SparseLaurentPoly::term(&[1, 0], -2);
        assert!((&p + &q).is_zero());
        assert!((&p - &p).is_zero());
        assert!(!SparseLaurentPoly::term(&[-1, 0], 1).is_polynomial());
    }

    #[test]
    fn monomial_substitution() {
        // z1 z2^2 under z ↦ (z2, z1 z2) becomes z2 · z1² z2² = z1² z2³
        let a = IntMatrix::parse("0,1;1,1").unwrap();
        let p = SparseLaurentPoly::term(&[1, 2], 3);
        assert_eq!(p.compose_monomial_map(&a), SparseLaurentPoly::term(&[2, 3], 3));
    }

    #[test]
    fn shifting_and_scaling() {
        let p = SparseLaurentPoly::term(&[1, 0], 1);
        assert_eq!(p.shift(&[0, -1]), SparseLaurentPoly::term(&[1, -1], 1));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(format!("{:?}", p.scale(&half)), "1/2*z1");
    }
}
