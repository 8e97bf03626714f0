use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DynamicsError;
use crate::limits::{self, ResourceError};

pub type GaussRat = Complex<BigRational>;

/// A point of `ℂⁿ` whose coordinates have exact rational real and
/// imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRationalPoint {
    coords: Vec<GaussRat>,
}

pub(crate) fn check_rat(q: &BigRational) -> Result<(), ResourceError> {
    limits::check_int(q.numer())?;
    limits::check_int(q.denom())
}

pub(crate) fn check_complex(z: &GaussRat) -> Result<(), ResourceError> {
    check_rat(&z.re)?;
    check_rat(&z.im)
}

pub(crate) fn abs_sq(z: &GaussRat) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

fn fmt_complex(z: &GaussRat) -> String {
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn parse_complex(s: &str) -> Result<GaussRat, DynamicsError> {
    let bad = || DynamicsError::Parse(format!("invalid complex rational {s:?}"));
    let rat = |t: &str| -> Result<BigRational, DynamicsError> {
        match t {
            "" | "+" => Ok(BigRational::one()),
            "-" => Ok(-BigRational::one()),
            _ => BigRational::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| bad()),
        }
    };
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = BigRational::from_str(&s).map_err(|_| bad())?;
        return Ok(Complex::new(re, BigRational::zero()));
    };
    // The imaginary part starts at the last sign that is not the leading one.
    match body.rfind(['+', '-']).filter(|&p| p > 0) {
        Some(p) => {
            let re = BigRational::from_str(&body[..p]).map_err(|_| bad())?;
            Ok(Complex::new(re, rat(&body[p..])?))
        }
        None => Ok(Complex::new(BigRational::zero(), rat(body)?)),
    }
}

impl GaussianRationalPoint {
    pub fn new(coords: Vec<GaussRat>) -> Self {
        GaussianRationalPoint { coords }
    }

    pub fn from_real(xs: &[BigRational]) -> Self {
        Self::new(
            xs.iter()
                .map(|x| Complex::new(x.clone(), BigRational::zero()))
                .collect(),
        )
    }

    /// Real point from `(numerator, denominator)` pairs.
    pub fn from_ratios(xs: &[(i64, i64)]) -> Self {
        Self::from_real(
            &xs.iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![GaussRat::zero(); n])
    }

    pub fn ones(n: usize) -> Self {
        Self::new(vec![GaussRat::one(); n])
    }

    /// The standard basis vector `e_i` (zero-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.coords[i] = GaussRat::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[GaussRat] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [GaussRat] {
        &mut self.coords
    }

    /// `‖z‖² = Σ |z_j|²`.
    pub fn norm_sq(&self) -> BigRational {
        self.coords.iter().map(abs_sq).sum()
    }

    /// `‖z‖²_{1,2} = Σ_{j<n} |z_j|² + 2|z_n|²`.
    pub fn norm12_sq(&self) -> BigRational {
        let last = self.coords.last().map(abs_sq).unwrap_or_else(BigRational::zero);
        self.norm_sq() + last
    }

    /// Index of the first zero among the coordinates `from..n`.
    pub fn first_zero_from(&self, from: usize) -> Option<usize> {
        (from..self.dim()).find(|&i| self.coords[i].is_zero())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|z| z.scale(r.clone())).collect())
    }

    pub(crate) fn check_limits(&self) -> Result<(), ResourceError> {
        self.coords.iter().try_for_each(check_complex)
    }

    /// Parses `1/2+0i;1/3-1/5i`.
    pub fn parse(s: &str) -> Result<Self, DynamicsError> {
        let coords = s
            .trim()
            .split(';')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?;
        let p = Self::new(coords);
        p.check_limits()?;
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        self.coords.iter().map(fmt_complex).collect::<Vec<_>>().join(";")
    }

    /// Approximate coordinates, for display only.
    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        use num_traits::ToPrimitive;
        self.coords
            .iter()
            .map(|z| {
                (
                    z.re.to_f64().unwrap_or(f64::NAN),
                    z.im.to_f64().unwrap_or(f64::NAN),
                )
            })
            .collect()
    }
}

impl From<Vec<BigInt>> for GaussianRationalPoint {
    fn from(v: Vec<BigInt>) -> Self {
        Self::from_real(&v.into_iter().map(BigRational::from_integer).collect::<Vec<_>>())
    }
}

impl FromStr for GaussianRationalPoint {
    type Err = DynamicsError;
    fn from_str(s: &str) -> Result<Self, DynamicsError> {
        Self::parse(s)
    }
}

impl fmt::Display for GaussianRationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for GaussianRationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({})", self.to_text())
    }
}

impl Serialize for GaussianRationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(fmt_complex))
    }
}

impl<'de> Deserialize<'de> for GaussianRationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let items = Vec::<String>::deserialize(d)?;
        items
            .iter()
            .map(|s| parse_complex(s))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
            .map_err(D::Error::custom)
    }
}
