use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;
use crate::bigjson::{self, JsonInt};
use crate::limits;

/// Dense square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from its rows. Fails unless the rows form a non-empty square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LinalgError::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for x in row {
                let x: BigInt = x.clone().into();
                limits::check_int(&x)?;
                entries.push(x);
            }
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        IntMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    /// All entries strictly positive.
    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|x| x.is_positive())
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) - 1;
            m.set(i, i, v);
        }
        m
    }

    /// Principal block with rows and columns `range`.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<BigInt>> {
        rows.map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Square sub-matrix on the index range `start..n`.
    pub fn trailing_block(&self, start: usize) -> Self {
        let m = self.n - start;
        Self::from_fn(m, |i, j| self.get(start + i, start + j).clone())
    }

    /// Removes row and column `k` (zero-based).
    pub fn delete_row_col(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]).clone())
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| &v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a: Vec<Vec<BigInt>> = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Inverse of a unimodular matrix. Fails if `det` is not ±1.
    pub fn inverse_unimodular(&self) -> Result<Self, LinalgError> {
        let d = self.det();
        if d.abs() != BigInt::one() {
            return Err(LinalgError::NotUnimodular(d));
        }
        // Gauss-Jordan over ℚ; the result is integral because det = ±1.
        let n = self.n;
        let mut a: Vec<Vec<num_rational::BigRational>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(num_rational::BigRational::from_integer).collect())
            .collect();
        let mut inv: Vec<Vec<num_rational::BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            num_rational::BigRational::one()
                        } else {
                            num_rational::BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .expect("unimodular matrix has full rank");
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                        let t = &f * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        let entries = inv
            .into_iter()
            .flatten()
            .map(|q| {
                debug_assert!(q.is_integer());
                q.to_integer()
            })
            .collect();
        Ok(IntMatrix { n, entries })
    }

    /// Exact power, `p >= 0`.
    pub fn pow(&self, mut p: u64) -> Result<Self, LinalgError> {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while p > 0 {
            if p & 1 == 1 {
                acc = mat_mul(&acc, &base)?;
            }
            p >>= 1;
            if p > 0 {
                base = mat_mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Entries as `i64`, or `None` if any does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn to_f64_rows(&self) -> Option<Vec<Vec<f64>>> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_f64().filter(|v| v.is_finite()))
                    .collect()
            })
            .collect()
    }

    /// Text form `a,b;c,d`.
    pub fn to_text(&self) -> String {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses either the text form `0,1;1,2` or the JSON form
    /// `{"n":2,"rows":[[0,1],[1,2]]}`.
    pub fn parse(s: &str) -> Result<Self, LinalgError> {
        let s = s.trim();
        if s.starts_with('{') {
            let m: IntMatrix =
                serde_json::from_str(s).map_err(|e| LinalgError::Parse(e.to_string()))?;
            return Ok(m);
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        let x = x.trim();
                        BigInt::from_str(x)
                            .map_err(|_| LinalgError::Parse(format!("invalid integer {x:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(&rows)
    }

    pub(crate) fn check_limits(&self) -> Result<(), LinalgError> {
        for x in &self.entries {
            limits::check_int(x)?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = LinalgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IntMatrix::parse(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{}]", self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    rows: Vec<Vec<JsonInt>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            rows: bigjson::to_rows(&self.rows()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MatrixRepr::deserialize(d)?;
        let rows = bigjson::from_rows(repr.rows);
        if rows.len() != repr.n {
            return Err(D::Error::custom(format!(
                "declared n={} but found {} rows",
                repr.n,
                rows.len()
            )));
        }
        IntMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Exact matrix product. Fails on dimension mismatch or when an entry
/// exceeds the digit cap.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if a.n != b.n {
        return Err(LinalgError::DimensionMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigInt::zero();
            for k in 0..n {
                let x = a.get(i, k);
                if !x.is_zero() {
                    acc += x * b.get(k, j);
                }
            }
            limits::check_int(&acc)?;
            entries.push(acc);
        }
    }
    Ok(IntMatrix { n, entries })
}

/// Rank over ℚ of a (possibly rectangular) integer matrix given by rows.
pub fn rank_q(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let g = a[rank][c].gcd(&a[r][c]);
            let fr = &a[rank][c] / &g;
            let fp = &a[r][c] / &g;
            for j in c..cols {
                let v = &a[r][j] * &fr - &a[rank][j] * &fp;
                a[r][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hand_multiplied_products() {
        let a1 = m(&[vec![0, 1], vec![1, 1]]);
        let a2 = m(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(mat_mul(&a1, &a2).unwrap(), m(&[vec![0, 1], vec![1, 2]]));

        let a2_3 = m(&[vec![1, 0, 1], vec![0, 0, 1], vec![0, 1, 1]]);
        let a3_3 = m(&[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(
            mat_mul(&a2_3, &a3_3).unwrap(),
            m(&[vec![1, 0, 2], vec![0, 0, 1], vec![0, 1, 2]])
        );
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[vec![0, 1], vec![1, 2]]);
        assert_eq!(mat_mul(&IntMatrix::identity(2), &a).unwrap(), a);
        assert_eq!(mat_mul(&a, &IntMatrix::identity(2)).unwrap(), a);
    }

    #[test]
    fn mismatched_dimensions() {
        let err = mat_mul(&IntMatrix::identity(2), &IntMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch(2, 3)));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[vec![0, 1], vec![1, 2]]);
        assert_eq!(a.det(), BigInt::from(-1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(inv, m(&[vec![-2, 1], vec![1, 0]]));
        assert!(mat_mul(&a, &inv).unwrap().is_identity());
        assert!(m(&[vec![2, 0], vec![0, 1]]).inverse_unimodular().is_err());
        assert_eq!(m(&[vec![0, 0], vec![1, 0]]).det(), BigInt::zero());
    }

    #[test]
    fn text_and_json_forms() {
        let a = IntMatrix::parse("0,1;1,2").unwrap();
        assert_eq!(a, m(&[vec![0, 1], vec![1, 2]]));
        assert_eq!(a.to_text(), "0,1;1,2");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"n":2,"rows":[[0,1],[1,2]]}"#);
        assert_eq!(IntMatrix::parse(&j).unwrap(), a);
        assert!(IntMatrix::parse("1,2;3").is_err());
        assert!(IntMatrix::parse("1,x").is_err());
        assert!(IntMatrix::parse(r#"{"n":3,"rows":[[0,1],[1,2]]}"#).is_err());
    }

    #[test]
    fn rank_over_rationals() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(-2), BigInt::from(-2)],
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-1)],
        ];
        assert_eq!(rank_q(&rows), 1);
        assert_eq!(rank_q(&IntMatrix::identity(4).rows()), 4);
    }

    #[test]
    fn power_matches_repeated_product() {
        let a = m(&[vec![0, 1], vec![1, 2]]);
        let a3 = mat_mul(&mat_mul(&a, &a).unwrap(), &a).unwrap();
        assert_eq!(a.pow(3).unwrap(), a3);
        assert!(a.pow(0).unwrap().is_identity());
    }
}
