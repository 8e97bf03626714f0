//! Truncated power-series systems for invariant vector fields and
//! one-forms, solved exactly over ℚ.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::FormalError;
use crate::kato::KatoMatrix;
use crate::linalg::IntMatrix;

pub const DEFAULT_DEGREE: usize = 6;

type Row = BTreeMap<usize, BigRational>;

/// Echelon form built one sparse row at a time.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: HashMap<usize, Row>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the pivots and keeps it if it is independent.
    pub fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, c| !c.is_zero());
        while let Some((&col, lead)) = row.first_key_value() {
            let Some(p) = self.pivots.get(&col) else {
                let lead = lead.clone();
                for c in row.values_mut() {
                    *c /= &lead;
                }
                self.pivots.insert(col, row);
                return true;
            };
            let f = lead.clone();
            for (&j, c) in p {
                let slot = row.entry(j).or_insert_with(BigRational::zero);
                *slot -= &f * c;
                if slot.is_zero() {
                    row.remove(&j);
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Exponent vectors in `ℕⁿ` of total degree at most `d`.
fn exponents_up_to(n: usize, d: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d as i64, &mut Vec::with_capacity(n), &mut out);
    out
}

fn degree(e: &[i64]) -> usize {
    e.iter().sum::<i64>() as usize
}

fn to_i64(a: &IntMatrix) -> Result<Vec<Vec<i64>>, FormalError> {
    a.to_i64_rows().ok_or(FormalError::ExponentOverflow)
}

fn row_times(e: &[i64], a: &[Vec<i64>]) -> Vec<i64> {
    let n = e.len();
    (0..n).map(|j| (0..n).map(|i| e[i] * a[i][j]).sum()).collect()
}

/// Linear system whose rows are keyed by `(equation, component, K)`.
struct Assembly {
    unknowns: HashMap<(usize, Vec<i64>), usize>,
    rows: HashMap<(u8, usize, Vec<i64>), Row>,
}

impl Assembly {
    fn new(n: usize, d: usize) -> Self {
        let mut unknowns = HashMap::new();
        for j in 0..n {
            for e in exponents_up_to(n, d) {
                let next = unknowns.len();
                unknowns.insert((j, e), next);
            }
        }
        Assembly {
            unknowns,
            rows: HashMap::new(),
        }
    }

    fn add(&mut self, key: (u8, usize, Vec<i64>), col: usize, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self
            .rows
            .entry(key)
            .or_default()
            .entry(col)
            .or_insert_with(BigRational::zero);
        *slot += BigRational::from_integer(BigInt::from(c));
    }

    fn nullity(self, keep: impl Fn(&(u8, usize, Vec<i64>)) -> bool) -> usize {
        let mut ech = SparseEchelon::new();
        let total = self.unknowns.len();
        for (key, row) in self.rows {
            if keep(&key) {
                ech.insert(row);
            }
        }
        total - ech.rank()
    }
}

/// Nullity of the degree-`d` truncation of `Σ_j a_sj h_j = h_s ∘ F_A`, the
/// system for invariant fields `Σ z_j h_j ∂/∂z_j`. Needs `A > 0`.
///
/// Row `(s, K)`: `Σ_j a_sj c^(j)_K − c^(s)_E` with `EA = K`.
pub fn tangent_field_nullity(k: &KatoMatrix, d: usize) -> Result<usize, FormalError> {
    if !k.matrix().is_positive() {
        return Err(FormalError::NotPositive);
    }
    let n = k.n();
    let a = to_i64(k.matrix())?;
    let mut asm = Assembly::new(n, d);
    let entries: Vec<((usize, Vec<i64>), usize)> =
        asm.unknowns.iter().map(|(k, &v)| (k.clone(), v)).collect();
    for ((j, e), col) in entries {
        for (s, row) in a.iter().enumerate() {
            asm.add((0, s, e.clone()), col, row[j]);
        }
        let image = row_times(&e, &a);
        if degree(&image) <= d {
            asm.add((0, j, image), col, -1);
        }
    }
    Ok(asm.nullity(|_| true))
}

/// Nullity of the degree-`d` truncation of the one-form invariance system.
/// Needs `A` l-positive.
///
/// With `β = Σ_{j≤l} h_j dz_j + Σ_{t>l} (w_{l+1}⋯w_n / w_t) h_t dw_t`:
/// - `(h_j ∘ F) w^L = h_j` for `j ≤ l`,
/// - `p_t Σ_{j≤l} (h_j ∘ F) z_j w^L + Σ_{s>l} a_st w^{J_0 B} (h_s ∘ F)
///   = w^{J_0} h_t` for `t > l`.
pub fn one_form_nullity(k: &KatoMatrix, d: usize) -> Result<usize, FormalError> {
    let form = k.form();
    if !form.b.is_positive() {
        return Err(FormalError::NotLPositive);
    }
    let n = k.n();
    let l = form.l;
    let a = to_i64(k.matrix())?;
    let lrow: Vec<i64> = (0..n).map(|i| if i < l { 0 } else { a[0][i] }).collect();
    let j0: Vec<i64> = (0..n).map(|i| i64::from(i >= l)).collect();
    let j0b = row_times(&j0, &a);
    let bound5 = d;
    let bound6 = d + (n - l);
    let add_vec = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<i64>>();

    let mut asm = Assembly::new(n, d);
    let entries: Vec<((usize, Vec<i64>), usize)> =
        asm.unknowns.iter().map(|(k, &v)| (k.clone(), v)).collect();
    for ((j, e), col) in entries {
        let ea = row_times(&e, &a);
        if j < l {
            asm.add((5, j, e.clone()), col, 1);
            let image = add_vec(&ea, &lrow);
            if degree(&image) <= bound5 {
                asm.add((5, j, image), col, -1);
            }
            let mut image = add_vec(&ea, &lrow);
            image[j] += 1;
            if degree(&image) <= bound6 {
                for t in l..n {
                    asm.add((6, t, image.clone()), col, lrow[t]);
                }
            }
        } else {
            let image = add_vec(&ea, &j0b);
            if degree(&image) <= bound6 {
                for t in l..n {
                    asm.add((6, t, image.clone()), col, a[j][t]);
                }
            }
            asm.add((6, j, add_vec(&e, &j0)), col, -1);
        }
    }
    Ok(asm.nullity(|(eq, _, kk)| {
        let deg = degree(kk);
        if *eq == 5 {
            deg <= bound5
        } else {
            deg <= bound6
        }
    }))
}

/// Nullities for `d = 0, …, max_d`, and whether the last two agree.
pub fn nullity_profile(
    k: &KatoMatrix,
    max_d: usize,
    f: fn(&KatoMatrix, usize) -> Result<usize, FormalError>,
) -> Result<(Vec<usize>, bool), FormalError> {
    let v = (0..=max_d).map(|d| f(k, d)).collect::<Result<Vec<_>, _>>()?;
    let stable = v.len() >= 2 && v[v.len() - 1] == v[v.len() - 2];
    Ok((v, stable))
}
