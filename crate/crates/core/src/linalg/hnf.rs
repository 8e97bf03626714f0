//! Row Hermite normal form and Smith invariants over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of [`hermite_normal_form`]: `u · input = h`, `u` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfDecomp {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// Number of non-zero rows of `h`; these come first.
    pub rank: usize,
    /// Column index of the pivot of each non-zero row.
    pub pivots: Vec<usize>,
}

fn row_combine(rows: &mut [Vec<BigInt>], i: usize, j: usize, m: [[BigInt; 2]; 2]) {
    // (row_i, row_j) <- m · (row_i, row_j)
    let [[a, b], [c, d]] = m;
    for k in 0..rows[i].len() {
        let x = rows[i][k].clone();
        let y = rows[j][k].clone();
        rows[i][k] = &a * &x + &b * &y;
        rows[j][k] = &c * &x + &d * &y;
    }
}

fn row_sub_mul(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for k in 0..rows[target].len() {
        let t = q * &rows[src][k];
        rows[target][k] -= t;
    }
}

/// Row-style Hermite normal form of an `m × k` integer matrix.
///
/// Pivots are strictly positive, entries above a pivot lie in `[0, pivot)`,
/// and zero rows are moved to the bottom.
pub fn hermite_normal_form(input: &[Vec<BigInt>]) -> HnfDecomp {
    let m = input.len();
    let k = input.first().map_or(0, |r| r.len());
    let mut h = input.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        h.swap(r, p);
        u.swap(r, p);
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            // [x y; -b/g a/g] has determinant 1.
            let mat = [[eg.x, eg.y], [-(&b / &g), &a / &g]];
            row_combine(&mut h, r, i, mat.clone());
            row_combine(&mut u, r, i, mat);
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_sub_mul(&mut h, i, r, &q);
                row_sub_mul(&mut u, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HnfDecomp {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Smith invariant factors `d_1 | d_2 | …` of an integer matrix (non-zero ones only).
pub fn smith_invariants(input: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a = input.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest non-zero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                row_sub_mul(&mut a, i, t, &q);
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let bad = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
