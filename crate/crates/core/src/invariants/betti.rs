/// Betti numbers `b_0 … b_{2n}` of a Kato manifold built from `k` point
/// blow-ups: `b_0 = b_1 = b_{2n−1} = b_{2n} = 1`, `b_{2p} = k` for
/// `1 ≤ p ≤ n−1`, and all other odd ones vanish.
pub fn betti_numbers(n: usize, k: usize) -> Vec<usize> {
    let mut b = vec![0; 2 * n + 1];
    for p in 1..n {
        b[2 * p] = k;
    }
    b[0] = 1;
    b[1] = 1;
    b[2 * n - 1] = 1;
    b[2 * n] = 1;
    b
}

/// Twisted Betti numbers for any closed non-exact one-form: `k` in the even
/// degrees `2, …, 2n−2`, zero elsewhere.
pub fn twisted_betti_numbers(n: usize, k: usize) -> Vec<usize> {
    let mut b = vec![0; 2 * n + 1];
    for p in 1..n {
        b[2 * p] = k;
    }
    b
}

pub fn alternating_sum(b: &[usize]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `χ = k(n−1)`.
pub fn euler_characteristic(n: usize, k: usize) -> i64 {
    (k * (n - 1)) as i64
}
