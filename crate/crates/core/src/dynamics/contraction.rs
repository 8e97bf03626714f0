use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::point::{abs_sq, check_rat, GaussianRationalPoint};
use super::DynamicsError;
use crate::kato::KatoMatrix;
use crate::limits::{self, ResourceError};
use crate::linalg::IntMatrix;

/// Which closed ball a sampler draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ball {
    /// `‖z‖ ≤ 1`.
    Unit,
    /// `‖z‖_{1,2} ≤ 1`, weight 2 on the last coordinate.
    Weighted12,
}

impl Ball {
    pub fn norm_sq(self, z: &GaussianRationalPoint) -> BigRational {
        match self {
            Ball::Unit => z.norm_sq(),
            Ball::Weighted12 => z.norm12_sq(),
        }
    }

    fn weight(self, coord: usize, n: usize) -> i64 {
        match self {
            Ball::Weighted12 if coord == n - 1 => 2,
            _ => 1,
        }
    }
}

/// Seeded generator of exact rational points of a closed ball.
///
/// Boundary points come from intersecting the quadric with rational lines
/// through the rational boundary point `(1, 0, …, 0)`; interior points
/// rescale them by a rational radius in `[0, 1]`.
pub struct BallSampler {
    n: usize,
    ball: Ball,
    rng: ChaCha8Rng,
}

impl BallSampler {
    pub fn new(n: usize, ball: Ball, seed: u64) -> Self {
        BallSampler {
            n,
            ball,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A point with `‖z‖² = 1` exactly, in real coordinates
    /// `(Re z_1, Im z_1, …, Re z_n, Im z_n)`.
    pub fn boundary(&mut self) -> GaussianRationalPoint {
        let n = self.n;
        loop {
            let d: Vec<i64> = (0..2 * n).map(|_| self.rng.gen_range(-12..=12)).collect();
            // Q(d) with the weight of each complex coordinate on both real parts.
            let q: i64 = d
                .iter()
                .enumerate()
                .map(|(i, &x)| self.ball.weight(i / 2, n) * x * x)
                .sum();
            if q == 0 {
                continue;
            }
            // Q(p + s d) = 1 with p = (1, 0, …) gives s = −2 d_0 / Q(d).
            let s = BigRational::new(BigInt::from(-2 * d[0]), BigInt::from(q));
            let mut real: Vec<BigRational> = d
                .iter()
                .map(|&x| &s * BigRational::from_integer(x.into()))
                .collect();
            real[0] += BigRational::one();
            let coords = real
                .chunks(2)
                .map(|c| Complex::new(c[0].clone(), c[1].clone()))
                .collect();
            return GaussianRationalPoint::new(coords);
        }
    }

    /// A radius in `[0, 1]`, biased towards 1.
    fn radius(&mut self) -> BigRational {
        match self.rng.gen_range(0..4) {
            0 => BigRational::one(),
            1 => {
                let k: u32 = self.rng.gen_range(1..40);
                BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(2).pow(k))
            }
            _ => {
                let den: i64 = self.rng.gen_range(1..=1000);
                BigRational::new(self.rng.gen_range(0..=den).into(), den.into())
            }
        }
    }

    pub fn closed_ball(&mut self) -> GaussianRationalPoint {
        let r = self.radius();
        self.boundary().scale(&r)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub ball: Ball,
    pub samples: usize,
    pub passed: bool,
    /// First sampled point whose image is not strictly inside the ball.
    pub counterexample: Option<GaussianRationalPoint>,
    /// Largest `‖F(z)‖²` seen, as an exact fraction.
    pub max_image_norm_sq: String,
}

/// `‖F_A(z)‖²` in the given ball norm, from the moduli alone:
/// `|F_A(z)_i|² = ∏_j (|z_j|²)^{a_ij}`.
pub(crate) fn image_norm_sq(a: &IntMatrix, z: &GaussianRationalPoint, ball: Ball) -> Result<BigRational, DynamicsError> {
    let n = a.n();
    if z.dim() != n {
        return Err(DynamicsError::Dimension { expected: n, got: z.dim() });
    }
    let moduli: Vec<BigRational> = z.coords().iter().map(abs_sq).collect();
    let mut total = BigRational::zero();
    for i in 0..n {
        let mut prod = BigRational::from_integer(ball.weight(i, n).into());
        for (j, m) in moduli.iter().enumerate() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            if m.is_zero() {
                if e.is_negative() {
                    return Err(DynamicsError::ZeroToNegativePower { coordinate: j + 1 });
                }
                prod = BigRational::zero();
                break;
            }
            let e = e.to_i32().ok_or(ResourceError { digits: u64::MAX, cap: limits::digit_cap() })?;
            prod *= m.pow(e);
            check_rat(&prod)?;
        }
        total += prod;
    }
    Ok(total)
}

/// Checks `‖F_A(z)‖² < 1` exactly on `z = 0` followed by `samples` seeded
/// points of the closed ball.
pub fn certify_contraction(
    k: &KatoMatrix,
    ball: Ball,
    samples: usize,
    seed: u64,
) -> Result<ContractionReport, DynamicsError> {
    let mut sampler = BallSampler::new(k.n(), ball, seed);
    let mut max = BigRational::zero();
    let mut counterexample = None;
    let mut z = GaussianRationalPoint::zero(k.n());
    for i in 0..=samples {
        if i > 0 {
            z = sampler.closed_ball();
        }
        debug_assert!(ball.norm_sq(&z) <= BigRational::one());
        let norm = image_norm_sq(k.matrix(), &z, ball)?;
        if norm >= BigRational::one() && counterexample.is_none() {
            counterexample = Some(z.clone());
        }
        if norm > max {
            max = norm;
        }
    }
    Ok(ContractionReport {
        ball,
        samples,
        passed: counterexample.is_none(),
        counterexample,
        max_image_norm_sq: max.to_string(),
    })
}

/// Certificate that `F_A` maps the closed `‖·‖_{1,2}` ball into the open one.
pub fn certify_ball12_contraction(
    k: &KatoMatrix,
    samples: usize,
    seed: u64,
) -> Result<ContractionReport, DynamicsError> {
    certify_contraction(k, Ball::Weighted12, samples, seed)
}
