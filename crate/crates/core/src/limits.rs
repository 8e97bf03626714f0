//! Process-wide resource guard on the size of exact integers.
//!
//! Every operation that can grow entries without bound (matrix products,
//! powers, monomial evaluation) checks its outputs against a cap expressed
//! in decimal digits. The cap defaults to 100 000 digits and can be changed
//! once at startup, e.g. from the `KATOLAB_DIGIT_CAP` environment variable.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use thiserror::Error;

pub const DEFAULT_DIGIT_CAP: usize = 100_000;

/// Environment variable read by [`digit_cap_from_env`].
pub const DIGIT_CAP_ENV: &str = "KATOLAB_DIGIT_CAP";

static DIGIT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIGIT_CAP);

// log2(10)
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("integer of about {digits} decimal digits exceeds the cap of {cap} digits")]
pub struct ResourceError {
    pub digits: u64,
    pub cap: usize,
}

pub fn digit_cap() -> usize {
    DIGIT_CAP.load(Ordering::Relaxed)
}

pub fn set_digit_cap(cap: usize) {
    DIGIT_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Applies `KATOLAB_DIGIT_CAP` if it is set to a positive integer.
/// Returns the cap now in effect.
pub fn digit_cap_from_env() -> usize {
    if let Some(cap) = std::env::var(DIGIT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
    {
        set_digit_cap(cap);
    }
    digit_cap()
}

/// Largest bit length allowed by the current cap.
pub fn bit_budget() -> u64 {
    (digit_cap() as f64 * BITS_PER_DIGIT).ceil() as u64
}

pub fn check_bits(bits: u64) -> Result<(), ResourceError> {
    if bits > bit_budget() {
        Err(ResourceError {
            digits: (bits as f64 / BITS_PER_DIGIT).ceil() as u64,
            cap: digit_cap(),
        })
    } else {
        Ok(())
    }
}

pub fn check_int(x: &BigInt) -> Result<(), ResourceError> {
    check_bits(x.bits())
}
