//! Concurrence of the pure source family and the sharing-depth threshold.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};

/// Concurrence of `cos(theta)|00> + sin(theta)|11>`, i.e. `sin(2 theta)`.
pub fn concurrence_pure(theta: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_4 + 1e-15).contains(&theta) {
        return Err(Error::domain("theta", theta, "[0, pi/4]"));
    }
    Ok((2.0 * theta).sin())
}

/// Minimum concurrence that supports `k` sharing rounds on every branch,
/// `C(k) = 2^{1-k} sqrt(4^{k-1} - 1)`.
pub fn threshold_concurrence(k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("k", k as f64, "k >= 1"));
    }
    // 2^{1-k} sqrt(4^{k-1} - 1) == sqrt(1 - 4^{1-k}); the second form stays
    // finite for large k.
    let q = (2.0 * (1.0 - k as f64)).exp2();
    Ok((1.0 - q).sqrt())
}

/// Largest supported sharing depth for a given concurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportedRounds {
    Finite(u32),
    Unbounded,
}

/// Largest `k` with `C > C(k)`; `Unbounded` at `C = 1`.
pub fn max_supported_rounds(c: f64) -> Result<SupportedRounds> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::domain("C", c, "[0, 1]"));
    }
    if c == 1.0 {
        return Ok(SupportedRounds::Unbounded);
    }
    if c == 0.0 {
        return Ok(SupportedRounds::Finite(0));
    }
    let mut k = 0;
    while c > threshold_concurrence(k + 1)? {
        k += 1;
    }
    Ok(SupportedRounds::Finite(k))
}

/// The proof's measurement alignment `delta = pi/2 - 2 theta`.
pub fn canonical_delta(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_4) {
        return Err(Error::domain("theta", theta, "(0, pi/4)"));
    }
    Ok(FRAC_PI_2 - 2.0 * theta)
}

/// State angle realizing a target concurrence, `theta = asin(C) / 2`.
pub fn theta_for_concurrence(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::domain("C", c, "[0, 1]"));
    }
    Ok(c.asin() / 2.0)
}
