//! Recursive construction of the per-round measurement probabilities.

use crate::bell::{branch_factor_affine, check_angles};
use crate::config::NoiseModel;
use crate::error::{Error, Result};

/// Per-round coin biases `alpha_j` with their cumulative coherence-survival
/// factors `P_j = prod_{l<j} (2 - alpha_l)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSequence {
    alphas: Vec<f64>,
    cumprods: Vec<f64>,
    /// `1 - P_j`, accumulated without cancellation.
    deficits: Vec<f64>,
    feasible_through: u32,
}

impl AlphaSequence {
    /// Wraps an explicit probability list, deriving the cumulative factors.
    /// Every entry must lie strictly in (0, 1).
    pub fn from_alphas(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::Config("alpha sequence must be non-empty".into()));
        }
        for &a in &alphas {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::domain("alpha_j", a, "(0, 1)"));
            }
        }
        let feasible = alphas.len() as u32;
        Ok(Self::assemble(alphas, feasible))
    }

    fn assemble(alphas: Vec<f64>, feasible_through: u32) -> Self {
        let mut cumprods = Vec::with_capacity(alphas.len());
        let mut deficits = Vec::with_capacity(alphas.len());
        let mut p = 1.0f64;
        let mut d = 0.0f64;
        for idx in 0..alphas.len() {
            if idx > 0 {
                let prev = alphas[idx - 1];
                p *= (2.0 - prev) / 2.0;
                // 1 - P_{j} = d + (alpha_{j-1}/2)(1 - d)
                d += (prev / 2.0) * (1.0 - d);
            }
            cumprods.push(p);
            deficits.push(d);
        }
        AlphaSequence {
            alphas,
            cumprods,
            deficits,
            feasible_through,
        }
    }

    pub fn len(&self) -> u32 {
        self.alphas.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// `(alpha_j, P_j)` for the 1-based round `j`.
    pub fn round(&self, j: u32) -> Option<(f64, f64)> {
        if j < 1 || j > self.len() {
            return None;
        }
        let i = (j - 1) as usize;
        Some((self.alphas[i], self.cumprods[i]))
    }

    /// `1 - P_j`, cancellation-free.
    pub fn deficit(&self, j: u32) -> Option<f64> {
        if j < 1 || j > self.len() {
            return None;
        }
        Some(self.deficits[(j - 1) as usize])
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn cumprods(&self) -> &[f64] {
        &self.cumprods
    }

    /// Last round for which the construction found a valid, violating bias.
    /// Rounds past this hold the minimal-disturbance filler `alpha_1`.
    pub fn feasible_through(&self) -> u32 {
        self.feasible_through
    }
}

/// Infimum coin bias for a round-`j` violation at full breadth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBound {
    /// Infimum of the violating `alpha` when one exists inside (0, 1).
    /// When `feasible` is false this is the unattainable requirement:
    /// the (>= 1) formula value for a positive slope, 0 otherwise.
    pub bound: f64,
    /// Whether any `alpha in (0, 1)` makes the round violate.
    pub feasible: bool,
}

/// Violation bound for round `j` given the cumulative factor `P_j`.
///
/// The branch factor is affine in `alpha`, so when the bound formula's
/// denominator (the slope) is not positive, feasibility is decided by the
/// endpoint values instead of the formula.
pub fn alpha_lower_bound(
    j: u32,
    theta: f64,
    delta: f64,
    p_j: f64,
    noise: NoiseModel,
) -> Result<AlphaBound> {
    check_angles(theta, delta)?;
    noise.validate()?;
    if j < 1 {
        return Err(Error::domain("j", j as f64, "j >= 1"));
    }
    if !(p_j > 0.0 && p_j <= 1.0) {
        return Err(Error::domain("P_j", p_j, "(0, 1]"));
    }
    let (a, b) = branch_factor_affine(j, theta, delta, p_j, noise);
    Ok(if b > 0.0 {
        let bound = ((1.0 - a) / b).max(0.0);
        AlphaBound {
            bound,
            feasible: bound < 1.0,
        }
    } else {
        // non-positive slope: T is maximal as alpha -> 0+
        AlphaBound {
            bound: 0.0,
            feasible: a > 1.0,
        }
    })
}

/// Builds the probability sequence for `k` rounds.
///
/// `alpha_1` is taken as given. For later rounds, `alpha_j = (1 + epsilon)`
/// times the violation bound when that bound is positive, and `alpha_1`
/// (minimal disturbance) when the round violates for every bias. The first
/// round with no violating bias in (0, 1) stops the construction;
/// `feasible_through` records the last successful round and the remaining
/// slots are filled with `alpha_1` so that all `k` rounds stay evaluable.
pub fn build_alpha_sequence(
    theta: f64,
    delta: f64,
    epsilon: f64,
    alpha1: f64,
    k: u32,
    noise: NoiseModel,
) -> Result<AlphaSequence> {
    check_angles(theta, delta)?;
    noise.validate()?;
    if !(epsilon >= 0.0) {
        return Err(Error::domain("epsilon", epsilon, "epsilon >= 0"));
    }
    if !(alpha1 > 0.0 && alpha1 < 1.0) {
        return Err(Error::domain("alpha1", alpha1, "(0, 1)"));
    }
    if k < 1 {
        return Err(Error::domain("k", k as f64, "k >= 1"));
    }

    let mut alphas = Vec::with_capacity(k as usize);
    let mut feasible_through = 0u32;
    let mut broken = false;
    let mut p = 1.0f64;

    for j in 1..=k {
        if j > 1 {
            p *= (2.0 - alphas[(j - 2) as usize]) / 2.0;
        }
        if broken {
            alphas.push(alpha1);
            continue;
        }
        let bound = alpha_lower_bound(j, theta, delta, p, noise)?;
        if !bound.feasible {
            broken = true;
            alphas.push(alpha1);
            continue;
        }
        let alpha_j = if j == 1 {
            alpha1
        } else if bound.bound > 0.0 {
            (1.0 + epsilon) * bound.bound
        } else {
            alpha1
        };
        if !(alpha_j > 0.0 && alpha_j < 1.0) {
            broken = true;
            alphas.push(alpha1);
            continue;
        }
        alphas.push(alpha_j);
        feasible_through = j;
    }

    Ok(AlphaSequence::assemble(alphas, feasible_through))
}
