//! The unsharp-measurement comparison protocol: sharpness sequence and its
//! closed-form Bell values. Implemented from the stated singular-value
//! expression; there is no density-matrix oracle for this route.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::bell::versine;
use crate::error::{Error, Result};

/// Parameters of the unsharp protocol for the pure source family, for which
/// the correlation matrix has singular values `lambda1 = 1` and
/// `lambda2 = sin 2 theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnsharpConfig {
    pub theta: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl UnsharpConfig {
    pub fn for_pure_state(theta: f64, omega: f64, epsilon: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= FRAC_PI_4) {
            return Err(Error::domain("theta", theta, "(0, pi/4]"));
        }
        if !(omega > 0.0 && omega < FRAC_PI_2) {
            return Err(Error::domain("omega", omega, "(0, pi/2)"));
        }
        if !(epsilon >= 0.0) {
            return Err(Error::domain("epsilon", epsilon, "epsilon >= 0"));
        }
        Ok(UnsharpConfig {
            theta,
            omega,
            epsilon,
            lambda1: 1.0,
            lambda2: (2.0 * theta).sin(),
        })
    }
}

/// Sharpness parameters `gamma_j in (0, 1]` with construction bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSequence {
    gammas: Vec<f64>,
    /// `q_j = 1 - prod_{l<=j} (1 + sqrt(1 - gamma_l^2)) / 2^j`, kept
    /// cancellation-free; `q[0] = 0` so `q[j-1]` belongs to round `j`.
    q: Vec<f64>,
    feasible_through: u32,
}

impl GammaSequence {
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn gamma(&self, j: u32) -> Option<f64> {
        if j < 1 || j > self.gammas.len() as u32 {
            return None;
        }
        Some(self.gammas[(j - 1) as usize])
    }

    pub fn feasible_through(&self) -> u32 {
        self.feasible_through
    }
}

/// Builds the sharpness sequence
/// `gamma_j = (1 + eps) (2^{j-1} - cos w prod_{l<j}(1 + sqrt(1 - gamma_l^2)))
/// / (sqrt(lambda2) sin w)`, stopping once an entry leaves (0, 1].
///
/// The numerator is evaluated as
/// `2^{j-1} ((1 - cos w) + cos w q_{j-1})` to survive the cancellation at
/// the tiny `w` the comparison uses.
pub fn unsharp_gamma_sequence(cfg: &UnsharpConfig, k: u32) -> Result<GammaSequence> {
    if k < 1 {
        return Err(Error::domain("k", k as f64, "k >= 1"));
    }
    let cw = cfg.omega.cos();
    let vw = versine(cfg.omega);
    let denom = cfg.lambda2.sqrt() * cfg.omega.sin();
    let mut gammas = Vec::with_capacity(k as usize);
    let mut q = vec![0.0f64];
    let mut feasible_through = 0;
    for j in 1..=k {
        let scale = 2f64.powi(j as i32 - 1);
        let gamma = (1.0 + cfg.epsilon) * scale * (vw + cw * q[(j - 1) as usize]) / denom;
        if !(gamma > 0.0 && gamma <= 1.0) {
            break;
        }
        gammas.push(gamma);
        feasible_through = j;
        // d = (1 - sqrt(1 - gamma^2)) / 2 without cancellation
        let d = gamma * gamma / (2.0 * (1.0 + (1.0 - gamma * gamma).sqrt()));
        let prev = q[(j - 1) as usize];
        q.push(prev + d * (1.0 - prev));
    }
    Ok(GammaSequence {
        gammas,
        q,
        feasible_through,
    })
}

/// Bell value of the unsharp protocol at round `j`, as stated:
/// `S = 2^{2-j} (gamma_j sqrt(lambda2) sin w
///      + cos w prod_{l<j}(1 + sqrt(1 - gamma_l^2)))`.
pub fn unsharp_closed_form_s(cfg: &UnsharpConfig, j: u32, seq: &GammaSequence) -> Result<f64> {
    let gamma_j = seq
        .gamma(j)
        .ok_or(Error::domain("j", j as f64, "1 <= j <= sequence length"))?;
    let mut prod = 1.0f64;
    for l in 1..j {
        let g = seq.gamma(l).unwrap();
        prod *= 1.0 + (1.0 - g * g).sqrt();
    }
    Ok(2f64.powi(2 - j as i32)
        * (gamma_j * cfg.lambda2.sqrt() * cfg.omega.sin() + cfg.omega.cos() * prod))
}

/// Violation margin `S_j - 2` in cancellation-free form, valid for any
/// `gamma_j` against the sequence's earlier rounds.
pub fn unsharp_round_margin(cfg: &UnsharpConfig, j: u32, seq: &GammaSequence) -> Result<f64> {
    let gamma_j = seq
        .gamma(j)
        .ok_or(Error::domain("j", j as f64, "1 <= j <= sequence length"))?;
    let q_prev = seq.q[(j - 1) as usize];
    let cw = cfg.omega.cos();
    Ok(2f64.powi(2 - j as i32) * gamma_j * cfg.lambda2.sqrt() * cfg.omega.sin()
        - 2.0 * (versine(cfg.omega) + cw * q_prev))
}
