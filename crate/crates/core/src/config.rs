use std::f64::consts::FRAC_PI_4;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Noise applied independently to every source state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// Ideal pure sources.
    None,
    /// `(1-p) |psi><psi| + p I/4` with mixing weight `p`.
    Depolarizing { p: f64 },
    /// Amplitude damping of Alice's qubit with damping probability `p`.
    AmplitudeDamping { p: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        let p = self.strength();
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("p", p, "[0, 1]"));
        }
        Ok(())
    }

    /// Noise strength; 0 for the noiseless model.
    pub fn strength(&self) -> f64 {
        match *self {
            NoiseModel::None => 0.0,
            NoiseModel::Depolarizing { p } | NoiseModel::AmplitudeDamping { p } => p,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NoiseModel::None => "none",
            NoiseModel::Depolarizing { .. } => "depolarizing",
            NoiseModel::AmplitudeDamping { .. } => "amplitude-damping",
        }
    }
}

/// Default slack applied on top of each violation bound.
pub const DEFAULT_EPSILON: f64 = 1e-10;
/// Default first-round measurement probability.
pub const DEFAULT_ALPHA1: f64 = 1e-10;
/// Default strict-violation guard: a round counts only if S > 2 + this.
pub const DEFAULT_TOL_STRICT: f64 = 1e-12;

/// Full parameter set of one sharing scenario.
///
/// `n` branches, `m` of them shared sequentially, target depth `k`, state
/// angle `theta`, Bob's measurement angle `delta`, slack `epsilon`, initial
/// probability `alpha1`, and the source noise model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub theta: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub alpha1: f64,
    pub noise: NoiseModel,
}

impl ProtocolConfig {
    /// Scenario with all `n` branches shared and the canonical measurement
    /// setting `delta = pi/2 - 2 theta`.
    pub fn canonical(n: u32, k: u32, theta: f64) -> Result<Self> {
        let cfg = ProtocolConfig {
            n,
            m: n,
            k,
            theta,
            delta: FRAC_PI_2 - 2.0 * theta,
            epsilon: DEFAULT_EPSILON,
            alpha1: DEFAULT_ALPHA1,
            noise: NoiseModel::None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::domain("n", self.n as f64, "n >= 1"));
        }
        if self.m < 1 || self.m > self.n {
            return Err(Error::domain("m", self.m as f64, "1 <= m <= n"));
        }
        if self.k < 1 {
            return Err(Error::domain("k", self.k as f64, "k >= 1"));
        }
        if !(self.theta > 0.0 && self.theta <= FRAC_PI_4) {
            return Err(Error::domain("theta", self.theta, "(0, pi/4]"));
        }
        if !(self.delta > 0.0 && self.delta < FRAC_PI_2) {
            return Err(Error::domain("delta", self.delta, "(0, pi/2)"));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::domain("epsilon", self.epsilon, "epsilon > 0"));
        }
        if !(self.alpha1 > 0.0 && self.alpha1 < 1.0) {
            return Err(Error::domain("alpha1", self.alpha1, "(0, 1)"));
        }
        self.noise.validate()
    }
}
