use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rayon::prelude::*;

use crate::bell::round_sup_s;
use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::sequence::build_alpha_sequence;

/// Parameter a sweep axis can range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisParam {
    Theta,
    Delta,
    NoiseStrength,
    Epsilon,
    Alpha1,
}

impl AxisParam {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "theta" => AxisParam::Theta,
            "delta" => AxisParam::Delta,
            "p" | "noise" => AxisParam::NoiseStrength,
            "epsilon" => AxisParam::Epsilon,
            "alpha1" => AxisParam::Alpha1,
            other => {
                return Err(Error::Config(format!(
                    "unknown axis parameter '{other}' (expected theta, delta, p, epsilon, alpha1)"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::Theta => "theta",
            AxisParam::Delta => "delta",
            AxisParam::NoiseStrength => "p",
            AxisParam::Epsilon => "epsilon",
            AxisParam::Alpha1 => "alpha1",
        }
    }
}

/// Inclusive evenly spaced grid axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: AxisParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// How the measurement angle is fixed for each grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaConvention {
    /// `delta = pi/2 - 2 theta`.
    CanonicalPi2,
    /// `delta = pi/4 - 2 theta`.
    CanonicalPi4,
    /// `delta` comes from an axis or the fixed value.
    Explicit,
}

impl DeltaConvention {
    pub fn label(&self) -> &'static str {
        match self {
            DeltaConvention::CanonicalPi2 => "pi2",
            DeltaConvention::CanonicalPi4 => "pi4",
            DeltaConvention::Explicit => "explicit",
        }
    }

    fn resolve(&self, theta: f64, explicit: f64) -> f64 {
        match self {
            DeltaConvention::CanonicalPi2 => FRAC_PI_2 - 2.0 * theta,
            DeltaConvention::CanonicalPi4 => FRAC_PI_4 - 2.0 * theta,
            DeltaConvention::Explicit => explicit,
        }
    }
}

/// Two-axis grid scan of the maximal sharing depth.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    /// Fixed values used by parameters not on an axis.
    pub theta: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub alpha1: f64,
    pub noise: NoiseModel,
    pub convention: DeltaConvention,
    pub round_cap: u32,
    pub tol_strict: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axis1.param == self.axis2.param {
            return Err(Error::Config("sweep axes must name distinct parameters".into()));
        }
        for axis in [&self.axis1, &self.axis2] {
            if axis.count == 0 {
                return Err(Error::Config(format!("axis {} is empty", axis.param.name())));
            }
            if axis.count > 1 && !(axis.stop > axis.start) {
                return Err(Error::Config(format!(
                    "axis {} needs stop > start",
                    axis.param.name()
                )));
            }
            if axis.param == AxisParam::NoiseStrength && self.noise == NoiseModel::None {
                return Err(Error::Config(
                    "noise-strength axis requires a noise model".into(),
                ));
            }
            if axis.param == AxisParam::Delta && self.convention != DeltaConvention::Explicit {
                return Err(Error::Config(
                    "delta axis conflicts with a canonical delta convention".into(),
                ));
            }
        }
        if self.round_cap < 1 {
            return Err(Error::domain("round_cap", self.round_cap as f64, "round_cap >= 1"));
        }
        Ok(())
    }
}

/// One grid cell's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub axis1_value: f64,
    pub axis2_value: f64,
    /// Depth: every round up to this violates the network bound.
    pub max_rounds: u32,
    /// Best Bell value per round up to the cap (empty for skipped cells).
    pub s_per_round: Vec<f64>,
    /// Set when the cell's parameters fall outside the model's domain.
    pub note: Option<String>,
}

fn skip(v1: f64, v2: f64, why: String) -> SweepRecord {
    SweepRecord {
        axis1_value: v1,
        axis2_value: v2,
        max_rounds: 0,
        s_per_round: Vec::new(),
        note: Some(why),
    }
}

fn evaluate_cell(spec: &SweepSpec, v1: f64, v2: f64) -> SweepRecord {
    let mut theta = spec.theta;
    let mut delta = spec.delta;
    let mut epsilon = spec.epsilon;
    let mut alpha1 = spec.alpha1;
    let mut p = spec.noise.strength();
    for (axis, v) in [(&spec.axis1, v1), (&spec.axis2, v2)] {
        match axis.param {
            AxisParam::Theta => theta = v,
            AxisParam::Delta => delta = v,
            AxisParam::NoiseStrength => p = v,
            AxisParam::Epsilon => epsilon = v,
            AxisParam::Alpha1 => alpha1 = v,
        }
    }
    delta = spec.convention.resolve(theta, delta);
    let noise = match spec.noise {
        NoiseModel::None => NoiseModel::None,
        NoiseModel::Depolarizing { .. } => NoiseModel::Depolarizing { p },
        NoiseModel::AmplitudeDamping { .. } => NoiseModel::AmplitudeDamping { p },
    };

    if !(theta > 0.0 && theta <= FRAC_PI_4 + 1e-12) {
        return skip(v1, v2, format!("theta = {theta} outside (0, pi/4]"));
    }
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return skip(v1, v2, format!("delta = {delta} outside (0, pi/2)"));
    }
    let theta = theta.min(FRAC_PI_4);
    let seq = match build_alpha_sequence(theta, delta, epsilon, alpha1, spec.round_cap, noise) {
        Ok(seq) => seq,
        Err(e) => return skip(v1, v2, e.to_string()),
    };
    let mut s_per_round = Vec::with_capacity(spec.round_cap as usize);
    let mut max_rounds = 0;
    let mut counting = true;
    for j in 1..=spec.round_cap {
        let s = round_sup_s(j, theta, delta, &seq, noise).unwrap_or(f64::NAN);
        if counting && j <= seq.feasible_through() && s > 2.0 + spec.tol_strict {
            max_rounds = j;
        } else {
            counting = false;
        }
        s_per_round.push(s);
    }
    SweepRecord {
        axis1_value: v1,
        axis2_value: v2,
        max_rounds,
        s_per_round,
        note: None,
    }
}

/// Evaluates the grid; records come back in row-major order (axis1 outer),
/// each cell independent of the others.
pub fn sweep_max_rounds(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let v1 = spec.axis1.values();
    let v2 = spec.axis2.values();
    let cells: Vec<(f64, f64)> = v1
        .iter()
        .flat_map(|&a| v2.iter().map(move |&b| (a, b)))
        .collect();
    Ok(cells
        .into_par_iter()
        .map(|(a, b)| evaluate_cell(spec, a, b))
        .collect())
}
