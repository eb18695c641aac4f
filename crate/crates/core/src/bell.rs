//! Closed-form Bell values of the probabilistic-projective-measurement
//! protocol: per-round branch factors, the untouched-branch factor, and the
//! assembled network value `S = 2 T^{m/n} U^{(n-m)/n}`.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::sequence::{build_alpha_sequence, AlphaSequence};

pub(crate) fn check_angles(theta: f64, delta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= FRAC_PI_4 + 1e-15) {
        return Err(Error::domain("theta", theta, "(0, pi/4]"));
    }
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return Err(Error::domain("delta", delta, "(0, pi/2)"));
    }
    Ok(())
}

/// `1 - cos(x)` without cancellation near zero.
pub(crate) fn versine(x: f64) -> f64 {
    let h = (x / 2.0).sin();
    2.0 * h * h
}

/// The round-`j` branch factor is affine in `alpha_j` at fixed `P_j`:
/// `T(alpha) = intercept + slope * alpha`. Returns `(intercept, slope)`.
pub(crate) fn branch_factor_affine(
    j: u32,
    theta: f64,
    delta: f64,
    p_j: f64,
    noise: NoiseModel,
) -> (f64, f64) {
    let (sd, cd) = (delta.sin(), delta.cos());
    let (s2, c2) = ((2.0 * theta).sin(), (2.0 * theta).cos());
    let half_pow = 0.5f64.powi(j as i32 - 1); // 2^{1-j}
    match noise {
        NoiseModel::None => (cd * s2 * p_j + sd * c2, sd * (half_pow - c2)),
        NoiseModel::Depolarizing { p } => {
            let f = 1.0 - p;
            (f * (cd * s2 * p_j + sd * c2), f * sd * (half_pow - c2))
        }
        NoiseModel::AmplitudeDamping { p } => {
            let zz = 1.0 - 2.0 * p * theta.sin().powi(2);
            (
                (1.0 - p).sqrt() * cd * s2 * p_j + sd * c2,
                sd * (zz * half_pow - c2),
            )
        }
    }
}

/// Round-`j` factor `T` of a shared branch.
pub fn closed_form_branch_factor(
    j: u32,
    theta: f64,
    delta: f64,
    alpha_j: f64,
    p_j: f64,
    noise: NoiseModel,
) -> Result<f64> {
    check_angles(theta, delta)?;
    noise.validate()?;
    if j < 1 {
        return Err(Error::domain("j", j as f64, "j >= 1"));
    }
    if !(p_j > 0.0 && p_j <= 1.0) {
        return Err(Error::domain("P_j", p_j, "(0, 1]"));
    }
    if !(0.0..=1.0).contains(&alpha_j) {
        return Err(Error::domain("alpha_j", alpha_j, "[0, 1]"));
    }
    let (a, b) = branch_factor_affine(j, theta, delta, p_j, noise);
    Ok(a + b * alpha_j)
}

/// Final-round factor `U` of a branch measured only once.
pub fn untouched_branch_factor(theta: f64, delta: f64, noise: NoiseModel) -> Result<f64> {
    check_angles(theta, delta)?;
    noise.validate()?;
    let (sd, cd) = (delta.sin(), delta.cos());
    let s2 = (2.0 * theta).sin();
    Ok(match noise {
        NoiseModel::None => cd * s2 + sd,
        NoiseModel::Depolarizing { p } => (1.0 - p) * (cd * s2 + sd),
        NoiseModel::AmplitudeDamping { p } => {
            (1.0 - p).sqrt() * cd * s2 + (1.0 - 2.0 * p * theta.sin().powi(2)) * sd
        }
    })
}

/// Network Bell value at round `j` with `m` of `n` branches shared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SValue {
    /// `2 T^{m/n} U^{(n-m)/n}`; NaN when out of regime.
    pub s: f64,
    pub i_n: f64,
    pub j_n: f64,
    /// False when `T < 0` or `U < 0`: the closed form's fractional roots are
    /// only claimed for the positive regime (the oracle remains valid).
    pub in_regime: bool,
}

impl SValue {
    pub fn violates(&self, tol_strict: f64) -> bool {
        self.in_regime && self.s > 2.0 + tol_strict
    }
}

/// Closed-form `S_n^{m,j}` with `I_n = J_n = T^m U^{n-m}`.
pub fn closed_form_s(
    n: u32,
    m: u32,
    j: u32,
    theta: f64,
    delta: f64,
    alphas: &AlphaSequence,
    noise: NoiseModel,
) -> Result<SValue> {
    if n < 1 || m < 1 || m > n {
        return Err(Error::domain("m", m as f64, "1 <= m <= n"));
    }
    let (alpha_j, p_j) = alphas
        .round(j)
        .ok_or(Error::domain("j", j as f64, "1 <= j <= sequence length"))?;
    let t = closed_form_branch_factor(j, theta, delta, alpha_j, p_j, noise)?;
    let u = untouched_branch_factor(theta, delta, noise)?;
    Ok(assemble_s(n, m, t, u))
}

pub(crate) fn assemble_s(n: u32, m: u32, t: f64, u: f64) -> SValue {
    let i_n = t.powi(m as i32) * u.powi((n - m) as i32);
    let in_regime = t >= 0.0 && (m == n || u >= 0.0);
    let s = if !in_regime {
        f64::NAN
    } else if m == n {
        2.0 * t
    } else if t == 0.0 || u == 0.0 {
        0.0
    } else {
        // fractional powers in log space; t, u > 0 here
        let ln = m as f64 * t.ln() + (n - m) as f64 * u.ln();
        2.0 * (ln / n as f64).exp()
    };
    SValue {
        s,
        i_n,
        j_n: i_n,
        in_regime,
    }
}

/// Best Bell value achievable at round `j` with all branches shared, taking
/// the supremum of `T` over the free coin bias `alpha in (0, 1)` at the
/// cumulative factor `P_j` fixed by the earlier rounds.
pub fn round_sup_s(
    j: u32,
    theta: f64,
    delta: f64,
    alphas: &AlphaSequence,
    noise: NoiseModel,
) -> Result<f64> {
    check_angles(theta, delta)?;
    noise.validate()?;
    let (_, p_j) = alphas
        .round(j)
        .ok_or(Error::domain("j", j as f64, "1 <= j <= sequence length"))?;
    let (a, b) = branch_factor_affine(j, theta, delta, p_j, noise);
    Ok(2.0 * (a + b.max(0.0)))
}

/// Violation margin `T_j - 1` of a noiseless shared branch, evaluated in a
/// cancellation-free form. `deficit_j` is `1 - P_j`.
///
/// Uses `1 - intercept = versine(pi/2 - 2 theta - delta) +
/// cos(delta) sin(2 theta) (1 - P_j)`, so margins far below machine epsilon
/// relative to `T ~ 1` stay meaningful.
pub fn round_margin_pure(j: u32, theta: f64, delta: f64, alpha_j: f64, deficit_j: f64) -> f64 {
    let (sd, cd) = (delta.sin(), delta.cos());
    let (s2, c2) = ((2.0 * theta).sin(), (2.0 * theta).cos());
    let half_pow = 0.5f64.powi(j as i32 - 1);
    let one_minus_intercept = versine(FRAC_PI_2 - 2.0 * theta - delta) + cd * s2 * deficit_j;
    sd * (half_pow - c2) * alpha_j - one_minus_intercept
}

/// Largest consecutive round count (up to `j_cap`) for which the constructed
/// sequence exists and the all-branch Bell value can exceed `2 + tol_strict`.
pub fn max_rounds(
    theta: f64,
    delta: f64,
    epsilon: f64,
    alpha1: f64,
    noise: NoiseModel,
    j_cap: u32,
    tol_strict: f64,
) -> Result<u32> {
    if j_cap < 1 {
        return Err(Error::domain("j_cap", j_cap as f64, "j_cap >= 1"));
    }
    let seq = build_alpha_sequence(theta, delta, epsilon, alpha1, j_cap, noise)?;
    let mut rounds = 0;
    for j in 1..=j_cap.min(seq.feasible_through()) {
        if round_sup_s(j, theta, delta, &seq, noise)? > 2.0 + tol_strict {
            rounds = j;
        } else {
            break;
        }
    }
    Ok(rounds)
}
