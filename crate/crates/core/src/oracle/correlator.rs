use super::CMatrix;
use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::oracle::channel::ppm_channel;
use crate::oracle::density::BranchDensity;
use crate::oracle::pauli::{b0, b1, Pauli};

/// Which network correlator a per-branch factor feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelatorSide {
    /// Hub setting `x + y` even: peripheral observable `b_0`, plus signs.
    I,
    /// Hub setting parity flipped: peripheral observable `b_1`, minus signs.
    J,
}

fn side_ops(side: CorrelatorSide, delta: f64) -> (CMatrix, f64) {
    match side {
        CorrelatorSide::I => (b0(delta), 1.0),
        CorrelatorSide::J => (b1(delta), -1.0),
    }
}

/// Round-`j` factor of a shared branch, from the simulated state: the branch
/// is evolved through `j - 1` unselected rounds, then the round-`j`
/// measurement statistics are assembled with coin bias `alphas[j-1]`.
pub fn branch_factor_sim(
    j: u32,
    theta: f64,
    delta: f64,
    alphas: &[f64],
    noise: NoiseModel,
    side: CorrelatorSide,
) -> Result<f64> {
    if j < 1 || j as usize > alphas.len() {
        return Err(Error::domain("j", j as f64, "1 <= j <= len(alphas)"));
    }
    let mut rho = BranchDensity::initial(theta, noise)?;
    for &a in &alphas[..(j - 1) as usize] {
        rho = ppm_channel(&rho, a)?;
    }
    let alpha = alphas[(j - 1) as usize];
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain("alpha_j", alpha, "[0, 1]"));
    }
    let (b, sign) = side_ops(side, delta);
    Ok(rho.expectation(&b, &Pauli::X.matrix())
        + sign * alpha * rho.expectation(&b, &Pauli::Z.matrix())
        + sign * (1.0 - alpha) * rho.expectation(&b, &Pauli::I.matrix()))
}

/// Factor of a branch measured only in the final round (sharp observables
/// `X` and `Z` on the hub-adjacent qubit).
pub fn untouched_factor_sim(
    theta: f64,
    delta: f64,
    noise: NoiseModel,
    side: CorrelatorSide,
) -> Result<f64> {
    let rho = BranchDensity::initial(theta, noise)?;
    let (b, sign) = side_ops(side, delta);
    Ok(rho.expectation(&b, &Pauli::X.matrix()) + sign * rho.expectation(&b, &Pauli::Z.matrix()))
}

/// Simulated network correlators and Bell value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    /// `|I_n|^{1/n} + |J_n|^{1/n}`.
    pub s: f64,
    pub i_n: f64,
    pub j_n: f64,
}

/// Bell value of the `n`-branch network with `m` shared branches at round
/// `j`, computed entirely from density-matrix evolution.
pub fn oracle_s(
    n: u32,
    m: u32,
    j: u32,
    theta: f64,
    delta: f64,
    alphas: &[f64],
    noise: NoiseModel,
) -> Result<OracleValue> {
    if n < 1 || m < 1 || m > n {
        return Err(Error::domain("m", m as f64, "1 <= m <= n"));
    }
    let ti = branch_factor_sim(j, theta, delta, alphas, noise, CorrelatorSide::I)?;
    let tj = branch_factor_sim(j, theta, delta, alphas, noise, CorrelatorSide::J)?;
    let ui = untouched_factor_sim(theta, delta, noise, CorrelatorSide::I)?;
    let uj = untouched_factor_sim(theta, delta, noise, CorrelatorSide::J)?;
    let i_n = ti.powi(m as i32) * ui.powi((n - m) as i32);
    let j_n = tj.powi(m as i32) * uj.powi((n - m) as i32);
    let root = 1.0 / n as f64;
    Ok(OracleValue {
        s: i_n.abs().powf(root) + j_n.abs().powf(root),
        i_n,
        j_n,
    })
}
