use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::closed_form_s;
use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::oracle::{full_tensor_s, oracle_s};
use crate::sequence::AlphaSequence;

/// Outcome of one noise model's random cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub noise: &'static str,
    pub samples: u32,
    /// Worst |closed form − simulated| Bell value.
    pub max_closed_vs_sim: f64,
    /// Worst |simulated − joint-state| Bell value on the n <= 3 subset.
    pub max_sim_vs_joint: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples_per_model: u32,
    pub tol_closed: f64,
    pub tol_joint: f64,
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

pub const VERIFY_TOL_CLOSED: f64 = 1e-9;
pub const VERIFY_TOL_JOINT: f64 = 1e-11;

/// Draws `samples` random scenarios per noise model and checks that the
/// closed forms, the factorized simulation, and the joint-state evaluation
/// all agree. Fully reproducible from the seed.
///
/// Near-degenerate angles (< 0.05) are excluded here; those edges are
/// covered by dedicated deterministic tests instead.
pub fn verify_closed_forms(seed: u64, samples: u32) -> Result<VerificationReport> {
    if samples < 1 {
        return Err(Error::Config("verification needs samples >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(3);
    for kind in ["none", "depolarizing", "amplitude-damping"] {
        let mut max_closed: f64 = 0.0;
        let mut max_joint: f64 = 0.0;
        for _ in 0..samples {
            let n: u32 = rng.gen_range(1..=5);
            let m: u32 = rng.gen_range(1..=n);
            let j: u32 = rng.gen_range(1..=5);
            let theta: f64 = rng.gen_range(0.05..=FRAC_PI_4);
            let delta: f64 = rng.gen_range(0.05..(FRAC_PI_2 - 0.05));
            let alphas: Vec<f64> = (0..j).map(|_| rng.gen_range(0.01..0.99)).collect();
            let p: f64 = rng.gen_range(0.0..=0.3);
            let noise = match kind {
                "none" => NoiseModel::None,
                "depolarizing" => NoiseModel::Depolarizing { p },
                _ => NoiseModel::AmplitudeDamping { p },
            };
            let seq = AlphaSequence::from_alphas(alphas.clone())?;
            let closed = closed_form_s(n, m, j, theta, delta, &seq, noise)?;
            let sim = oracle_s(n, m, j, theta, delta, &alphas, noise)?;
            if closed.in_regime {
                max_closed = max_closed.max((closed.s - sim.s).abs());
            }
            if n <= 3 {
                let joint = full_tensor_s(n, m, j, theta, delta, &alphas, noise)?;
                max_joint = max_joint.max((joint - sim.s).abs());
            }
        }
        rows.push(VerificationRow {
            noise: match kind {
                "none" => "none",
                "depolarizing" => "depolarizing",
                _ => "amplitude-damping",
            },
            samples,
            max_closed_vs_sim: max_closed,
            max_sim_vs_joint: max_joint,
            pass: max_closed < VERIFY_TOL_CLOSED && max_joint < VERIFY_TOL_JOINT,
        });
    }
    Ok(VerificationReport {
        seed,
        samples_per_model: samples,
        tol_closed: VERIFY_TOL_CLOSED,
        tol_joint: VERIFY_TOL_JOINT,
        rows,
    })
}
