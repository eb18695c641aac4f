//! Depth-breadth trade-off at the critical entanglement threshold.

use crate::bell::{closed_form_s, round_sup_s};
use crate::config::{NoiseModel, DEFAULT_TOL_STRICT};
use crate::entanglement::{canonical_delta, theta_for_concurrence, threshold_concurrence};
use crate::error::{Error, Result};
use crate::sequence::build_alpha_sequence;

/// One cell of the breadth-depth table at `C = C(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierCell {
    /// Number of shared branches.
    pub m: u32,
    /// Sharing round.
    pub j: u32,
    /// True when every round up to `j` can violate at breadth `m` for some
    /// coin bias in (0, 1).
    pub achievable: bool,
    /// Bell value at the constructed sequence.
    pub s: f64,
}

/// Evaluates all `(m, j)` cells with `m <= n`, `j <= k` for sources fixed at
/// the critical concurrence `C(k)`, with the canonical measurement setting.
pub fn tradeoff_frontier(n: u32, k: u32, epsilon: f64, alpha1: f64) -> Result<Vec<FrontierCell>> {
    if n < 2 {
        return Err(Error::domain("n", n as f64, "n >= 2"));
    }
    if k < 2 {
        return Err(Error::domain("k", k as f64, "k >= 2"));
    }
    let theta = theta_for_concurrence(threshold_concurrence(k)?)?;
    let delta = canonical_delta(theta)?;
    let seq = build_alpha_sequence(theta, delta, epsilon, alpha1, k, NoiseModel::None)?;

    // sup over alpha of the round factor, shared by every breadth
    let mut sup_s_full = Vec::with_capacity(k as usize);
    for j in 1..=k {
        sup_s_full.push(round_sup_s(j, theta, delta, &seq, NoiseModel::None)?);
    }

    let mut cells = Vec::with_capacity((n * k) as usize);
    for m in 1..=n {
        let mut all_rounds_ok = true;
        for j in 1..=k {
            let v = closed_form_s(n, m, j, theta, delta, &seq, NoiseModel::None)?;
            // sup_alpha S at breadth m: exponents only reweight T against U
            let t_sup = sup_s_full[(j - 1) as usize] / 2.0;
            let u = crate::bell::untouched_branch_factor(theta, delta, NoiseModel::None)?;
            let sup = crate::bell::assemble_s(n, m, t_sup, u);
            all_rounds_ok = all_rounds_ok && sup.violates(DEFAULT_TOL_STRICT);
            cells.push(FrontierCell {
                m,
                j,
                achievable: all_rounds_ok,
                s: v.s,
            });
        }
    }
    Ok(cells)
}

/// Pareto-maximal achievable cells: no other achievable cell is at least as
/// deep and at least as broad.
pub fn frontier_boundary(cells: &[FrontierCell]) -> Vec<(u32, u32)> {
    let achieved: Vec<_> = cells.iter().filter(|c| c.achievable).collect();
    let mut boundary: Vec<(u32, u32)> = achieved
        .iter()
        .filter(|c| {
            !achieved
                .iter()
                .any(|o| (o.m, o.j) != (c.m, c.j) && o.m >= c.m && o.j >= c.j)
        })
        .map(|c| (c.m, c.j))
        .collect();
    boundary.sort_unstable();
    boundary
}
