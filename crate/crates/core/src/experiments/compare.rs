use crate::bell::round_margin_pure;
use crate::config::NoiseModel;
use crate::entanglement::canonical_delta;
use crate::error::Result;
use crate::sequence::build_alpha_sequence;
use crate::unsharp::{unsharp_gamma_sequence, unsharp_round_margin, UnsharpConfig};

/// Per-round head-to-head of the two sharing strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRecord {
    pub j: u32,
    pub s_ppm: f64,
    pub s_unsharp: f64,
    /// `S - 2`, kept separately because the constructed violations sit far
    /// below the precision of `S` itself.
    pub margin_ppm: f64,
    pub margin_unsharp: f64,
    pub ppm_violates: bool,
    pub unsharp_violates: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub records: Vec<ComparisonRecord>,
    /// Present when either construction ran out before round `k`.
    pub truncation_note: Option<String>,
}

/// Evaluates both protocols round by round at the canonical measurement
/// setting, up to round `k` or the first infeasible round of either.
pub fn compare_protocols(
    theta: f64,
    epsilon: f64,
    alpha1: f64,
    omega: f64,
    k: u32,
) -> Result<Comparison> {
    let delta = canonical_delta(theta)?;
    let alpha_seq = build_alpha_sequence(theta, delta, epsilon, alpha1, k, NoiseModel::None)?;
    let unsharp_cfg = UnsharpConfig::for_pure_state(theta, omega, epsilon)?;
    let gamma_seq = unsharp_gamma_sequence(&unsharp_cfg, k)?;

    let rounds = k
        .min(alpha_seq.feasible_through())
        .min(gamma_seq.feasible_through());
    let truncation_note = if rounds < k {
        Some(format!(
            "truncated at round {rounds}: coin construction feasible through {}, \
             sharpness construction through {}",
            alpha_seq.feasible_through(),
            gamma_seq.feasible_through()
        ))
    } else {
        None
    };

    let mut records = Vec::with_capacity(rounds as usize);
    for j in 1..=rounds {
        let (alpha_j, _) = alpha_seq.round(j).unwrap();
        let margin_ppm =
            2.0 * round_margin_pure(j, theta, delta, alpha_j, alpha_seq.deficit(j).unwrap());
        let margin_unsharp = unsharp_round_margin(&unsharp_cfg, j, &gamma_seq)?;
        records.push(ComparisonRecord {
            j,
            s_ppm: 2.0 + margin_ppm,
            s_unsharp: 2.0 + margin_unsharp,
            margin_ppm,
            margin_unsharp,
            ppm_violates: margin_ppm > 0.0,
            unsharp_violates: margin_unsharp > 0.0,
        });
    }
    Ok(Comparison {
        records,
        truncation_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    const OMEGA: f64 = FRAC_PI_4 * 1e-7;

    #[test]
    fn reference_setting_five_rounds_both_violate() {
        let cmp = compare_protocols(FRAC_PI_4 - 0.01, 1e-2, 1e-10, OMEGA, 5).unwrap();
        assert_eq!(cmp.records.len(), 5);
        assert!(cmp.truncation_note.is_none());
        for r in &cmp.records {
            assert!(r.ppm_violates, "round {}", r.j);
            assert!(r.unsharp_violates, "round {}", r.j);
            assert!(
                r.margin_ppm >= r.margin_unsharp,
                "round {}: {} < {}",
                r.j,
                r.margin_ppm,
                r.margin_unsharp
            );
        }
    }

    #[test]
    fn round_one_saturates_at_zero_slack() {
        // with no slack the sharpness bound is met with equality, and the
        // coin protocol's only excess comes from alpha1 itself
        let cmp = compare_protocols(FRAC_PI_4 - 0.01, 0.0, 1e-10, OMEGA, 1).unwrap();
        let r = cmp.records[0];
        assert!((r.s_ppm - 2.0).abs() < 1e-9);
        assert!((r.s_unsharp - 2.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_target_truncates_with_note() {
        let cmp = compare_protocols(FRAC_PI_4 - 0.01, 1e-2, 1e-10, OMEGA, 8).unwrap();
        assert_eq!(cmp.records.len(), 5);
        assert!(cmp.truncation_note.is_some());
    }

    #[test]
    fn flags_match_margins() {
        let cmp = compare_protocols(0.7, 1e-3, 1e-6, 0.01, 3).unwrap();
        for r in &cmp.records {
            assert_eq!(r.ppm_violates, r.margin_ppm > 0.0);
            assert_eq!(r.unsharp_violates, r.margin_unsharp > 0.0);
        }
    }
}
