//! End-to-end acceptance gate: one test per headline capability, each
//! printing a pass line with the quantities it checked.

use std::f64::consts::FRAC_PI_4;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starshare_core::bell::{closed_form_branch_factor, closed_form_s, max_rounds};
use starshare_core::entanglement::{canonical_delta, theta_for_concurrence, threshold_concurrence};
use starshare_core::experiments::{
    compare_protocols, sweep_max_rounds, verify_closed_forms, Axis, AxisParam, DeltaConvention,
    SweepSpec,
};
use starshare_core::oracle::{lemma3_expand, ppm_channel, BranchDensity, Pauli};
use starshare_core::sequence::{alpha_lower_bound, build_alpha_sequence};
use starshare_core::tradeoff::{frontier_boundary, tradeoff_frontier};
use starshare_core::NoiseModel;

#[test]
fn criterion_1_simulation_certifies_closed_forms() {
    let start = Instant::now();
    let report = verify_closed_forms(42, 200).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.rows.len(), 3);
    for row in &report.rows {
        assert!(row.max_closed_vs_sim < 1e-9, "{row:?}");
        assert!(row.max_sim_vs_joint < 1e-11, "{row:?}");
    }
    assert!(
        elapsed.as_secs() < 30,
        "verification took {elapsed:?}, budget 30 s"
    );
    let worst_closed = report
        .rows
        .iter()
        .map(|r| r.max_closed_vs_sim)
        .fold(0.0f64, f64::max);
    let worst_joint = report
        .rows
        .iter()
        .map(|r| r.max_sim_vs_joint)
        .fold(0.0f64, f64::max);
    println!(
        "criterion 1 (closed forms vs simulation, seed 42, 200 samples/model): pass \
         [worst closed-vs-sim {worst_closed:.3e}, worst sim-vs-joint {worst_joint:.3e}, \
         {elapsed:.2?}]"
    );
}

#[test]
fn criterion_2_threshold_values() {
    assert_eq!(threshold_concurrence(1).unwrap(), 0.0);
    assert!((threshold_concurrence(2).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-12);
    assert!((threshold_concurrence(3).unwrap() - 15f64.sqrt() / 4.0).abs() < 1e-12);
    println!(
        "criterion 2 (thresholds C(1)=0, C(2)=sqrt(3)/2, C(3)=sqrt(15)/4 within 1e-12): pass"
    );
}

#[test]
fn criterion_3_depth_matches_concurrence() {
    let start = Instant::now();
    let mut got = Vec::new();
    for c in [0.87, 0.97, 0.99] {
        let theta = theta_for_concurrence(c).unwrap();
        let delta = canonical_delta(theta).unwrap();
        got.push(max_rounds(theta, delta, 1e-10, 1e-10, NoiseModel::None, 10, 1e-12).unwrap());
    }
    assert_eq!(got, vec![2, 3, 3]);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1);
    println!(
        "criterion 3 (max rounds {{2, 3, 3}} at C in {{0.87, 0.97, 0.99}}): pass [{elapsed:.2?}]"
    );
}

#[test]
fn criterion_4_sharing_fails_at_the_threshold() {
    for k in [2u32, 3, 4] {
        let theta = theta_for_concurrence(threshold_concurrence(k).unwrap()).unwrap();
        let delta = canonical_delta(theta).unwrap();
        let seq = build_alpha_sequence(theta, delta, 1e-10, 1e-8, k, NoiseModel::None).unwrap();
        for n in [2u32, 4] {
            let v = closed_form_s(n, n, k, theta, delta, &seq, NoiseModel::None).unwrap();
            assert!(v.s < 2.0, "k = {k}, n = {n}: S = {}", v.s);
        }
    }
    println!("criterion 4 (round k fails at C = C(k) exactly, k in {{2, 3, 4}}): pass");
}

#[test]
fn criterion_5_depth_breadth_tradeoff() {
    for (n, k) in [(3u32, 2u32), (4, 3), (5, 3)] {
        let cells = tradeoff_frontier(n, k, 1e-10, 1e-8).unwrap();
        let get = |m, j| cells.iter().find(|c| c.m == m && c.j == j).unwrap();
        assert!(get(n, k - 1).achievable, "({n}, {}) should be achievable", k - 1);
        assert!(get(n - 1, k).achievable, "({}, {k}) should be achievable", n - 1);
        assert!(!get(n, k).achievable, "({n}, {k}) should not be achievable");
        for (m, j) in frontier_boundary(&cells) {
            assert_eq!(m + j, n + k - 1);
        }
        // limit of the widest-but-one chain at small alpha1
        let theta = theta_for_concurrence(threshold_concurrence(k).unwrap()).unwrap();
        let delta = canonical_delta(theta).unwrap();
        let seq = build_alpha_sequence(theta, delta, 1e-10, 1e-12, k, NoiseModel::None).unwrap();
        let v = closed_form_s(n, n - 1, k, theta, delta, &seq, NoiseModel::None).unwrap();
        let limit = 2.0 * (delta.cos().powi(2) + delta.sin()).powf(1.0 / n as f64);
        assert!((v.s - limit).abs() < 1e-6, "(n={n}, k={k}): {} vs {limit}", v.s);
        if (n, k) == (3, 2) {
            assert!((v.s - 2.154434690031884).abs() < 1e-6);
        }
    }
    println!(
        "criterion 5 (trade-off endpoints and m+j=n+k-1 boundary for (3,2), (4,3), (5,3); \
         limit 2(cos^2 d + sin d)^(1/n) within 1e-6): pass"
    );
}

#[test]
fn criterion_6_protocol_comparison() {
    let start = Instant::now();
    let cmp = compare_protocols(FRAC_PI_4 - 0.01, 1e-2, 1e-10, FRAC_PI_4 * 1e-7, 5).unwrap();
    assert_eq!(cmp.records.len(), 5);
    for r in &cmp.records {
        assert!(r.ppm_violates && r.unsharp_violates, "round {}", r.j);
        assert!(
            r.margin_ppm >= r.margin_unsharp,
            "round {}: coin margin {} below sharpness margin {}",
            r.j,
            r.margin_ppm,
            r.margin_unsharp
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1);
    println!(
        "criterion 6 (both protocols violate rounds 1-5 and the coin protocol dominates \
         round-by-round): pass [{elapsed:.2?}]"
    );
}

#[test]
fn criterion_7_noise_sweeps() {
    let start = Instant::now();
    let theta_axis = Axis {
        param: AxisParam::Theta,
        start: 0.3,
        stop: FRAC_PI_4,
        count: 46,
    };
    let base = SweepSpec {
        axis1: theta_axis,
        axis2: Axis {
            param: AxisParam::NoiseStrength,
            start: 0.0,
            stop: 0.1,
            count: 26,
        },
        theta: 0.6,
        delta: 0.5,
        epsilon: 1e-10,
        alpha1: 1e-10,
        noise: NoiseModel::Depolarizing { p: 0.0 },
        convention: DeltaConvention::CanonicalPi2,
        round_cap: 5,
        tol_strict: 1e-12,
    };
    let depol = sweep_max_rounds(&base).unwrap();

    let mut damp_spec = base.clone();
    damp_spec.noise = NoiseModel::AmplitudeDamping { p: 0.0 };
    damp_spec.axis2.stop = 0.3;
    let damp = sweep_max_rounds(&damp_spec).unwrap();

    let mut clean_spec = base.clone();
    clean_spec.noise = NoiseModel::None;
    clean_spec.axis2 = Axis {
        param: AxisParam::Epsilon,
        start: 1e-10,
        stop: 1e-10,
        count: 1,
    };
    let clean = sweep_max_rounds(&clean_spec).unwrap();

    let p_cols = base.axis2.count;
    for (row, clean_cell) in clean.iter().enumerate() {
        // p = 0 slices equal the noiseless slice cell-for-cell
        for noisy in [&depol, &damp] {
            let cell = &noisy[row * p_cols];
            assert_eq!(cell.max_rounds, clean_cell.max_rounds);
            assert_eq!(cell.s_per_round, clean_cell.s_per_round);
        }
        // depth never increases with noise strength
        for noisy in [&depol, &damp] {
            let row_cells = &noisy[row * p_cols..(row + 1) * p_cols];
            for w in row_cells.windows(2) {
                assert!(w[1].max_rounds <= w[0].max_rounds);
            }
        }
    }
    // coverage of the documented noise ranges
    assert_eq!(depol.last().unwrap().axis2_value, 0.1);
    assert_eq!(damp.last().unwrap().axis2_value, 0.3);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120);
    println!(
        "criterion 7 (noise sweeps: p=0 slice equality, depth non-increasing in p, \
         depolarizing range [0, 0.1], damping range [0, 0.3]): pass [{elapsed:.2?}]"
    );
}

#[test]
fn criterion_8_invariant_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);

    // channel sanity on random states
    for _ in 0..300 {
        let a = DMatrix::from_fn(4, 4, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0f64), rng.gen_range(-1.0..1.0))
        });
        let mut rho = &a * a.adjoint();
        let tr = rho.trace().re;
        rho /= Complex::new(tr, 0.0);
        let state = BranchDensity::new(rho, 1e-10).unwrap();
        let out = ppm_channel(&state, rng.gen_range(0.0..1.0)).unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-14);
        out.validate(1e-10).unwrap();
    }

    // Heisenberg coefficients
    let (x, z) = (Pauli::X.matrix(), Pauli::Z.matrix());
    for _ in 0..30 {
        let theta = rng.gen_range(0.05..FRAC_PI_4);
        let j = rng.gen_range(2u32..=5);
        let initial = BranchDensity::initial(theta, NoiseModel::None).unwrap();
        let mut rho = initial.clone();
        let mut p_j = 1.0;
        for _ in 1..j {
            let alpha = rng.gen_range(0.0..1.0);
            rho = ppm_channel(&rho, alpha).unwrap();
            p_j *= (2.0 - alpha) / 2.0;
        }
        assert!((rho.expectation(&x, &x) - p_j * initial.expectation(&x, &x)).abs() < 1e-12);
        assert!(
            (rho.expectation(&z, &z) - 0.5f64.powi(j as i32 - 1) * initial.expectation(&z, &z))
                .abs()
                < 1e-12
        );
    }

    // label expansion factorizes for 1..=3 branches
    for m in 1..=3usize {
        let rhos: Vec<BranchDensity> = (0..m)
            .map(|i| BranchDensity::initial(0.2 + 0.15 * i as f64, NoiseModel::None).unwrap())
            .collect();
        let expanded = lemma3_expand(&rhos, 0.37).unwrap();
        let mut expect = 1.0;
        let mut joint_op = DMatrix::from_element(1, 1, Complex::new(1.0, 0.0));
        for r in &rhos {
            expect *= ppm_channel(r, 0.37).unwrap().expectation(&x, &x);
            joint_op = joint_op.kronecker(&x.kronecker(&x));
        }
        assert!(((joint_op * &expanded).trace().re - expect).abs() < 1e-13);
    }

    // sequence monotonicity over a small deterministic grid
    for theta in [0.35, 0.5, 0.65, FRAC_PI_4 - 1e-3] {
        let delta = canonical_delta(theta).unwrap();
        let seq = build_alpha_sequence(theta, delta, 1e-3, 1e-8, 5, NoiseModel::None).unwrap();
        let feasible = seq.feasible_through() as usize;
        for w in seq.alphas()[..feasible].windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    // bound saturation: S = 2 at the substituted bound
    for (theta, delta, j, p_j) in [
        (FRAC_PI_4, 0.5, 1u32, 1.0),
        (0.5, 0.9, 2, 0.8),
        (0.6, 0.3, 3, 0.7),
    ] {
        let b = alpha_lower_bound(j, theta, delta, p_j, NoiseModel::None).unwrap();
        if b.feasible && b.bound > 0.0 {
            let t =
                closed_form_branch_factor(j, theta, delta, b.bound, p_j, NoiseModel::None).unwrap();
            assert!((2.0 * t - 2.0).abs() < 1e-10);
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10);
    println!(
        "criterion 8 (channel sanity, Heisenberg coefficients, label-expansion factorization, \
         sequence monotonicity, bound saturation): pass [{elapsed:.2?}]"
    );
}
