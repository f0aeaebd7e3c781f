//! Radial-profile lab checks: the pair envelope cross-validated against an
//! independent linear-programming oracle, Lelong slopes, bounded
//! regularization, the closed-form extremal values, and the curvature
//! blow-up probe measured against hand-computed Hessian norms.

mod common;

use cremona::lab::{
    default_deltas, envelope_residual, jstar_singularity_probe, least_negative_example,
    lelong_estimate, max_regularize, minimal_pair_envelope, model_product, model_quadratic,
    model_single, CurveKind, LabError, RadialProfile,
};

// ---------------------------------------------------------------------------
// Simplex sanity: the LP oracle must itself be trustworthy on programs small
// enough to solve by hand before it is allowed to judge the envelope.
// ---------------------------------------------------------------------------

#[test]
fn simplex_solves_programs_with_known_answers() {
    // max x + y  s.t.  x <= 1, y <= 2  ->  (1, 2)
    let x = common::simplex_max(
        &[1.0, 1.0],
        &[vec![1.0, 0.0], vec![0.0, 1.0]],
        &[1.0, 2.0],
    )
    .expect("feasible");
    assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 2.0).abs() < 1e-9);

    // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6  ->  (4, 0), value 12
    let x = common::simplex_max(
        &[3.0, 2.0],
        &[vec![1.0, 1.0], vec![1.0, 3.0]],
        &[4.0, 6.0],
    )
    .expect("feasible");
    assert!((x[0] - 4.0).abs() < 1e-9 && x[1].abs() < 1e-9);

    // Negative right-hand side exercises phase one: max -x  s.t.  -x <= -2,
    // x <= 5  ->  x = 2.
    let x = common::simplex_max(&[-1.0], &[vec![-1.0], vec![1.0]], &[-2.0, 5.0])
        .expect("feasible");
    assert!((x[0] - 2.0).abs() < 1e-9);

    // Infeasible: x <= 1 and -x <= -3 cannot both hold.
    assert!(common::simplex_max(&[1.0], &[vec![1.0], vec![-1.0]], &[1.0, -3.0]).is_none());
}

// ---------------------------------------------------------------------------
// Lelong slopes on radial profiles.
// ---------------------------------------------------------------------------

#[test]
fn lelong_slope_recovers_the_log_coefficient() {
    for c in [0.5f64, 1.0, 3.0] {
        let u = RadialProfile::sample(-8.0, 0.0, 64, |t| c * t, true).unwrap();
        let nu = lelong_estimate(&u);
        assert!(
            (nu - c).abs() <= 0.02 * c,
            "coefficient {c}: estimated {nu}"
        );
    }
    // A profile that is smooth across r = 0 has vanishing slope at the
    // center: u = e^{2t} = |z|^2.
    let u = RadialProfile::sample(-8.0, 0.0, 64, |t| (2.0 * t).exp(), true).unwrap();
    assert!(lelong_estimate(&u) <= 0.02);
}

#[test]
fn bounded_regularization_is_exact_nodewise_and_flattens_the_pole() {
    let u = RadialProfile::sample(-8.0, 0.0, 64, |t| t, true).unwrap();
    for n in [2u32, 5] {
        let r = max_regularize(&u, n);
        let floor = -(n as f64);
        assert!(r.psh(), "max with a constant keeps the certificate");
        for i in 0..u.len() {
            let (a, b) = (u.values()[i], r.values()[i]);
            // exactly max(u, -n): never below the floor, never below u,
            // unchanged where u is already above the floor
            assert_eq!(b, a.max(floor), "node {i} for n = {n}");
        }
        // the floor covers the first three nodes (u(t_min) = -8 < -5), so
        // the regularized profile has no singularity left at the center
        let nu = lelong_estimate(&r);
        assert!(nu.abs() <= 0.02, "n = {n}: residual slope {nu}");
    }
}

// ---------------------------------------------------------------------------
// Closed-form extremal values on sampled curves.
// ---------------------------------------------------------------------------

#[test]
fn extremal_values_are_sup_and_negated_sup() {
    // sup of sin over a full period sampled at degree resolution is exactly 1
    let samples: Vec<f64> = (0..360)
        .map(|k| (k as f64 * std::f64::consts::TAU / 360.0).sin())
        .collect();
    let v = least_negative_example(CurveKind::Line, &samples).unwrap();
    assert!((v - 1.0).abs() <= 1e-4);

    // a constant potential on a curve of self-intersection -1 contributes
    // its negation
    let v = least_negative_example(CurveKind::Exceptional, &[0.7; 16]).unwrap();
    assert!((v + 0.7).abs() <= 1e-12);

    assert!(matches!(
        least_negative_example(CurveKind::Line, &[]),
        Err(LabError::EmptySamples)
    ));
    assert!(matches!(
        least_negative_example(CurveKind::Line, &[0.0, f64::NAN]),
        Err(LabError::NonFinite(_))
    ));
}

// ---------------------------------------------------------------------------
// The pair envelope against the LP oracle.
//
// The feasible set { u <= 0, u + g and u + phi + g convex nondecreasing } is
// closed under pointwise max, so its pointwise supremum is the unique
// maximizer of sum(u_i) over the (linear) feasible region; the two-phase
// simplex in common/ computes that maximizer with no code shared with the
// sweep iteration under test.
// ---------------------------------------------------------------------------

struct EnvelopeCase {
    name: &'static str,
    phi: fn(f64) -> f64,
    n_omega: f64,
}

fn envelope_cases() -> Vec<EnvelopeCase> {
    vec![
        EnvelopeCase { name: "steep decreasing obstacle", phi: |t| -2.0 * t, n_omega: 1.0 },
        EnvelopeCase { name: "oscillating obstacle, lean budget", phi: |t| 0.5 * (3.0 * t).cos(), n_omega: 1.0 },
        EnvelopeCase { name: "oscillating obstacle, rich budget", phi: |t| 0.5 * (3.0 * t).cos(), n_omega: 4.0 },
        EnvelopeCase { name: "convex obstacle", phi: |t| t * t - 1.0, n_omega: 2.0 },
        EnvelopeCase { name: "increasing obstacle", phi: |t| 4.0 * t, n_omega: 1.0 },
    ]
}

fn case_profile(case: &EnvelopeCase) -> RadialProfile {
    RadialProfile::sample(-4.0, 0.0, 64, case.phi, false).unwrap()
}

#[test]
fn envelope_matches_the_lp_oracle_nodewise() {
    for case in envelope_cases() {
        let phi = case_profile(&case);
        let env = minimal_pair_envelope(&phi, case.n_omega).unwrap();
        let t: Vec<f64> = (0..phi.len()).map(|i| phi.t(i)).collect();
        let oracle = common::envelope_lp_oracle(&t, phi.values(), case.n_omega)
            .expect("a finite obstacle always has a feasible envelope");
        let worst = env
            .values()
            .iter()
            .zip(&oracle)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-6, "{}: max |sweep - lp| = {worst:e}", case.name);
    }
}

#[test]
fn envelope_outputs_satisfy_their_own_constraints() {
    for case in envelope_cases() {
        let phi = case_profile(&case);
        let env = minimal_pair_envelope(&phi, case.n_omega).unwrap();
        let res = envelope_residual(&phi, case.n_omega, env.values());
        assert!(res <= 1e-7, "{}: residual {res:e}", case.name);
        assert!(env.values().iter().all(|&v| v <= 0.0), "{}", case.name);
    }
}

#[test]
fn envelope_dominates_independently_verified_candidates() {
    // Candidates of the form M (e^{2t} - 1) - s are feasible once M is large
    // enough to convexify the obstacle (checked, not assumed, via the
    // residual), and must lie below the envelope everywhere.
    for case in envelope_cases() {
        let phi = case_profile(&case);
        let env = minimal_pair_envelope(&phi, case.n_omega).unwrap();
        let peak = phi.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let m = 1.0e5 * (1.0 + peak);
        let mut verified = 0usize;
        for shift in [0.0f64, 0.3, 1.7] {
            let cand: Vec<f64> = (0..phi.len())
                .map(|i| m * ((2.0 * phi.t(i)).exp() - 1.0) - shift)
                .collect();
            if envelope_residual(&phi, case.n_omega, &cand) > 1e-9 {
                continue; // not a feasible competitor; nothing to compare
            }
            verified += 1;
            for i in 0..cand.len() {
                assert!(
                    env.values()[i] >= cand[i] - 1e-7,
                    "{}: candidate (shift {shift}) beats the envelope at node {i}",
                    case.name
                );
            }
        }
        assert!(verified > 0, "{}: no candidate validated", case.name);
    }
}

#[test]
fn envelope_grows_nodewise_with_the_budget() {
    let phi = RadialProfile::sample(-4.0, 0.0, 64, |t| 0.5 * (3.0 * t).cos(), false).unwrap();
    let budgets = [0.5f64, 1.0, 2.0, 4.0, 8.0];
    let mut prev: Option<RadialProfile> = None;
    for &n in &budgets {
        let env = minimal_pair_envelope(&phi, n).unwrap();
        if let Some(lo) = &prev {
            for i in 0..env.len() {
                assert!(
                    lo.values()[i] <= env.values()[i] + 1e-9,
                    "budget step at node {i}"
                );
            }
        }
        prev = Some(env);
    }
}

#[test]
fn zero_obstacle_has_the_zero_envelope() {
    let phi = RadialProfile::sample(-4.0, 0.0, 64, |_| 0.0, true).unwrap();
    let env = minimal_pair_envelope(&phi, 1.0).unwrap();
    let worst = env.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(worst <= 1e-9, "max |envelope| = {worst:e}");
}

#[test]
fn envelope_rejects_bad_inputs() {
    let phi = RadialProfile::sample(-4.0, 0.0, 64, |t| t, false).unwrap();
    assert!(matches!(
        minimal_pair_envelope(&phi, -1.0),
        Err(LabError::BadData(_))
    ));
    assert!(matches!(
        minimal_pair_envelope(&phi, f64::NAN),
        Err(LabError::BadData(_))
    ));
    // a profile with a pole cannot even be constructed, so no envelope call
    // ever sees a non-finite obstacle
    let mut vals = phi.values().to_vec();
    vals[10] = f64::NEG_INFINITY;
    assert!(matches!(
        RadialProfile::new(-4.0, 0.0, vals, false),
        Err(LabError::NonFinite(_))
    ));
}

// ---------------------------------------------------------------------------
// Curvature blow-up probe: measured Hessian norms against hand-computed
// closed forms, then the fitted slopes.
//
// With y = 1/x coordinatewise and r_a = |x_a|:
//   |y_j|^2           has the single entry  |u_{j jbar}| = r_j^-4;
//   |y_j|^2 |y_k|^2   has |u_{j jbar}| = r_j^-4 r_k^-2,
//                         |u_{k kbar}| = r_k^-4 r_j^-2,
//                         |u_{j kbar}| = r_j^-3 r_k^-3,
//     so on the probe path r_j = r_k = delta the Frobenius norm is exactly
//     2 delta^-6;
//   the paired quadratic model adds |u_{1 2bar}| = delta^-4 / 2 on top of
//     the three diagonal entries (the third diagonal entry is constant in
//     delta).
// ---------------------------------------------------------------------------

#[test]
fn probe_norms_match_hand_computed_hessians() {
    let deltas = default_deltas();

    let single = jstar_singularity_probe(&model_single(0), (0, 1), &deltas).unwrap();
    for (d, norm) in deltas.iter().zip(&single.hessian_norms) {
        let oracle = d.powi(-4);
        assert!(
            (norm - oracle).abs() <= 0.01 * oracle,
            "single: delta {d}, measured {norm:e}, oracle {oracle:e}"
        );
    }

    let product = jstar_singularity_probe(&model_product(0, 1), (0, 1), &deltas).unwrap();
    for (d, norm) in deltas.iter().zip(&product.hessian_norms) {
        let oracle = 2.0 * d.powi(-6);
        assert!(
            (norm - oracle).abs() <= 0.01 * oracle,
            "product: delta {d}, measured {norm:e}, oracle {oracle:e}"
        );
    }

    let quad = jstar_singularity_probe(&model_quadratic, (0, 1), &deltas).unwrap();
    for (d, norm) in deltas.iter().zip(&quad.hessian_norms) {
        // two diagonal entries delta^-8, two off-diagonal (delta^-4 / 2)^2,
        // and the constant third diagonal entry
        let third = 0.83f64.hypot(0.29);
        let oracle = (2.0 * d.powi(-8) + 0.5 * d.powi(-8) + third.powi(-8)).sqrt();
        assert!(
            (norm - oracle).abs() <= 0.01 * oracle,
            "quadratic: delta {d}, measured {norm:e}, oracle {oracle:e}"
        );
    }
}

#[test]
fn probe_slopes_separate_the_model_singularities() {
    let deltas = default_deltas();
    let quad = jstar_singularity_probe(&model_quadratic, (0, 1), &deltas).unwrap();
    assert!((quad.slope + 4.0).abs() <= 0.15, "quadratic slope {}", quad.slope);

    let product = jstar_singularity_probe(&model_product(0, 1), (0, 1), &deltas).unwrap();
    assert!((product.slope + 6.0).abs() <= 0.15, "product slope {}", product.slope);

    let single = jstar_singularity_probe(&model_single(0), (0, 1), &deltas).unwrap();
    assert!((single.slope + 4.0).abs() <= 0.15, "single slope {}", single.slope);

    // the probe is symmetric in its axes and works on any distinct pair
    let swapped = jstar_singularity_probe(&model_product(1, 2), (2, 1), &deltas).unwrap();
    assert!((swapped.slope + 6.0).abs() <= 0.15, "swapped slope {}", swapped.slope);
}

#[test]
fn probe_rejects_flat_potentials_and_bad_axes() {
    let deltas = default_deltas();
    assert!(matches!(
        jstar_singularity_probe(&|_: &[f64; 6]| 1.0, (0, 1), &deltas),
        Err(LabError::Degenerate(_))
    ));
    assert!(matches!(
        jstar_singularity_probe(&model_quadratic, (1, 1), &deltas),
        Err(LabError::BadData(_))
    ));
    assert!(matches!(
        jstar_singularity_probe(&model_quadratic, (0, 3), &deltas),
        Err(LabError::BadData(_))
    ));
    assert!(matches!(
        jstar_singularity_probe(&model_quadratic, (0, 1), &[0.08]),
        Err(LabError::BadData(_))
    ));
    assert!(matches!(
        jstar_singularity_probe(&model_quadratic, (0, 1), &[0.08, -0.01]),
        Err(LabError::BadData(_))
    ));
}
