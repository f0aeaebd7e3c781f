//! The minimal-singularity pair envelope on radial profiles.
//!
//! For a radial perturbation phi and a positivity budget n, the envelope is
//!
//! ```text
//! sup { u <= 0 :  u and u + phi are both (n omega)-quasi-psh }
//! ```
//!
//! In t = log r coordinates, "(n omega)-quasi-psh" for a radial function
//! means u + n e^{2t} is convex and nondecreasing (e^{2t} = |z|^2 is the
//! radial potential of the standard form omega). Each constraint set is
//! closed under pointwise max, so the envelope exists nodewise and can be
//! reached from u = 0 by repeatedly replacing the iterate with its greatest
//! minorant in each constraint set; the iteration is monotone decreasing and
//! its fixed point is feasible and dominates every feasible candidate.

use super::radial::RadialProfile;
use super::LabError;

/// Iteration stops when the sup-norm change of a full sweep drops below this.
const STOP: f64 = 1e-9;
const MAX_SWEEPS: usize = 200_000;

/// Computes the envelope of the pair (0, phi) at positivity budget
/// `n_omega >= 0`. The output profile is generally not convex itself, so it
/// carries no psh certificate flag.
pub fn minimal_pair_envelope(
    phi: &RadialProfile,
    n_omega: f64,
) -> Result<RadialProfile, LabError> {
    if !(n_omega.is_finite() && n_omega >= 0.0) {
        return Err(LabError::BadData(format!(
            "n_omega must be a nonnegative real, got {n_omega}"
        )));
    }
    if let Some(bad) = phi.values().iter().find(|v| !v.is_finite()) {
        return Err(LabError::Infeasible(format!(
            "phi has a non-finite sample ({bad}); no finite envelope exists on the grid"
        )));
    }
    let n = phi.len();
    let t: Vec<f64> = (0..n).map(|i| phi.t(i)).collect();
    let g: Vec<f64> = t.iter().map(|ti| n_omega * (2.0 * ti).exp()).collect();

    let mut v = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    let mut prev = vec![0.0f64; n];
    for _sweep in 0..MAX_SWEEPS {
        prev.copy_from_slice(&v);
        // greatest minorant with v + g convex nondecreasing
        for i in 0..n {
            w[i] = v[i] + g[i];
        }
        convex_nondecreasing_minorant(&t, &mut w);
        for i in 0..n {
            v[i] = w[i] - g[i];
        }
        // greatest minorant with v + phi + g convex nondecreasing
        for i in 0..n {
            w[i] = v[i] + phi.values()[i] + g[i];
        }
        convex_nondecreasing_minorant(&t, &mut w);
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = (w[i] - phi.values()[i] - g[i]).min(0.0);
        }
        // the sweep is monotone decreasing, so the sup change is one-sided
        let change = v
            .iter()
            .zip(&prev)
            .map(|(a, b)| b - a)
            .fold(0.0f64, f64::max);
        if change < STOP {
            return RadialProfile::new(phi.t_min(), phi.t_max(), v, false);
        }
    }
    Err(LabError::Infeasible(format!(
        "envelope iteration did not settle within {MAX_SWEEPS} sweeps"
    )))
}

/// Replaces w by its greatest convex-nondecreasing minorant on the nodes
/// (t_i, w_i): lower convex hull, then suffix minimum. The suffix minimum of
/// a convex sequence flattens its decreasing head at the running minimum,
/// which keeps convexity, and any convex nondecreasing minorant m satisfies
/// m <= hull and m_i <= min_{k >= i} hull_k, so the result is the greatest
/// one.
fn convex_nondecreasing_minorant(t: &[f64], w: &mut [f64]) {
    let n = w.len();
    // lower convex hull by monotone chain over indices
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (t[b] - t[a]) * (w[i] - w[a]) - (t[i] - t[a]) * (w[b] - w[a]);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    // evaluate the hull at every node
    let mut seg = 0;
    let snapshot: Vec<f64> = w.to_vec();
    for i in 0..n {
        while seg + 1 < hull.len() && hull[seg + 1] < i {
            seg += 1;
        }
        if hull[seg] == i {
            w[i] = snapshot[i];
            continue;
        }
        let (a, b) = (hull[seg], hull[seg + 1]);
        let lam = (t[i] - t[a]) / (t[b] - t[a]);
        w[i] = snapshot[a] + lam * (snapshot[b] - snapshot[a]);
    }
    // suffix minimum
    for i in (0..n - 1).rev() {
        if w[i] > w[i + 1] {
            w[i] = w[i + 1];
        }
    }
}

/// Discrete feasibility residual of a candidate: the largest violation of
/// u <= 0, convexity/monotonicity of u + g, and of u + phi + g. Used by the
/// tests and the report to certify envelope outputs.
pub fn envelope_residual(phi: &RadialProfile, n_omega: f64, u: &[f64]) -> f64 {
    let n = phi.len();
    let g: Vec<f64> = (0..n).map(|i| n_omega * (2.0 * phi.t(i)).exp()).collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        worst = worst.max(u[i]);
    }
    for with_phi in [false, true] {
        let w: Vec<f64> = (0..n)
            .map(|i| u[i] + g[i] + if with_phi { phi.values()[i] } else { 0.0 })
            .collect();
        for i in 0..n - 1 {
            worst = worst.max(w[i] - w[i + 1]);
        }
        for i in 1..n - 1 {
            worst = worst.max(-(w[i + 1] - 2.0 * w[i] + w[i - 1]));
        }
    }
    worst
}
