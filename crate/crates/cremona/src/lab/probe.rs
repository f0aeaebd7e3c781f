//! Curvature-blowup probe along two-coordinate degeneration paths.
//!
//! A potential u is sampled on a three-complex-coordinate chart through a
//! user-supplied callback that receives the six real coordinates
//! `[re1, im1, re2, im2, re3, im3]`. The probe slides a base point whose
//! j-th and k-th coordinates shrink like delta, measures the complex Hessian
//! of u at each delta by central finite differences, and fits the log-log
//! slope of the Hessian's Frobenius norm against delta. A potential with a
//! `|y_j|^2 + |y_k|^2`-type singularity at the degeneration locus blows up
//! with slope -4.

use super::{ls_slope, LabError};

/// Outcome of a probe run: the delta ladder, the Hessian Frobenius norms
/// measured at each rung, and the fitted log-log slope.
#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub deltas: Vec<f64>,
    pub hessian_norms: Vec<f64>,
    pub slope: f64,
}

/// The default delta ladder: 0.08 * 2^-m for m = 0..6.
pub fn default_deltas() -> Vec<f64> {
    (0..6).map(|m| 0.08 * 0.5f64.powi(m)).collect()
}

/// Pulls a potential on the target chart back through the reciprocal chart
/// map of the degree-3 involution: each complex coordinate is inverted,
/// `y_a = 1 / x_a`. Returns the six real coordinates of the image point.
pub fn cremona_chart(x: &[f64; 6]) -> [f64; 6] {
    let mut y = [0.0f64; 6];
    for a in 0..3 {
        let (re, im) = (x[2 * a], x[2 * a + 1]);
        let n = re * re + im * im;
        y[2 * a] = re / n;
        y[2 * a + 1] = -im / n;
    }
    y
}

/// Probes the singularity exponent of `u` along the path where complex
/// coordinates `axes.0` and `axes.1` (0-based, distinct, < 3) degenerate.
///
/// For each delta in `deltas` the base point has x_j = delta e^{0.4 i},
/// x_k = delta e^{1.1 i}, and third coordinate 0.83 + 0.29 i; the complex
/// Hessian of u is measured there with central differences of step
/// delta / 100, and the slope of ln |H|_F against ln delta is fitted by
/// least squares. Norms below 1e-8, or non-finite, reject the run as
/// degenerate.
pub fn jstar_singularity_probe(
    u: &dyn Fn(&[f64; 6]) -> f64,
    axes: (usize, usize),
    deltas: &[f64],
) -> Result<ProbeResult, LabError> {
    let (j, k) = axes;
    if j > 2 || k > 2 || j == k {
        return Err(LabError::BadData(format!(
            "axes must be two distinct coordinates out of 0..3, got ({j}, {k})"
        )));
    }
    if deltas.len() < 2 {
        return Err(LabError::BadData(
            "need at least two delta values to fit a slope".into(),
        ));
    }
    if deltas.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(LabError::BadData("deltas must be positive reals".into()));
    }
    let mut norms = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let mut base = [0.0f64; 6];
        base[2 * j] = delta * 0.4f64.cos();
        base[2 * j + 1] = delta * 0.4f64.sin();
        base[2 * k] = delta * 1.1f64.cos();
        base[2 * k + 1] = delta * 1.1f64.sin();
        let third = 3 - j - k;
        base[2 * third] = 0.83;
        base[2 * third + 1] = 0.29;
        let norm = complex_hessian_norm(u, &base, delta / 100.0);
        if !norm.is_finite() {
            return Err(LabError::Degenerate(format!(
                "non-finite Hessian at delta = {delta}"
            )));
        }
        if norm < 1e-8 {
            return Err(LabError::Degenerate(format!(
                "Hessian norm {norm} at delta = {delta} is numerically flat"
            )));
        }
        norms.push(norm);
    }
    let lx: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ly: Vec<f64> = norms.iter().map(|n| n.ln()).collect();
    let slope = ls_slope(&lx, &ly);
    Ok(ProbeResult {
        deltas: deltas.to_vec(),
        hessian_norms: norms,
        slope,
    })
}

/// Frobenius norm of the complex Hessian (u_{a b-bar})_{a,b} at `base`,
/// assembled from the 6x6 real Hessian H_r by central differences of step
/// `step`:
///
/// ```text
/// 4 Re u_{a b-bar} = Hr[pa][pb] + Hr[qa][qb]
/// 4 Im u_{a b-bar} = Hr[pa][qb] - Hr[qa][pb]
/// ```
///
/// with pa, qa the real and imaginary slots of coordinate a.
fn complex_hessian_norm(u: &dyn Fn(&[f64; 6]) -> f64, base: &[f64; 6], step: f64) -> f64 {
    let mut hr = [[0.0f64; 6]; 6];
    let f0 = u(base);
    for p in 0..6 {
        for q in p..6 {
            let v = if p == q {
                let mut a = *base;
                a[p] += step;
                let mut b = *base;
                b[p] -= step;
                (u(&a) - 2.0 * f0 + u(&b)) / (step * step)
            } else {
                let mut pp = *base;
                pp[p] += step;
                pp[q] += step;
                let mut pm = *base;
                pm[p] += step;
                pm[q] -= step;
                let mut mp = *base;
                mp[p] -= step;
                mp[q] += step;
                let mut mm = *base;
                mm[p] -= step;
                mm[q] -= step;
                (u(&pp) - u(&pm) - u(&mp) + u(&mm)) / (4.0 * step * step)
            };
            hr[p][q] = v;
            hr[q][p] = v;
        }
    }
    let mut sq = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            let (pa, qa, pb, qb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            let re = 0.25 * (hr[pa][pb] + hr[qa][qb]);
            let im = 0.25 * (hr[pa][qb] - hr[qa][pb]);
            sq += re * re + im * im;
        }
    }
    sq.sqrt()
}

/// Model potential with the paired quadratic singularity after the chart
/// inversion: |y1|^2 + |y2|^2 + |y3|^2 + Re(y1 conj(y2)) with y = 1/x.
pub fn model_quadratic(x: &[f64; 6]) -> f64 {
    let y = cremona_chart(x);
    let sq = |a: usize| y[2 * a] * y[2 * a] + y[2 * a + 1] * y[2 * a + 1];
    let re12 = y[0] * y[2] + y[1] * y[3];
    sq(0) + sq(1) + sq(2) + re12
}

/// Model potential |y_j|^2 |y_k|^2 in the inverted chart.
pub fn model_product(j: usize, k: usize) -> impl Fn(&[f64; 6]) -> f64 {
    move |x: &[f64; 6]| {
        let y = cremona_chart(x);
        let sq = |a: usize| y[2 * a] * y[2 * a] + y[2 * a + 1] * y[2 * a + 1];
        sq(j) * sq(k)
    }
}

/// Model potential |y_j|^2 alone in the inverted chart.
pub fn model_single(j: usize) -> impl Fn(&[f64; 6]) -> f64 {
    move |x: &[f64; 6]| {
        let y = cremona_chart(x);
        y[2 * j] * y[2 * j] + y[2 * j + 1] * y[2 * j + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ladder_is_geometric_from_008() {
        let d = default_deltas();
        assert_eq!(d.len(), 6);
        assert!((d[0] - 0.08).abs() < 1e-15);
        for m in 1..d.len() {
            assert!((d[m] - d[m - 1] / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn chart_is_an_involution_on_points() {
        let x = [0.3, -0.4, 1.2, 0.05, -0.7, 0.9];
        let y = cremona_chart(&cremona_chart(&x));
        for a in 0..6 {
            assert!((y[a] - x[a]).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_axes_and_ladders_are_rejected() {
        let u = |_: &[f64; 6]| 0.0;
        assert!(jstar_singularity_probe(&u, (0, 0), &default_deltas()).is_err());
        assert!(jstar_singularity_probe(&u, (0, 3), &default_deltas()).is_err());
        assert!(jstar_singularity_probe(&u, (0, 1), &[0.1]).is_err());
        assert!(jstar_singularity_probe(&u, (0, 1), &[0.1, -0.2]).is_err());
    }

    #[test]
    fn flat_potentials_are_reported_degenerate() {
        let u = |x: &[f64; 6]| x[0] + 2.0 * x[3];
        let err = jstar_singularity_probe(&u, (0, 1), &default_deltas());
        assert!(matches!(err, Err(LabError::Degenerate(_))));
    }

    #[test]
    fn quadratic_model_blows_up_with_slope_minus_four() {
        let res = jstar_singularity_probe(&model_quadratic, (0, 1), &default_deltas()).unwrap();
        assert!(
            (res.slope + 4.0).abs() < 0.15,
            "slope {} should be near -4",
            res.slope
        );
    }
}
