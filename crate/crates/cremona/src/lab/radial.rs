//! Radial potentials in the log-radius coordinate, and the elementary
//! closed-form operations on them.

use super::LabError;

/// Tolerance on second differences when certifying convexity.
pub const PSH_TOL: f64 = 1e-9;

/// A radial potential u(r) sampled on a uniform grid in t = log r over
/// [t_min, t_max]. A profile flagged `psh` is certified convex and
/// nondecreasing in t (the exact radial characterization of
/// plurisubharmonicity), up to `PSH_TOL` on the difference tests.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    t_min: f64,
    t_max: f64,
    values: Vec<f64>,
    psh: bool,
}

impl RadialProfile {
    pub fn new(t_min: f64, t_max: f64, values: Vec<f64>, psh: bool) -> Result<Self, LabError> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(LabError::BadData(format!(
                "need finite t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if values.len() < 16 {
            return Err(LabError::BadData(format!(
                "a radial profile needs at least 16 nodes, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(LabError::NonFinite(format!("profile sample {bad}")));
        }
        let p = RadialProfile { t_min, t_max, values, psh };
        if psh && !p.is_convex_nondecreasing(PSH_TOL) {
            return Err(LabError::BadData(
                "profile flagged psh but is not convex nondecreasing in log r".to_string(),
            ));
        }
        Ok(p)
    }

    /// Sample u(t) on n uniform nodes.
    pub fn sample(
        t_min: f64,
        t_max: f64,
        n: usize,
        u: impl Fn(f64) -> f64,
        psh: bool,
    ) -> Result<Self, LabError> {
        if n < 2 {
            return Err(LabError::BadData("need at least 2 sample nodes".to_string()));
        }
        let dt = (t_max - t_min) / (n - 1) as f64;
        let values = (0..n).map(|i| u(t_min + i as f64 * dt)).collect();
        RadialProfile::new(t_min, t_max, values, psh)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction demands >= 16 nodes
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / (self.values.len() - 1) as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t_min + i as f64 * self.dt()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn psh(&self) -> bool {
        self.psh
    }

    /// Second differences >= -tol and first differences >= -tol.
    pub fn is_convex_nondecreasing(&self, tol: f64) -> bool {
        let v = &self.values;
        v.windows(2).all(|w| w[1] - w[0] >= -tol)
            && v.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] >= -tol)
    }
}

/// Pointwise max(u, -n): the standard bounded regularization. Decreases to u
/// as n grows, keeps the psh certificate (max with a constant preserves
/// convexity and monotonicity), and is constant near any log pole.
pub fn max_regularize(u: &RadialProfile, n: u32) -> RadialProfile {
    let floor = -(n as f64);
    let values = u.values().iter().map(|&v| v.max(floor)).collect();
    RadialProfile {
        t_min: u.t_min(),
        t_max: u.t_max(),
        values,
        psh: u.psh(),
    }
}

/// Which closed-form extremal functional to evaluate on a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// A line: the functional is sup of the potential.
    Line,
    /// An exceptional curve (self-intersection -1): sup of the negated
    /// potential.
    Exceptional,
}

/// The two closed-form least-negative intersection values: sup(phi) on a
/// line, sup(-phi) on an exceptional curve.
pub fn least_negative_example(kind: CurveKind, phi_samples: &[f64]) -> Result<f64, LabError> {
    if phi_samples.is_empty() {
        return Err(LabError::EmptySamples);
    }
    if let Some(bad) = phi_samples.iter().find(|v| !v.is_finite()) {
        return Err(LabError::NonFinite(format!("curve sample {bad}")));
    }
    let sup = |xs: &mut dyn Iterator<Item = f64>| xs.fold(f64::NEG_INFINITY, f64::max);
    Ok(match kind {
        CurveKind::Line => sup(&mut phi_samples.iter().copied()),
        CurveKind::Exceptional => sup(&mut phi_samples.iter().map(|v| -v)),
    })
}
