//! Desk-scale numerical pluripotential toolkit.
//!
//! Potentials come in two sampled representations:
//!
//! * [`radial::RadialProfile`] — a radial potential u(r) stored against
//!   t = log r, where plurisubharmonicity is exactly "convex and
//!   nondecreasing in t". This is the certified representation used by the
//!   envelope solver.
//! * [`grid::GridFunction`] — samples on a uniform grid: one complex
//!   dimension uses a cell-centered grid on the square [-extent, extent]^2;
//!   two complex dimensions use a polyradial (Reinhardt) grid over
//!   (|z1|, |z2|) in [0, extent]^2.
//!
//! Mass conventions: dd^c is normalized so that dd^c log|z| has unit mass in
//! one complex dimension and (dd^c log|z|)^2 has unit mass in two, matching
//! the convention in which a line through a point has multiplicity 1.

pub mod extremal;
pub mod grid;
pub mod lelong;
pub mod mass;
pub mod models;
pub mod probe;
pub mod radial;

use std::fmt;

pub use extremal::{envelope_residual, minimal_pair_envelope};
pub use grid::GridFunction;
pub use lelong::{lelong_estimate, lelong_estimate_at};
pub use mass::{ddc_mass, monotone_convergence_report, ApproxPair, MonotoneReport};
pub use models::{
    abs_squared_polyradial, eps_family_plane, eps_family_polyradial, epsilon, log_abs_plane,
    smoothed_log_plane, smoothed_log_polyradial,
};
pub use probe::{
    default_deltas, jstar_singularity_probe, model_product, model_quadratic, model_single,
    ProbeResult,
};
pub use radial::{least_negative_example, max_regularize, CurveKind, RadialProfile};

/// Errors raised by the lab's numerical operations.
#[derive(Debug, Clone, PartialEq)]
pub enum LabError {
    /// Construction invariant violated (shape, resolution, node count, ...).
    BadData(String),
    /// A non-finite sample outside the declared singular node set.
    NonFinite(String),
    /// Integration region does not fit inside the sampled grid.
    RegionTooLarge { radius: f64, max: f64 },
    /// A family that must be nodewise nonincreasing is not.
    NotDecreasing { member: usize, node: usize },
    /// An operation that needs samples got none.
    EmptySamples,
    /// Probe/estimate point lies outside the grid.
    OutsideGrid(String),
    /// The probed function has no usable signal (e.g. vanishing Hessian).
    Degenerate(String),
    /// No finite envelope exists on the grid.
    Infeasible(String),
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::BadData(msg) => write!(f, "invalid lab data: {msg}"),
            LabError::NonFinite(msg) => write!(f, "non-finite sample: {msg}"),
            LabError::RegionTooLarge { radius, max } => {
                write!(f, "region radius {radius} exceeds the usable grid radius {max}")
            }
            LabError::NotDecreasing { member, node } => {
                write!(f, "family is not nonincreasing: member {member} rises at node {node}")
            }
            LabError::EmptySamples => write!(f, "empty sample set"),
            LabError::OutsideGrid(msg) => write!(f, "point outside grid: {msg}"),
            LabError::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            LabError::Infeasible(msg) => write!(f, "infeasible envelope problem: {msg}"),
        }
    }
}

impl std::error::Error for LabError {}

/// Deterministic pairwise (recursive-halving) summation: fixed reduction
/// order independent of chunking, with better roundoff than a running sum.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Least-squares slope of y against x (at least two points, x not all equal).
pub(crate) fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    sxy / sxx
}
