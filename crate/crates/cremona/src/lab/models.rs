//! Built-in model potentials used by the reports and the CLI demos.

use super::grid::GridFunction;
use super::LabError;

/// The smoothing scale 2^{-n}.
pub fn epsilon(n: u32) -> f64 {
    (0.5f64).powi(n as i32)
}

/// u(z) = (1/2) log(|z|^2 + eps^2) on the plane grid. Decreases to log|z| as
/// eps drops; its dd^c mass over |z| <= R is exactly R^2 / (R^2 + eps^2).
pub fn smoothed_log_plane(
    extent: f64,
    resolution: usize,
    eps: f64,
) -> Result<GridFunction, LabError> {
    GridFunction::sample_plane(extent, resolution, |x, y| {
        0.5 * (x * x + y * y + eps * eps).ln()
    })
}

/// u(z) = log|z| on the plane grid. Odd resolutions place a node at the
/// origin and exercise the singular-core mass path.
pub fn log_abs_plane(extent: f64, resolution: usize) -> Result<GridFunction, LabError> {
    GridFunction::sample_plane(extent, resolution, |x, y| 0.5 * (x * x + y * y).ln())
}

/// u(z1, z2) = (1/2) log(|z1|^2 + |z2|^2 + eps^2) on the polyradial grid.
/// Its Monge-Ampere mass over |z| <= R is exactly R^4 / (R^2 + eps^2)^2.
pub fn smoothed_log_polyradial(
    extent: f64,
    resolution: usize,
    eps: f64,
) -> Result<GridFunction, LabError> {
    GridFunction::sample_polyradial(extent, resolution, |r1, r2| {
        0.5 * (r1 * r1 + r2 * r2 + eps * eps).ln()
    })
}

/// u(z1, z2) = |z|^2 on the polyradial grid; mass over |z| <= R is 4 R^4.
pub fn abs_squared_polyradial(extent: f64, resolution: usize) -> Result<GridFunction, LabError> {
    GridFunction::sample_polyradial(extent, resolution, |r1, r2| r1 * r1 + r2 * r2)
}

/// The decreasing model family u_n = (1/2) log(|z|^2 + 4^{-n}), n = 1..=n_max.
pub fn eps_family_plane(
    extent: f64,
    resolution: usize,
    n_max: u32,
) -> Result<Vec<GridFunction>, LabError> {
    (1..=n_max).map(|n| smoothed_log_plane(extent, resolution, epsilon(n))).collect()
}

/// Two-dimensional version of the decreasing model family.
pub fn eps_family_polyradial(
    extent: f64,
    resolution: usize,
    n_max: u32,
) -> Result<Vec<GridFunction>, LabError> {
    (1..=n_max).map(|n| smoothed_log_polyradial(extent, resolution, epsilon(n))).collect()
}
