//! Monge–Ampère masses of sampled potentials and monotone-family reports.
//!
//! Normalization: dd^c = (i/pi) d dbar, so dd^c log|z| carries unit mass in
//! one complex dimension and (dd^c log|z|)^2 carries unit mass in two.

use super::grid::GridFunction;
use super::{pairwise_sum, LabError};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Chebyshev radius (in cells) of the core square that receives the mass of
/// a singular node through the discrete flux identity.
const CORE_CELLS: i64 = 6;

/// Nodes this close (in cells) to a singular node are never read.
const EXCLUDE_CELLS: i64 = 2;

/// Mass of dd^c u (one complex dimension) or (dd^c u)^2 (two) over the ball
/// |z| <= region_radius.
///
/// One dimension: (1/2pi) int Delta u via the 5-point stencil and midpoint
/// quadrature. Declared singular nodes are handled by summing the stencil
/// outside a core square around them and adding the staircase flux through
/// the core boundary — the discrete Green identity makes the total telescope
/// to the boundary flux of the whole region, so no values nearer than
/// `CORE_CELLS - 1` cells to the singularity are ever read (comfortably
/// outside the 2-cell exclusion annulus).
///
/// Two dimensions: polyradial determinant quadrature; for u = phi(r1, r2) the
/// complex Hessian has determinant
/// (1/16) [(phi_11 + phi_1/r1)(phi_22 + phi_2/r2) - phi_12^2], and the mass
/// over the ball is 32 times its integral against r1 r2 dr1 dr2 on the
/// quarter disk. Singular nodes are not supported in two dimensions (the
/// polyradial grid has no node at the origin, so model singularities never
/// need them).
pub fn ddc_mass(u: &GridFunction, region_radius: f64) -> Result<f64, LabError> {
    if !region_radius.is_finite() || region_radius <= 0.0 {
        return Err(LabError::BadData(format!(
            "region radius must be positive and finite, got {region_radius}"
        )));
    }
    match u.dims {
        1 => mass_plane(u, region_radius),
        _ => mass_polyradial(u, region_radius),
    }
}

fn mass_plane(u: &GridFunction, radius: f64) -> Result<f64, LabError> {
    let res = u.resolution;
    let h = u.spacing();
    let max_radius = u.extent - 2.0 * h;
    if radius > max_radius {
        return Err(LabError::RegionTooLarge { radius, max: max_radius });
    }
    let at = |i: i64, j: i64| -> f64 { u.values[(j as usize) * res + i as usize] };
    let inside = |i: usize, j: usize| -> bool {
        let x = u.coord(i);
        let y = u.coord(j);
        x * x + y * y <= radius * radius
    };

    // Chebyshev distance (in cells) to the nearest singular node.
    let cheb = |i: usize, j: usize| -> i64 {
        u.singular
            .iter()
            .map(|&(si, sj)| {
                let di = (i as i64 - si as i64).abs();
                let dj = (j as i64 - sj as i64).abs();
                di.max(dj)
            })
            .min()
            .unwrap_or(i64::MAX)
    };

    // Every singular node must sit deep enough inside the region that its
    // core square (plus one ring for the flux) is within the summed disk.
    for &(si, sj) in &u.singular {
        let x = u.coord(si);
        let y = u.coord(sj);
        let reach = (x.hypot(y)) + (CORE_CELLS as f64 + 2.0) * h * std::f64::consts::SQRT_2;
        if reach > radius {
            return Err(LabError::RegionTooLarge { radius, max: reach });
        }
    }

    let mut terms: Vec<f64> = Vec::new();

    // Stencil sum over regular nodes in the disk, skipping core squares.
    for j in 1..res - 1 {
        for i in 1..res - 1 {
            if !inside(i, j) {
                continue;
            }
            if !u.singular.is_empty() && cheb(i, j) <= CORE_CELLS {
                continue;
            }
            let (i, j) = (i as i64, j as i64);
            let lap =
                at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j);
            if !lap.is_finite() {
                return Err(LabError::NonFinite(format!(
                    "stencil at node ({i}, {j}) touches a non-finite sample"
                )));
            }
            terms.push(lap);
        }
    }

    // Staircase flux through each core-square boundary: sum over directed
    // edges (a in core, b outside) of u(b) - u(a). Both endpoints are at
    // Chebyshev distance >= CORE_CELLS - 1 from the singularity.
    if !u.singular.is_empty() {
        debug_assert!(CORE_CELLS - 1 > EXCLUDE_CELLS);
        for j in 0..res {
            for i in 0..res {
                if cheb(i, j) > CORE_CELLS {
                    continue;
                }
                for (di, dj) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= res as i64 || nj >= res as i64 {
                        return Err(LabError::RegionTooLarge {
                            radius,
                            max: u.extent - (CORE_CELLS as f64 + 1.0) * h,
                        });
                    }
                    if cheb(ni as usize, nj as usize) > CORE_CELLS {
                        let flux = at(ni, nj) - at(i as i64, j as i64);
                        if !flux.is_finite() {
                            return Err(LabError::NonFinite(format!(
                                "flux edge at node ({i}, {j}) touches a non-finite sample"
                            )));
                        }
                        terms.push(flux);
                    }
                }
            }
        }
    }

    Ok(pairwise_sum(&terms) / TAU)
}

fn mass_polyradial(u: &GridFunction, radius: f64) -> Result<f64, LabError> {
    if !u.singular.is_empty() {
        return Err(LabError::NonFinite(
            "polyradial masses need finite samples everywhere (no node sits at the origin)"
                .to_string(),
        ));
    }
    let res = u.resolution;
    let h = u.spacing();
    let max_radius = u.extent - 2.0 * h;
    if radius > max_radius {
        return Err(LabError::RegionTooLarge { radius, max: max_radius });
    }
    // Mirror ghosts across r = 0: the node at -h/2 reflects the node at h/2.
    let at = |i: i64, j: i64| -> f64 {
        let i = if i < 0 { -i - 1 } else { i } as usize;
        let j = if j < 0 { -j - 1 } else { j } as usize;
        u.values[j * res + i]
    };

    let mut terms: Vec<f64> = Vec::new();
    for j in 0..res - 1 {
        let r2 = u.coord(j);
        for i in 0..res - 1 {
            let r1 = u.coord(i);
            if r1 * r1 + r2 * r2 > radius * radius {
                continue;
            }
            let (i, j) = (i as i64, j as i64);
            let c = at(i, j);
            let d1 = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
            let d2 = (at(i, j + 1) - at(i, j - 1)) / (2.0 * h);
            let d11 = (at(i + 1, j) - 2.0 * c + at(i - 1, j)) / (h * h);
            let d22 = (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / (h * h);
            let d12 = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1)
                + at(i - 1, j - 1))
                / (4.0 * h * h);
            let det = ((d11 + d1 / r1) * (d22 + d2 / r2) - d12 * d12) / 16.0;
            let term = 32.0 * det * r1 * r2 * h * h;
            if !term.is_finite() {
                return Err(LabError::NonFinite(format!(
                    "determinant at node ({i}, {j}) is not finite"
                )));
            }
            terms.push(term);
        }
    }
    Ok(pairwise_sum(&terms))
}

/// Masses of a nodewise-nonincreasing family, plus an extrapolated limit
/// (Aitken delta-squared on the last three masses when stable, else the last
/// mass).
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport {
    pub masses: Vec<f64>,
    pub limit: f64,
}

/// Validates that `family` is nodewise nonincreasing (tolerance 1e-12, so
/// legitimate smoothing families are not rejected by roundoff) and reports
/// the mass of every member over the given ball.
pub fn monotone_convergence_report(
    family: &[GridFunction],
    radius: f64,
) -> Result<MonotoneReport, LabError> {
    if family.is_empty() {
        return Err(LabError::EmptySamples);
    }
    for (k, w) in family.windows(2).enumerate() {
        if !w[0].same_shape(&w[1]) {
            return Err(LabError::BadData(format!(
                "family members {k} and {} have different grid shapes",
                k + 1
            )));
        }
        if let Err(node) = w[1].le_nodewise(&w[0], 1e-12) {
            return Err(LabError::NotDecreasing { member: k + 1, node });
        }
    }
    let masses = family.iter().map(|u| ddc_mass(u, radius)).collect::<Result<Vec<_>, _>>()?;
    let limit = aitken_limit(&masses);
    Ok(MonotoneReport { masses, limit })
}

fn aitken_limit(masses: &[f64]) -> f64 {
    let n = masses.len();
    if n < 3 {
        return *masses.last().unwrap();
    }
    let (a, b, c) = (masses[n - 3], masses[n - 2], masses[n - 1]);
    let denom = c - 2.0 * b + a;
    if denom.abs() < 1e-14 {
        return c;
    }
    let accel = c - (c - b) * (c - b) / denom;
    if accel.is_finite() {
        accel
    } else {
        c
    }
}

/// A good-approximation pair: two nodewise-nonincreasing sequences of sampled
/// potentials with a shared positivity scale — `omega_scale` is the multiple
/// s such that s*omega + dd^c u stays positive for every member, where omega
/// is the standard form with potential |z|^2.
#[derive(Debug, Clone)]
pub struct ApproxPair {
    pub plus: Vec<GridFunction>,
    pub minus: Vec<GridFunction>,
    pub omega_scale: f64,
}

impl ApproxPair {
    /// Checks both sequences are nonincreasing and every member passes the
    /// discrete positivity test s*omega + dd^c u >= 0 at interior nodes:
    /// in one dimension a nonnegative shifted Laplacian (the potential |z|^2
    /// has Delta = 4, so the test is 4s + Delta u >= -tol); in two dimensions
    /// positive semidefiniteness of the shifted complex Hessian.
    pub fn validate(&self) -> Result<(), LabError> {
        if !(self.omega_scale.is_finite() && self.omega_scale >= 0.0) {
            return Err(LabError::BadData(format!(
                "omega_scale must be a nonnegative real, got {}",
                self.omega_scale
            )));
        }
        for (label, seq) in [("plus", &self.plus), ("minus", &self.minus)] {
            for (k, w) in seq.windows(2).enumerate() {
                if !w[0].same_shape(&w[1]) {
                    return Err(LabError::BadData(format!(
                        "{label} members {k} and {} have different grid shapes",
                        k + 1
                    )));
                }
                if let Err(node) = w[1].le_nodewise(&w[0], 1e-12) {
                    return Err(LabError::NotDecreasing { member: k + 1, node });
                }
            }
            for (k, u) in seq.iter().enumerate() {
                check_positivity(u, self.omega_scale).map_err(|e| {
                    LabError::BadData(format!("{label} member {k}: {e}"))
                })?;
            }
        }
        Ok(())
    }
}

fn check_positivity(u: &GridFunction, s: f64) -> Result<(), LabError> {
    const TOL: f64 = 1e-6;
    let res = u.resolution;
    let h = u.spacing();
    match u.dims {
        1 => {
            let at = |i: usize, j: usize| u.values[j * res + i];
            let cheb_ok = |i: usize, j: usize| {
                u.singular.iter().all(|&(si, sj)| {
                    let di = (i as i64 - si as i64).abs();
                    let dj = (j as i64 - sj as i64).abs();
                    di.max(dj) > EXCLUDE_CELLS
                })
            };
            for j in 1..res - 1 {
                for i in 1..res - 1 {
                    if !cheb_ok(i, j) {
                        continue;
                    }
                    let lap = (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1)
                        - 4.0 * at(i, j))
                        / (h * h);
                    if 4.0 * s + lap < -TOL {
                        return Err(LabError::BadData(format!(
                            "positivity fails at node ({i}, {j}): 4*{s} + {lap} < 0"
                        )));
                    }
                }
            }
        }
        _ => {
            let at = |i: i64, j: i64| -> f64 {
                let i = if i < 0 { -i - 1 } else { i } as usize;
                let j = if j < 0 { -j - 1 } else { j } as usize;
                u.values[j * res + i]
            };
            for j in 0..res - 1 {
                let r2 = u.coord(j);
                for i in 0..res - 1 {
                    let r1 = u.coord(i);
                    let (i, j) = (i as i64, j as i64);
                    let c = at(i, j);
                    let d1 = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
                    let d2 = (at(i, j + 1) - at(i, j - 1)) / (2.0 * h);
                    let d11 = (at(i + 1, j) - 2.0 * c + at(i - 1, j)) / (h * h);
                    let d22 = (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / (h * h);
                    let d12 = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1)
                        + at(i - 1, j - 1))
                        / (4.0 * h * h);
                    // complex Hessian entries in polyradial coordinates
                    let a = (d11 + d1 / r1) / 4.0 + s;
                    let b = (d22 + d2 / r2) / 4.0 + s;
                    let c12 = d12 / 4.0;
                    if a < -TOL || a * b - c12 * c12 < -TOL {
                        return Err(LabError::BadData(format!(
                            "Hessian not positive semidefinite at node ({i}, {j})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
