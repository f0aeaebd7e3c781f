//! Lelong-number estimation: the singularity coefficient nu(u, x) read off
//! as the slope of u against log-distance near x, clamped at zero.

use super::grid::GridFunction;
use super::radial::RadialProfile;
use super::{ls_slope, LabError};

/// Lelong number at the radial center: least-squares slope of the profile
/// over its three smallest radii. Exact for u = c log r, zero for anything
/// flat near t_min (e.g. a max-regularized profile), and never negative.
pub fn lelong_estimate(u: &RadialProfile) -> f64 {
    let t: Vec<f64> = (0..3).map(|i| u.t(i)).collect();
    let v: Vec<f64> = u.values()[..3].to_vec();
    ls_slope(&t, &v).max(0.0)
}

/// Lelong number of a grid potential at a point.
///
/// Nodes are grouped into one-cell-wide annuli around x; each annulus
/// contributes the pair (mean of log|z - x|, mean of u) over its valid nodes
/// — taking the abscissa as the annulus mean of the log-distance (rather
/// than a nominal radius) makes the estimate exact for u = c log|z - x|
/// without any interpolation. The slope is fitted over the first three
/// non-empty annuli and clamped at zero.
///
/// For a one-complex-dimensional grid, x = (re, im) is any interior point.
/// For a polyradial grid only the origin of C^2 is a meaningful probe point
/// (the grid indexes moduli), so x must be (0, 0) and distances are
/// sqrt(r1^2 + r2^2).
pub fn lelong_estimate_at(u: &GridFunction, x: (f64, f64)) -> Result<f64, LabError> {
    let res = u.resolution;
    let h = u.spacing();
    let dist = |i: usize, j: usize| -> f64 {
        match u.dims {
            1 => (u.coord(i) - x.0).hypot(u.coord(j) - x.1),
            _ => u.coord(i).hypot(u.coord(j)),
        }
    };
    match u.dims {
        1 => {
            let margin = u.extent - 4.0 * h;
            if x.0.abs() > margin || x.1.abs() > margin {
                return Err(LabError::OutsideGrid(format!(
                    "({}, {}) is not interior to the grid",
                    x.0, x.1
                )));
            }
        }
        _ => {
            if x != (0.0, 0.0) {
                return Err(LabError::OutsideGrid(
                    "polyradial grids only support the origin probe (0, 0)".to_string(),
                ));
            }
        }
    }

    // (sum of log-distances, sum of values, count) per one-cell annulus
    let n_bands = 8usize;
    let mut sums = vec![(0.0f64, 0.0f64, 0usize); n_bands];
    let mask = u.singular_mask();
    for j in 0..res {
        for i in 0..res {
            if mask[j * res + i] {
                continue;
            }
            let d = dist(i, j);
            if d < 1e-12 * h {
                continue; // the probe point itself
            }
            let band = (d / h).floor() as usize;
            if band >= n_bands {
                continue;
            }
            let slot = &mut sums[band];
            slot.0 += d.ln();
            slot.1 += u.value(i, j);
            slot.2 += 1;
        }
    }

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (s_log, s_val, count) in sums {
        if count == 0 {
            continue;
        }
        xs.push(s_log / count as f64);
        ys.push(s_val / count as f64);
        if xs.len() == 3 {
            break;
        }
    }
    if xs.len() < 3 {
        return Err(LabError::EmptySamples);
    }
    Ok(ls_slope(&xs, &ys).max(0.0))
}
