//! Uniform sample grids for potentials in one or two complex dimensions.

use super::LabError;

/// Sampled real-valued potential on a uniform grid.
///
/// * `dims == 1`: u(z) on the square [-extent, extent]^2 in z = x + iy,
///   cell-centered — node (i, j) sits at x = -extent + (i + 1/2) h,
///   y = -extent + (j + 1/2) h with h = 2 extent / resolution. Even
///   resolutions have no node at the origin; odd resolutions do.
/// * `dims == 2`: a polyradial potential u(z1, z2) = phi(|z1|, |z2|) sampled
///   at (r1, r2) = ((i + 1/2) h, (j + 1/2) h), h = extent / resolution. No
///   node sits on either axis, so r-divisions are always safe.
///
/// Values are finite everywhere except on the declared `singular` node set.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub dims: u8,
    pub extent: f64,
    pub resolution: usize,
    /// Row-major: index (i, j) -> j * resolution + i.
    pub values: Vec<f64>,
    /// Declared singular nodes (i, j) — the only places values may be
    /// non-finite.
    pub singular: Vec<(usize, usize)>,
}

impl GridFunction {
    pub fn new(
        dims: u8,
        extent: f64,
        resolution: usize,
        values: Vec<f64>,
        singular: Vec<(usize, usize)>,
    ) -> Result<Self, LabError> {
        if dims != 1 && dims != 2 {
            return Err(LabError::BadData(format!("dims must be 1 or 2, got {dims}")));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(LabError::BadData(format!("extent must be positive, got {extent}")));
        }
        if resolution < 32 {
            return Err(LabError::BadData(format!(
                "resolution must be at least 32 nodes per axis, got {resolution}"
            )));
        }
        if values.len() != resolution * resolution {
            return Err(LabError::BadData(format!(
                "expected {} values for a {resolution}x{resolution} grid, got {}",
                resolution * resolution,
                values.len()
            )));
        }
        for &(i, j) in &singular {
            if i >= resolution || j >= resolution {
                return Err(LabError::BadData(format!(
                    "singular node ({i}, {j}) outside a {resolution}x{resolution} grid"
                )));
            }
        }
        let g = GridFunction { dims, extent, resolution, values, singular };
        for j in 0..resolution {
            for i in 0..resolution {
                if !g.value(i, j).is_finite() && !g.is_singular(i, j) {
                    return Err(LabError::NonFinite(format!(
                        "node ({i}, {j}) is {} but not declared singular",
                        g.value(i, j)
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Sample u(x, y) on the one-complex-dimensional grid; nodes where the
    /// function returns a non-finite value become declared singular nodes.
    pub fn sample_plane(
        extent: f64,
        resolution: usize,
        u: impl Fn(f64, f64) -> f64,
    ) -> Result<Self, LabError> {
        let h = 2.0 * extent / resolution as f64;
        let mut values = Vec::with_capacity(resolution * resolution);
        let mut singular = Vec::new();
        for j in 0..resolution {
            let y = -extent + (j as f64 + 0.5) * h;
            for i in 0..resolution {
                let x = -extent + (i as f64 + 0.5) * h;
                let v = u(x, y);
                if !v.is_finite() {
                    singular.push((i, j));
                }
                values.push(v);
            }
        }
        GridFunction::new(1, extent, resolution, values, singular)
    }

    /// Sample phi(r1, r2) on the two-complex-dimensional polyradial grid.
    pub fn sample_polyradial(
        extent: f64,
        resolution: usize,
        phi: impl Fn(f64, f64) -> f64,
    ) -> Result<Self, LabError> {
        let h = extent / resolution as f64;
        let mut values = Vec::with_capacity(resolution * resolution);
        let mut singular = Vec::new();
        for j in 0..resolution {
            let r2 = (j as f64 + 0.5) * h;
            for i in 0..resolution {
                let r1 = (i as f64 + 0.5) * h;
                let v = phi(r1, r2);
                if !v.is_finite() {
                    singular.push((i, j));
                }
                values.push(v);
            }
        }
        GridFunction::new(2, extent, resolution, values, singular)
    }

    /// Grid spacing along one axis.
    pub fn spacing(&self) -> f64 {
        match self.dims {
            1 => 2.0 * self.extent / self.resolution as f64,
            _ => self.extent / self.resolution as f64,
        }
    }

    /// Coordinate of node index `i` along the first axis (x or r1).
    pub fn coord(&self, i: usize) -> f64 {
        let h = self.spacing();
        match self.dims {
            1 => -self.extent + (i as f64 + 0.5) * h,
            _ => (i as f64 + 0.5) * h,
        }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.resolution + i]
    }

    pub fn is_singular(&self, i: usize, j: usize) -> bool {
        self.singular.contains(&(i, j))
    }

    /// Boolean mask of the declared singular nodes.
    pub(crate) fn singular_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.resolution * self.resolution];
        for &(i, j) in &self.singular {
            mask[j * self.resolution + i] = true;
        }
        mask
    }

    pub fn same_shape(&self, other: &GridFunction) -> bool {
        self.dims == other.dims
            && self.extent == other.extent
            && self.resolution == other.resolution
            && self.singular == other.singular
    }

    /// Nodewise `self <= other + tol` at non-singular nodes; returns the first
    /// offending linear node index otherwise.
    pub(crate) fn le_nodewise(&self, other: &GridFunction, tol: f64) -> Result<(), usize> {
        let mask = self.singular_mask();
        for (idx, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if mask[idx] {
                continue;
            }
            if *a > *b + tol {
                return Err(idx);
            }
        }
        Ok(())
    }
}
