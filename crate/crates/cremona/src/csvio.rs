//! CSV persistence for sampled potentials.
//!
//! Both file kinds share one layout: a leading metadata row of `key=value`
//! cells (always starting with `format=1`), then one `node,value` row per
//! sample in node order. Values are printed with 17 significant digits so
//! every f64 round-trips exactly; singular grid nodes are stored as `NaN`
//! and re-derived on read.
//!
//! ```text
//! format=1,kind=radial_profile,t_min=...,t_max=...,nodes=64,psh=true
//! 0,-4.00000000000000000e0
//! 1,...
//! ```

use std::fmt::Write as _;

use crate::diag::FormatError;
use crate::lab::{GridFunction, RadialProfile};

/// Serializes a radial profile; `read_profile` inverts this exactly.
pub fn write_profile(u: &RadialProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "format=1,kind=radial_profile,t_min={:.17e},t_max={:.17e},nodes={},psh={}",
        u.t_min(),
        u.t_max(),
        u.len(),
        u.psh()
    );
    for (i, v) in u.values().iter().enumerate() {
        let _ = writeln!(out, "{i},{v:.17e}");
    }
    out
}

/// Parses the output of [`write_profile`].
pub fn read_profile(text: &str) -> Result<RadialProfile, FormatError> {
    let mut meta = Metadata::parse(text, "radial_profile")?;
    let t_min = meta.take_f64("t_min")?;
    let t_max = meta.take_f64("t_max")?;
    let nodes = meta.take_usize("nodes")?;
    let psh = meta.take_bool("psh")?;
    meta.finish()?;
    let (values, nan_nodes) = read_rows(text, nodes)?;
    if let Some(&(_, line)) = nan_nodes.first() {
        return Err(FormatError::new(
            line,
            1,
            "radial profiles cannot contain NaN samples",
        ));
    }
    RadialProfile::new(t_min, t_max, values, psh)
        .map_err(|e| FormatError::new(1, 1, format!("metadata does not describe the data: {e}")))
}

/// Serializes a grid function; `read_grid` inverts this exactly. Singular
/// nodes are written as NaN values.
pub fn write_grid(u: &GridFunction) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "format=1,kind=grid,dims={},extent={:.17e},resolution={}",
        u.dims, u.extent, u.resolution
    );
    let res = u.resolution;
    let mask = u.singular_mask();
    for j in 0..res {
        for i in 0..res {
            let node = j * res + i;
            if mask[node] {
                let _ = writeln!(out, "{node},NaN");
            } else {
                let _ = writeln!(out, "{node},{:.17e}", u.value(i, j));
            }
        }
    }
    out
}

/// Parses the output of [`write_grid`], re-deriving the singular node set
/// from NaN cells.
pub fn read_grid(text: &str) -> Result<GridFunction, FormatError> {
    let mut meta = Metadata::parse(text, "grid")?;
    let dims = meta.take_usize("dims")?;
    let extent = meta.take_f64("extent")?;
    let resolution = meta.take_usize("resolution")?;
    meta.finish()?;
    let (values, nan_nodes) = read_rows(text, resolution.saturating_mul(resolution))?;
    let singular: Vec<(usize, usize)> = nan_nodes
        .iter()
        .map(|&(node, _)| (node % resolution, node / resolution))
        .collect();
    GridFunction::new(dims as u8, extent, resolution, values, singular)
        .map_err(|e| FormatError::new(1, 1, format!("metadata does not describe the data: {e}")))
}

/// The metadata row: ordered key=value cells with position tracking.
struct Metadata<'a> {
    cells: Vec<(&'a str, &'a str, usize)>, // key, value, 1-based column
    cursor: usize,
}

impl<'a> Metadata<'a> {
    fn parse(text: &'a str, expect_kind: &str) -> Result<Metadata<'a>, FormatError> {
        let line = text.lines().next().unwrap_or("");
        let mut cells = Vec::new();
        let mut col = 1usize;
        for cell in line.split(',') {
            let Some((k, v)) = cell.split_once('=') else {
                return Err(FormatError::new(
                    1,
                    col,
                    format!("expected key=value metadata cell, got {cell:?}"),
                ));
            };
            cells.push((k, v, col));
            col += cell.chars().count() + 1;
        }
        let mut meta = Metadata { cells, cursor: 0 };
        let format = meta.take("format")?;
        if format.1 != "1" {
            return Err(FormatError::new(
                1,
                format.2,
                format!("unsupported format version {:?}", format.1),
            ));
        }
        let kind = meta.take("kind")?;
        if kind.1 != expect_kind {
            return Err(FormatError::new(
                1,
                kind.2,
                format!("expected kind={expect_kind}, got kind={}", kind.1),
            ));
        }
        Ok(meta)
    }

    /// Takes the next cell, which must have the given key (fixed order keeps
    /// serialize/parse an exact round-trip).
    fn take(&mut self, key: &str) -> Result<(&'a str, &'a str, usize), FormatError> {
        match self.cells.get(self.cursor) {
            Some(&cell) if cell.0 == key => {
                self.cursor += 1;
                Ok(cell)
            }
            Some(&(k, _, col)) => Err(FormatError::new(
                1,
                col,
                format!("expected metadata key {key:?}, got {k:?}"),
            )),
            None => Err(FormatError::new(
                1,
                1,
                format!("missing metadata key {key:?}"),
            )),
        }
    }

    fn take_f64(&mut self, key: &str) -> Result<f64, FormatError> {
        let (_, v, col) = self.take(key)?;
        v.parse::<f64>()
            .map_err(|_| FormatError::new(1, col, format!("{key} is not a real number: {v:?}")))
    }

    fn take_usize(&mut self, key: &str) -> Result<usize, FormatError> {
        let (_, v, col) = self.take(key)?;
        v.parse::<usize>()
            .map_err(|_| FormatError::new(1, col, format!("{key} is not a nonnegative integer: {v:?}")))
    }

    fn take_bool(&mut self, key: &str) -> Result<bool, FormatError> {
        let (_, v, col) = self.take(key)?;
        match v {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(FormatError::new(1, col, format!("{key} must be true or false, got {v:?}"))),
        }
    }

    fn finish(self) -> Result<(), FormatError> {
        match self.cells.get(self.cursor) {
            None => Ok(()),
            Some(&(k, _, col)) => Err(FormatError::new(
                1,
                col,
                format!("unknown metadata key {k:?}"),
            )),
        }
    }
}

/// Reads the `node,value` data rows, checking that node indices run 0..count
/// in order. Returns the values and the (node, line) pairs that were NaN.
#[allow(clippy::type_complexity)]
fn read_rows(text: &str, count: usize) -> Result<(Vec<f64>, Vec<(usize, usize)>), FormatError> {
    let mut values = Vec::with_capacity(count);
    let mut nan_nodes = Vec::new();
    for (line_idx, line) in text.lines().enumerate().skip(1) {
        let line_no = line_idx + 1;
        if line.is_empty() {
            continue;
        }
        let Some((node_text, value_text)) = line.split_once(',') else {
            return Err(FormatError::new(
                line_no,
                1,
                "expected a node,value row",
            ));
        };
        let node: usize = node_text.parse().map_err(|_| {
            FormatError::new(line_no, 1, format!("bad node index {node_text:?}"))
        })?;
        if node != values.len() {
            return Err(FormatError::new(
                line_no,
                1,
                format!("node index {node} out of order (expected {})", values.len()),
            ));
        }
        let value_col = node_text.chars().count() + 2;
        let value: f64 = value_text.parse().map_err(|_| {
            FormatError::new(line_no, value_col, format!("bad sample value {value_text:?}"))
        })?;
        if value.is_nan() {
            nan_nodes.push((node, line_no));
        }
        values.push(value);
    }
    if values.len() != count {
        return Err(FormatError::new(
            text.lines().count() + 1,
            1,
            format!("expected {count} data rows, found {}", values.len()),
        ));
    }
    Ok((values, nan_nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trips_exactly() {
        let u = RadialProfile::sample(-8.0, 0.0, 64, |t| 0.3 * t + (2.0 * t).exp(), true).unwrap();
        let text = write_profile(&u);
        let back = read_profile(&text).unwrap();
        assert_eq!(back.t_min(), u.t_min());
        assert_eq!(back.t_max(), u.t_max());
        assert_eq!(back.values(), u.values());
        assert!(back.psh());
        assert_eq!(write_profile(&back), text);
    }

    #[test]
    fn grid_round_trips_with_singular_nodes() {
        let u = GridFunction::sample_plane(1.0, 32, |x, y| (x * x + y * y).ln() * 0.5).unwrap();
        assert!(!u.singular_mask().iter().any(|&s| s)); // even grid: no node at 0
        let v = GridFunction::sample_plane(1.0, 33, |x, y| (x * x + y * y).ln() * 0.5).unwrap();
        assert!(v.singular_mask().iter().any(|&s| s));
        let text = write_grid(&v);
        let back = read_grid(&text).unwrap();
        assert_eq!(back.resolution, 33);
        assert_eq!(write_grid(&back), text);
    }

    #[test]
    fn metadata_errors_carry_position() {
        let err = read_profile("format=2,kind=radial_profile").unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
        let err = read_profile("format=1,kind=grid").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 10);
        let err = read_profile(
            "format=1,kind=radial_profile,t_min=0.0,t_max=1.0,nodes=16,psh=maybe",
        )
        .unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.msg.contains("psh"));
    }

    #[test]
    fn data_row_errors_carry_position() {
        let mut text = String::from("format=1,kind=radial_profile,t_min=0.0,t_max=1.0,nodes=16,psh=false\n");
        for i in 0..16 {
            text.push_str(&format!("{i},{}.0\n", i));
        }
        assert!(read_profile(&text).is_ok());

        let bad = text.replace("\n5,5.0\n", "\n5,five\n");
        let err = read_profile(&bad).unwrap_err();
        assert_eq!((err.line, err.col), (7, 3));

        let shuffled = text.replace("\n5,5.0\n", "\n6,5.0\n");
        let err = read_profile(&shuffled).unwrap_err();
        assert_eq!(err.line, 7);

        let truncated: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(read_profile(&truncated).is_err());
    }

    #[test]
    fn nan_rejected_in_profiles_but_fine_in_grids() {
        let mut text = String::from("format=1,kind=radial_profile,t_min=0.0,t_max=1.0,nodes=16,psh=false\n");
        for i in 0..16 {
            if i == 3 {
                text.push_str("3,NaN\n");
            } else {
                text.push_str(&format!("{i},{}.0\n", i));
            }
        }
        let err = read_profile(&text).unwrap_err();
        assert!(err.msg.contains("NaN"));
    }
}
