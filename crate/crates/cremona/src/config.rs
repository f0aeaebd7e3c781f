//! Line-oriented config format describing a variety, a pseudo-isomorphism,
//! and lab parameters.
//!
//! ```text
//! format = 1
//!
//! [variety]
//! n_points = 4
//! labels = e0 e1 e2 e3                 # optional; defaults to e0..e{N-1}
//! curve = C01 : 1;-1,-1,0,0            # optional curve-table overrides
//!
//! [map]
//! name = jx
//!
//! [m11]                                 # pullback on H^{1,1}, rows of (N+1)x(N+1)
//! row = 3, 1, 1, 1, 1
//! ...
//!
//! [m22]                                 # pullback on H^{2,2}
//! row = 3, 2, 2, 2, 2
//! ...
//!
//! [push11]                              # optional; defaults via the pairing
//! [push22]                              # adjunction G m^T G
//!
//! [ladder]
//! entry = C01 : 1;-1,-1,0,0 -> C23 : 1;0,0,-1,-1
//!
//! [lab]
//! grid_1d = 256
//! tol_mass_1d = 2.00000000000000004e-2
//! ```
//!
//! Blank lines and `#` comments are ignored. Matrix and class entries are
//! exact integers or `p/q` fractions; real literals are allowed only in
//! `[lab]`. Unknown sections or keys, duplicate scalar keys, and arity
//! mismatches are rejected with line/column positions.

use std::collections::HashSet;

use cremona_core::linalg::Mat;
use cremona_core::pseudo::{LadderEntry, PseudoIsoData};
use cremona_core::rat::{self, int, Rat};
use cremona_core::ring::{CurveCycle, VarietyDescriptor};
use cremona_core::Error as CoreError;

use crate::diag::FormatError;

/// Parsed config file. Values are kept exactly as written (no adjunction or
/// involution checks at parse time); [`ConfigDocument::to_pseudo_iso`]
/// performs the semantic validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub variety: VarietyConfig,
    pub map: Option<MapConfig>,
    pub lab: LabConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarietyConfig {
    pub n_points: usize,
    /// Point labels; `None` means the default e0..e{N-1}.
    pub labels: Option<Vec<String>>,
    /// Curve-table overrides and additions, in file order.
    pub curves: Vec<(String, CurveCycle)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapConfig {
    pub name: String,
    pub m11: Vec<Vec<Rat>>,
    pub m22: Vec<Vec<Rat>>,
    /// Explicit pushforward rows; `None` derives G m22^T G.
    pub push11: Option<Vec<Vec<Rat>>>,
    /// Explicit pushforward rows; `None` derives G m11^T G.
    pub push22: Option<Vec<Vec<Rat>>>,
    pub ladder: Vec<LadderEntry>,
}

/// Lab parameters; every key is optional in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct LabConfig {
    pub grid_1d: usize,
    pub grid_2d: usize,
    pub extent: f64,
    pub radius: f64,
    pub eps_n_max: usize,
    pub eps_n_max_2d: usize,
    pub tol_mass_1d: f64,
    pub tol_mass_2d: f64,
    pub tol_lelong: f64,
    pub tol_envelope: f64,
    pub tol_probe: f64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            grid_1d: 256,
            grid_2d: 128,
            extent: 1.0,
            radius: 0.5,
            eps_n_max: 8,
            eps_n_max_2d: 6,
            tol_mass_1d: 0.02,
            tol_mass_2d: 0.03,
            tol_lelong: 0.02,
            tol_envelope: 1e-6,
            tol_probe: 0.15,
        }
    }
}

impl ConfigDocument {
    /// Builds the variety: the standard blowup table, relabeled and with the
    /// config's curve overrides applied (matched by name, appended if new).
    pub fn variety_descriptor(&self) -> Result<VarietyDescriptor, CoreError> {
        let mut v = VarietyDescriptor::p3_blowup(self.variety.n_points);
        if let Some(labels) = &self.variety.labels {
            v.labels = labels.clone();
        }
        for (name, class) in &self.variety.curves {
            if !class.is_integral() {
                return Err(CoreError::InvalidMap {
                    msg: format!("distinguished curve {name} has a non-integer class"),
                });
            }
            match v.curve_table.iter_mut().find(|(n, _)| n == name) {
                Some(slot) => slot.1 = class.clone(),
                None => v.curve_table.push((name.clone(), class.clone())),
            }
        }
        Ok(v)
    }

    /// Assembles and validates the pseudo-isomorphism. Omitted pushforward
    /// sections are filled in from the pairing adjunction (push11 = G m22^T G,
    /// push22 = G m11^T G with G = diag(1, -1, .., -1)), which is the unique
    /// choice satisfying the projection formula.
    pub fn to_pseudo_iso(&self) -> Result<PseudoIsoData, CoreError> {
        let map = self.map.as_ref().ok_or_else(|| CoreError::InvalidMap {
            msg: "config has no [map] section".to_string(),
        })?;
        let v = self.variety_descriptor()?;
        let m11 = Mat::from_rows(map.m11.clone())?;
        let m22 = Mat::from_rows(map.m22.clone())?;
        let push11 = match &map.push11 {
            Some(rows) => Mat::from_rows(rows.clone())?,
            None => conjugate_by_gram(&m22)?,
        };
        let push22 = match &map.push22 {
            Some(rows) => Mat::from_rows(rows.clone())?,
            None => conjugate_by_gram(&m11)?,
        };
        PseudoIsoData::new(
            map.name.clone(),
            v.clone(),
            v,
            m11,
            m22,
            push11,
            push22,
            map.ladder.clone(),
        )
    }
}

/// G m^T G for the pairing Gram matrix G = diag(1, -1, .., -1).
fn conjugate_by_gram(m: &Mat) -> Result<Mat, CoreError> {
    let n = m.nrows();
    let mut g = Mat::identity(n);
    for i in 1..n {
        g.set(i, i, int(-1));
    }
    g.mul(&m.transpose())?.mul(&g)
}

/// The built-in map as config text: parsing it and calling `to_pseudo_iso`
/// reproduces the built-in exactly, and it doubles as the format's reference
/// example.
pub const JX_CONFIG: &str = "\
format = 1

[variety]
n_points = 4

[map]
name = jx

[m11]
row = 3, 1, 1, 1, 1
row = -2, 0, -1, -1, -1
row = -2, -1, 0, -1, -1
row = -2, -1, -1, 0, -1
row = -2, -1, -1, -1, 0

[m22]
row = 3, 2, 2, 2, 2
row = -1, 0, -1, -1, -1
row = -1, -1, 0, -1, -1
row = -1, -1, -1, 0, -1
row = -1, -1, -1, -1, 0

[ladder]
entry = C01 : 1;-1,-1,0,0 -> C23 : 1;0,0,-1,-1
entry = C02 : 1;-1,0,-1,0 -> C13 : 1;0,-1,0,-1
entry = C03 : 1;-1,0,0,-1 -> C03 : 1;-1,0,0,-1
entry = C12 : 1;0,-1,-1,0 -> C12 : 1;0,-1,-1,0
entry = C13 : 1;0,-1,0,-1 -> C02 : 1;-1,0,-1,0
entry = C23 : 1;0,0,-1,-1 -> C01 : 1;-1,-1,0,0
";

/// Canonical text for a document; [`parse_config`] inverts this exactly.
pub fn serialize_config(doc: &ConfigDocument) -> String {
    let mut out = String::from("format = 1\n");
    out.push_str("\n[variety]\n");
    out.push_str(&format!("n_points = {}\n", doc.variety.n_points));
    if let Some(labels) = &doc.variety.labels {
        out.push_str(&format!("labels = {}\n", labels.join(" ")));
    }
    for (name, class) in &doc.variety.curves {
        out.push_str(&format!("curve = {name} : {class}\n"));
    }
    if let Some(map) = &doc.map {
        out.push_str("\n[map]\n");
        out.push_str(&format!("name = {}\n", map.name));
        for (section, rows) in [("m11", Some(&map.m11)), ("m22", Some(&map.m22)),
                                ("push11", map.push11.as_ref()), ("push22", map.push22.as_ref())] {
            let Some(rows) = rows else { continue };
            out.push_str(&format!("\n[{section}]\n"));
            for row in rows {
                let cells: Vec<String> = row.iter().map(rat::fmt_rat).collect();
                out.push_str(&format!("row = {}\n", cells.join(", ")));
            }
        }
        if !map.ladder.is_empty() {
            out.push_str("\n[ladder]\n");
            for e in &map.ladder {
                out.push_str(&format!(
                    "entry = {} : {} -> {} : {}\n",
                    e.source_name, e.source_class, e.image_name, e.image_class
                ));
            }
        }
    }
    let lab = &doc.lab;
    out.push_str("\n[lab]\n");
    out.push_str(&format!("grid_1d = {}\n", lab.grid_1d));
    out.push_str(&format!("grid_2d = {}\n", lab.grid_2d));
    out.push_str(&format!("extent = {:.17e}\n", lab.extent));
    out.push_str(&format!("radius = {:.17e}\n", lab.radius));
    out.push_str(&format!("eps_n_max = {}\n", lab.eps_n_max));
    out.push_str(&format!("eps_n_max_2d = {}\n", lab.eps_n_max_2d));
    out.push_str(&format!("tol_mass_1d = {:.17e}\n", lab.tol_mass_1d));
    out.push_str(&format!("tol_mass_2d = {:.17e}\n", lab.tol_mass_2d));
    out.push_str(&format!("tol_lelong = {:.17e}\n", lab.tol_lelong));
    out.push_str(&format!("tol_envelope = {:.17e}\n", lab.tol_envelope));
    out.push_str(&format!("tol_probe = {:.17e}\n", lab.tol_probe));
    out
}

pub fn parse_config(text: &str) -> Result<ConfigDocument, FormatError> {
    Parser::new().run(text)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sect {
    Top,
    Variety,
    Map,
    M11,
    M22,
    Push11,
    Push22,
    Ladder,
    Lab,
}

impl Sect {
    fn by_name(name: &str) -> Option<Sect> {
        Some(match name {
            "variety" => Sect::Variety,
            "map" => Sect::Map,
            "m11" => Sect::M11,
            "m22" => Sect::M22,
            "push11" => Sect::Push11,
            "push22" => Sect::Push22,
            "ladder" => Sect::Ladder,
            "lab" => Sect::Lab,
            _ => return None,
        })
    }
}

#[derive(Default)]
struct MatrixAcc {
    header_line: usize,
    rows: Vec<(Vec<Rat>, usize)>,
}

struct Parser {
    section: Sect,
    seen_keys: HashSet<String>,
    seen_sections: HashSet<String>,
    format_seen: bool,
    n_points: Option<usize>,
    labels: Option<(Vec<String>, usize)>,
    curves: Vec<(String, CurveCycle, usize)>,
    variety_seen: bool,
    map_header: Option<usize>,
    map_name: Option<String>,
    m11: Option<MatrixAcc>,
    m22: Option<MatrixAcc>,
    push11: Option<MatrixAcc>,
    push22: Option<MatrixAcc>,
    ladder: Vec<(LadderEntry, usize)>,
    ladder_header: Option<usize>,
    lab: LabConfig,
}

impl Parser {
    fn new() -> Parser {
        Parser {
            section: Sect::Top,
            seen_keys: HashSet::new(),
            seen_sections: HashSet::new(),
            format_seen: false,
            n_points: None,
            labels: None,
            curves: Vec::new(),
            variety_seen: false,
            map_header: None,
            map_name: None,
            m11: None,
            m22: None,
            push11: None,
            push22: None,
            ladder: Vec::new(),
            ladder_header: None,
            lab: LabConfig::default(),
        }
    }

    fn run(mut self, text: &str) -> Result<ConfigDocument, FormatError> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let trimmed = line.trim_start();
            let indent = col_at(line, line.len() - trimmed.len());
            if let Some(rest) = trimmed.strip_prefix('[') {
                self.section_header(rest, line_no, indent, line)?;
            } else {
                self.key_line(line, line_no)?;
            }
        }
        self.finish(text)
    }

    fn section_header(
        &mut self,
        rest: &str,
        line_no: usize,
        col: usize,
        line: &str,
    ) -> Result<(), FormatError> {
        let Some(end) = rest.find(']') else {
            return Err(FormatError::new(line_no, col, "unterminated section header"));
        };
        let name = &rest[..end];
        if !rest[end + 1..].trim().is_empty() {
            return Err(FormatError::new(
                line_no,
                col_at(line, line.len() - rest.len() + end + 1),
                "unexpected text after section header",
            ));
        }
        let Some(sect) = Sect::by_name(name) else {
            return Err(FormatError::new(line_no, col, format!("unknown section [{name}]")));
        };
        if !self.format_seen {
            return Err(FormatError::new(
                line_no,
                col,
                "the document must start with `format = 1`",
            ));
        }
        if !self.seen_sections.insert(name.to_string()) {
            return Err(FormatError::new(line_no, col, format!("duplicate section [{name}]")));
        }
        match sect {
            Sect::Variety => self.variety_seen = true,
            Sect::Map => self.map_header = Some(line_no),
            Sect::M11 => self.m11 = Some(MatrixAcc { header_line: line_no, rows: Vec::new() }),
            Sect::M22 => self.m22 = Some(MatrixAcc { header_line: line_no, rows: Vec::new() }),
            Sect::Push11 => {
                self.push11 = Some(MatrixAcc { header_line: line_no, rows: Vec::new() })
            }
            Sect::Push22 => {
                self.push22 = Some(MatrixAcc { header_line: line_no, rows: Vec::new() })
            }
            Sect::Ladder => self.ladder_header = Some(line_no),
            Sect::Top | Sect::Lab => {}
        }
        self.section = sect;
        Ok(())
    }

    fn key_line(&mut self, line: &str, line_no: usize) -> Result<(), FormatError> {
        let Some(eq) = line.find('=') else {
            return Err(FormatError::new(
                line_no,
                col_at(line, line.len() - line.trim_start().len()),
                "expected `key = value`",
            ));
        };
        let key = line[..eq].trim();
        let key_col = col_at(line, line.len() - line.trim_start().len());
        let value = &line[eq + 1..];
        let value_trim = value.trim();
        let value_col = col_at(line, eq + 1 + (value.len() - value.trim_start().len()));
        if key.is_empty() || !is_ident(key) {
            return Err(FormatError::new(line_no, key_col, format!("bad key {key:?}")));
        }
        if value_trim.is_empty() {
            return Err(FormatError::new(line_no, value_col, format!("key {key} has no value")));
        }
        let repeatable = matches!(key, "curve" | "row" | "entry");
        if !repeatable {
            let tag = format!("{:?}.{key}", self.section);
            if !self.seen_keys.insert(tag) {
                return Err(FormatError::new(line_no, key_col, format!("duplicate key {key}")));
            }
        }
        match (self.section, key) {
            (Sect::Top, "format") => {
                if value_trim != "1" {
                    return Err(FormatError::new(
                        line_no,
                        value_col,
                        format!("unsupported format version {value_trim:?}"),
                    ));
                }
                self.format_seen = true;
                Ok(())
            }
            (Sect::Top, _) => Err(FormatError::new(
                line_no,
                key_col,
                format!("key {key} appears before any section (only `format = 1` may)"),
            )),
            (Sect::Variety, "n_points") => {
                let n: usize = value_trim.parse().map_err(|_| {
                    FormatError::new(line_no, value_col, format!("n_points must be a positive integer, got {value_trim:?}"))
                })?;
                if n == 0 {
                    return Err(FormatError::new(line_no, value_col, "n_points must be at least 1"));
                }
                self.n_points = Some(n);
                Ok(())
            }
            (Sect::Variety, "labels") => {
                let labels: Vec<String> = value_trim.split_whitespace().map(str::to_string).collect();
                for l in &labels {
                    if !is_ident(l) {
                        return Err(FormatError::new(line_no, value_col, format!("bad label {l:?}")));
                    }
                }
                self.labels = Some((labels, line_no));
                Ok(())
            }
            (Sect::Variety, "curve") => {
                let (name, class) = parse_named_class(line, line_no, value, eq + 1)?;
                self.curves.push((name, class, line_no));
                Ok(())
            }
            (Sect::Map, "name") => {
                if !is_ident(value_trim) {
                    return Err(FormatError::new(line_no, value_col, format!("bad map name {value_trim:?}")));
                }
                self.map_name = Some(value_trim.to_string());
                Ok(())
            }
            (Sect::M11 | Sect::M22 | Sect::Push11 | Sect::Push22, "row") => {
                let mut row = Vec::new();
                for (piece, off) in split_with_offsets(value, eq + 1, ',') {
                    let x = rat::parse_rat(piece).map_err(|e| {
                        FormatError::new(line_no, col_at(line, off), format!("bad matrix entry: {e}"))
                    })?;
                    row.push(x);
                }
                let acc = match self.section {
                    Sect::M11 => self.m11.as_mut(),
                    Sect::M22 => self.m22.as_mut(),
                    Sect::Push11 => self.push11.as_mut(),
                    _ => self.push22.as_mut(),
                };
                acc.expect("section header created the accumulator").rows.push((row, line_no));
                Ok(())
            }
            (Sect::Ladder, "entry") => {
                let arrow = value.find("->").ok_or_else(|| {
                    FormatError::new(line_no, value_col, "entry needs `NAME : CLASS -> NAME : CLASS`")
                })?;
                let (src, src_base) = (&value[..arrow], eq + 1);
                let (img, img_base) = (&value[arrow + 2..], eq + 1 + arrow + 2);
                let (source_name, source_class) = parse_named_class(line, line_no, src, src_base)?;
                let (image_name, image_class) = parse_named_class(line, line_no, img, img_base)?;
                self.ladder.push((
                    LadderEntry { source_name, source_class, image_name, image_class },
                    line_no,
                ));
                Ok(())
            }
            (Sect::Lab, _) => self.lab_key(key, value_trim, line_no, key_col, value_col),
            (_, _) => Err(FormatError::new(
                line_no,
                key_col,
                format!("unknown key {key} in section [{}]", section_name(self.section)),
            )),
        }
    }

    fn lab_key(
        &mut self,
        key: &str,
        value: &str,
        line_no: usize,
        key_col: usize,
        value_col: usize,
    ) -> Result<(), FormatError> {
        let parse_usize = |v: &str| -> Result<usize, FormatError> {
            v.parse().map_err(|_| {
                FormatError::new(line_no, value_col, format!("{key} must be a nonnegative integer, got {v:?}"))
            })
        };
        let parse_f64 = |v: &str| -> Result<f64, FormatError> {
            let x: f64 = v.parse().map_err(|_| {
                FormatError::new(line_no, value_col, format!("{key} must be a real number, got {v:?}"))
            })?;
            if !x.is_finite() {
                return Err(FormatError::new(line_no, value_col, format!("{key} must be finite")));
            }
            Ok(x)
        };
        match key {
            "grid_1d" => self.lab.grid_1d = parse_usize(value)?,
            "grid_2d" => self.lab.grid_2d = parse_usize(value)?,
            "extent" => self.lab.extent = parse_f64(value)?,
            "radius" => self.lab.radius = parse_f64(value)?,
            "eps_n_max" => self.lab.eps_n_max = parse_usize(value)?,
            "eps_n_max_2d" => self.lab.eps_n_max_2d = parse_usize(value)?,
            "tol_mass_1d" => self.lab.tol_mass_1d = parse_f64(value)?,
            "tol_mass_2d" => self.lab.tol_mass_2d = parse_f64(value)?,
            "tol_lelong" => self.lab.tol_lelong = parse_f64(value)?,
            "tol_envelope" => self.lab.tol_envelope = parse_f64(value)?,
            "tol_probe" => self.lab.tol_probe = parse_f64(value)?,
            _ => {
                return Err(FormatError::new(
                    line_no,
                    key_col,
                    format!("unknown key {key} in section [lab]"),
                ))
            }
        }
        Ok(())
    }

    fn finish(self, text: &str) -> Result<ConfigDocument, FormatError> {
        let eof = text.lines().count().max(1);
        if !self.format_seen {
            return Err(FormatError::new(1, 1, "the document must start with `format = 1`"));
        }
        if !self.variety_seen {
            return Err(FormatError::new(eof, 1, "missing [variety] section"));
        }
        let Some(n_points) = self.n_points else {
            return Err(FormatError::new(eof, 1, "[variety] is missing n_points"));
        };
        let rank = n_points + 1;
        if let Some((labels, line)) = &self.labels {
            if labels.len() != n_points {
                return Err(FormatError::new(
                    *line,
                    1,
                    format!("[variety] labels lists {} names, expected n_points = {n_points}", labels.len()),
                ));
            }
        }
        for (name, class, line) in &self.curves {
            if class.d.len() != n_points {
                return Err(FormatError::new(
                    *line,
                    1,
                    format!("[variety] curve {name} has {} multiplicities, expected n_points = {n_points}", class.d.len()),
                ));
            }
        }
        // matrix / ladder sections make sense only alongside [map]
        if self.map_header.is_none() {
            for (sect, acc) in [("m11", &self.m11), ("m22", &self.m22), ("push11", &self.push11), ("push22", &self.push22)] {
                if let Some(acc) = acc {
                    return Err(FormatError::new(
                        acc.header_line,
                        1,
                        format!("section [{sect}] requires a [map] section"),
                    ));
                }
            }
            if let Some(line) = self.ladder_header {
                return Err(FormatError::new(line, 1, "section [ladder] requires a [map] section"));
            }
        }
        let map = match self.map_header {
            None => None,
            Some(map_line) => {
                let Some(name) = self.map_name else {
                    return Err(FormatError::new(map_line, 1, "[map] is missing name"));
                };
                let take = |sect: &str, acc: Option<MatrixAcc>, required: bool| -> Result<Option<Vec<Vec<Rat>>>, FormatError> {
                    let Some(acc) = acc else {
                        if required {
                            return Err(FormatError::new(
                                map_line,
                                1,
                                format!("[map] requires an [{sect}] section"),
                            ));
                        }
                        return Ok(None);
                    };
                    if acc.rows.len() != rank {
                        return Err(FormatError::new(
                            acc.header_line,
                            1,
                            format!("[{sect}] has {} rows, expected n_points + 1 = {rank}", acc.rows.len()),
                        ));
                    }
                    let mut rows = Vec::with_capacity(rank);
                    for (row, line) in acc.rows {
                        if row.len() != rank {
                            return Err(FormatError::new(
                                line,
                                1,
                                format!("[{sect}] row has {} entries, expected n_points + 1 = {rank}", row.len()),
                            ));
                        }
                        rows.push(row);
                    }
                    Ok(Some(rows))
                };
                let m11 = take("m11", self.m11, true)?.expect("required");
                let m22 = take("m22", self.m22, true)?.expect("required");
                let push11 = take("push11", self.push11, false)?;
                let push22 = take("push22", self.push22, false)?;
                let mut ladder = Vec::with_capacity(self.ladder.len());
                for (entry, line) in self.ladder {
                    for (side, class) in [("source", &entry.source_class), ("image", &entry.image_class)] {
                        if class.d.len() != n_points {
                            return Err(FormatError::new(
                                line,
                                1,
                                format!("[ladder] {side} class has {} multiplicities, expected n_points = {n_points}", class.d.len()),
                            ));
                        }
                    }
                    ladder.push(entry);
                }
                Some(MapConfig { name, m11, m22, push11, push22, ladder })
            }
        };
        Ok(ConfigDocument {
            variety: VarietyConfig {
                n_points,
                labels: self.labels.map(|(l, _)| l),
                curves: self.curves.into_iter().map(|(n, c, _)| (n, c)).collect(),
            },
            map,
            lab: self.lab,
        })
    }
}

/// Parses `NAME : CLASS` where CLASS is the shared `a;b0,b1,...` form.
/// `base` is the byte offset of `piece` within `line`.
fn parse_named_class(
    line: &str,
    line_no: usize,
    piece: &str,
    base: usize,
) -> Result<(String, CurveCycle), FormatError> {
    let Some(colon) = piece.find(':') else {
        return Err(FormatError::new(
            line_no,
            col_at(line, base + (piece.len() - piece.trim_start().len())),
            "expected `NAME : CLASS`",
        ));
    };
    let name = piece[..colon].trim();
    let name_col = col_at(line, base + (piece[..colon].len() - piece[..colon].trim_start().len()));
    if !is_ident(name) {
        return Err(FormatError::new(line_no, name_col, format!("bad curve name {name:?}")));
    }
    let class_text = &piece[colon + 1..];
    let class_col = col_at(
        line,
        base + colon + 1 + (class_text.len() - class_text.trim_start().len()),
    );
    let class: CurveCycle = class_text
        .trim()
        .parse()
        .map_err(|e| FormatError::new(line_no, class_col, format!("bad class: {e}")))?;
    Ok((name.to_string(), class))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn col_at(line: &str, byte_idx: usize) -> usize {
    line[..byte_idx].chars().count() + 1
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn section_name(s: Sect) -> &'static str {
    match s {
        Sect::Top => "(top)",
        Sect::Variety => "variety",
        Sect::Map => "map",
        Sect::M11 => "m11",
        Sect::M22 => "m22",
        Sect::Push11 => "push11",
        Sect::Push22 => "push22",
        Sect::Ladder => "ladder",
        Sect::Lab => "lab",
    }
}

/// Splits `value` (at byte offset `base` in its line) on `delim`, yielding
/// trimmed pieces with the byte offset of each piece's first non-space char.
fn split_with_offsets<'a>(value: &'a str, base: usize, delim: char) -> Vec<(&'a str, usize)> {
    let mut out = Vec::new();
    let mut start = 0usize;
    loop {
        let end = value[start..].find(delim).map_or(value.len(), |i| start + i);
        let piece = &value[start..end];
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim(), base + start + lead));
        if end == value.len() {
            break;
        }
        start = end + 1;
    }
    out
}
