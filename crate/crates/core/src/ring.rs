//! The intersection ring of X = blowup of P^3 at N points.
//!
//! H^{1,1}(X) has basis (H, E_0..E_{N-1}) and H^{2,2}(X) has basis
//! (H^2, L_0..L_{N-1}). The multiplication rules are
//!
//! ```text
//! H . H   = H^2          H . E_i  = 0
//! E_i.E_i = -L_i         E_i.E_j  = 0        (i != j)
//! H . H^2 = 1            H . L_i  = 0
//! E_i.H^2 = 0            E_i.L_j  = -delta_{ij}
//! ```
//!
//! so in particular E_i^3 = +1.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{self, int, Rat};

/// The ambient variety: P^3 blown up at `n_points` points, with point labels
/// and a table of named distinguished curves (by default the strict
/// transforms of the lines through pairs of blown-up points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyDescriptor {
    pub n_points: usize,
    pub labels: Vec<String>,
    pub curve_table: Vec<(String, CurveCycle)>,
}

impl VarietyDescriptor {
    /// Standard model: labels e0..e{N-1} and the line curves C{i}{j} with
    /// class H^2 - L_i - L_j for every pair i < j.
    pub fn p3_blowup(n_points: usize) -> Self {
        let labels = (0..n_points).map(|i| format!("e{i}")).collect();
        let mut curve_table = Vec::new();
        for i in 0..n_points {
            for j in (i + 1)..n_points {
                let mut d = vec![Rat::zero(); n_points];
                d[i] = int(-1);
                d[j] = int(-1);
                curve_table.push((line_curve_name(i, j), CurveCycle::new(int(1), d)));
            }
        }
        VarietyDescriptor { n_points, labels, curve_table }
    }

    /// Rank of both lattices.
    pub fn rank(&self) -> usize {
        self.n_points + 1
    }

    pub fn curve(&self, name: &str) -> Option<&CurveCycle> {
        self.curve_table.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// The default curve list for positivity probes: every L_i, every
    /// distinguished curve, every H^2 - L_i, and H^2 itself.
    pub fn default_cone_curves(&self) -> Vec<CurveCycle> {
        let n = self.n_points;
        let mut out = Vec::new();
        for i in 0..n {
            let mut d = vec![Rat::zero(); n];
            d[i] = int(1);
            out.push(CurveCycle::new(Rat::zero(), d));
        }
        out.extend(self.curve_table.iter().map(|(_, c)| c.clone()));
        for i in 0..n {
            let mut d = vec![Rat::zero(); n];
            d[i] = int(-1);
            out.push(CurveCycle::new(int(1), d));
        }
        out.push(CurveCycle::new(int(1), vec![Rat::zero(); n]));
        out
    }

    fn check_rank(&self, got: usize) -> Result<(), Error> {
        if got != self.rank() {
            return Err(Error::DimMismatch { expected: self.rank(), got });
        }
        Ok(())
    }
}

/// Name of the strict transform of the line through points i and j.
pub fn line_curve_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("C{i}{j}")
    } else {
        format!("C{i}_{j}")
    }
}

/// An element a·H + sum_i b_i·E_i of H^{1,1}(X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub a: Rat,
    pub b: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(a: Rat, b: Vec<Rat>) -> Self {
        DivisorClass { a, b }
    }

    pub fn zero(n_points: usize) -> Self {
        DivisorClass::new(Rat::zero(), vec![Rat::zero(); n_points])
    }

    /// The hyperplane class H.
    pub fn h(n_points: usize) -> Self {
        DivisorClass::new(int(1), vec![Rat::zero(); n_points])
    }

    /// The exceptional divisor class E_i.
    pub fn e(n_points: usize, i: usize) -> Self {
        let mut b = vec![Rat::zero(); n_points];
        b[i] = int(1);
        DivisorClass::new(Rat::zero(), b)
    }

    /// Coordinates as one flat vector (a, b_0, .., b_{N-1}).
    pub fn coords(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(1 + self.b.len());
        v.push(self.a.clone());
        v.extend(self.b.iter().cloned());
        v
    }

    pub fn from_coords(v: &[Rat]) -> Result<Self, Error> {
        let Some((a, b)) = v.split_first() else {
            return Err(Error::DimMismatch { expected: 1, got: 0 });
        };
        Ok(DivisorClass::new(a.clone(), b.to_vec()))
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(
            &self.a + &other.a,
            self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> DivisorClass {
        DivisorClass::new(&self.a * k, self.b.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(Rat::is_zero)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_class(&self.a, &self.b))
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (a, b) = parse_class(s)?;
        Ok(DivisorClass::new(a, b))
    }
}

/// An element c·H^2 + sum_i d_i·L_i of H^{2,2}(X), optionally remembering a
/// decomposition as a formal combination of named curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCycle {
    pub c: Rat,
    pub d: Vec<Rat>,
    pub support: Option<Vec<(String, Rat)>>,
}

impl CurveCycle {
    pub fn new(c: Rat, d: Vec<Rat>) -> Self {
        CurveCycle { c, d, support: None }
    }

    pub fn zero(n_points: usize) -> Self {
        CurveCycle::new(Rat::zero(), vec![Rat::zero(); n_points])
    }

    /// The class H^2.
    pub fn h2(n_points: usize) -> Self {
        CurveCycle::new(int(1), vec![Rat::zero(); n_points])
    }

    /// The line class L_i.
    pub fn l(n_points: usize, i: usize) -> Self {
        let mut d = vec![Rat::zero(); n_points];
        d[i] = int(1);
        CurveCycle::new(Rat::zero(), d)
    }

    /// Multiplicity-weighted sum of named curves; the lattice coordinates are
    /// computed from the parts, so the support invariant holds by
    /// construction.
    pub fn from_combination(n_points: usize, parts: &[(String, CurveCycle, Rat)]) -> Result<Self, Error> {
        let mut c = Rat::zero();
        let mut d = vec![Rat::zero(); n_points];
        let mut support = Vec::new();
        for (name, class, mult) in parts {
            if class.d.len() != n_points {
                return Err(Error::DimMismatch { expected: n_points, got: class.d.len() });
            }
            c += &class.c * mult;
            for (di, ci) in d.iter_mut().zip(&class.d) {
                *di += ci * mult;
            }
            support.push((name.clone(), mult.clone()));
        }
        Ok(CurveCycle { c, d, support: Some(support) })
    }

    pub fn coords(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(1 + self.d.len());
        v.push(self.c.clone());
        v.extend(self.d.iter().cloned());
        v
    }

    pub fn from_coords(v: &[Rat]) -> Result<Self, Error> {
        let Some((c, d)) = v.split_first() else {
            return Err(Error::DimMismatch { expected: 1, got: 0 });
        };
        Ok(CurveCycle::new(c.clone(), d.to_vec()))
    }

    pub fn add(&self, other: &CurveCycle) -> CurveCycle {
        CurveCycle::new(
            &self.c + &other.c,
            self.d.iter().zip(&other.d).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> CurveCycle {
        CurveCycle::new(&self.c * k, self.d.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.iter().all(Rat::is_zero)
    }

    /// Lattice-coordinate equality, ignoring any support decomposition.
    pub fn same_class(&self, other: &CurveCycle) -> bool {
        self.c == other.c && self.d == other.d
    }

    /// True when every coordinate is an integer (required of distinguished
    /// and ladder curves).
    pub fn is_integral(&self) -> bool {
        rat::is_integer(&self.c) && self.d.iter().all(rat::is_integer)
    }
}

impl fmt::Display for CurveCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_class(&self.c, &self.d))
    }
}

impl FromStr for CurveCycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (c, d) = parse_class(s)?;
        Ok(CurveCycle::new(c, d))
    }
}

/// Shared text form `a;b0,b1,...,bN-1` — whitespace-insensitive, entries are
/// integers or `p/q` fractions.
fn parse_class(text: &str) -> Result<(Rat, Vec<Rat>), Error> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some((head, tail)) = s.split_once(';') else {
        return Err(Error::Parse {
            text: text.to_string(),
            msg: "expected `a;b0,b1,...` with a `;` separator".to_string(),
        });
    };
    let a = rat::parse_rat(head)?;
    let b = if tail.is_empty() {
        Vec::new()
    } else {
        tail.split(',').map(rat::parse_rat).collect::<Result<Vec<_>, _>>()?
    };
    Ok((a, b))
}

fn fmt_class(head: &Rat, tail: &[Rat]) -> String {
    let mut out = rat::fmt_rat(head);
    out.push(';');
    for (i, x) in tail.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&rat::fmt_rat(x));
    }
    out
}

/// Wedge of two divisor classes: bilinear extension of H.H = H^2,
/// E_i.E_i = -L_i, all mixed products zero.
pub fn wedge11(v: &VarietyDescriptor, x: &DivisorClass, y: &DivisorClass) -> Result<CurveCycle, Error> {
    v.check_rank(1 + x.b.len())?;
    v.check_rank(1 + y.b.len())?;
    let c = &x.a * &y.a;
    let d = x.b.iter().zip(&y.b).map(|(xb, yb)| -(xb * yb)).collect();
    Ok(CurveCycle::new(c, d))
}

/// Intersection pairing H^{1,1} x H^{2,2} -> Q: bilinear extension of
/// H.H^2 = 1, E_i.L_j = -delta_{ij}.
pub fn pair(v: &VarietyDescriptor, x: &DivisorClass, c: &CurveCycle) -> Result<Rat, Error> {
    v.check_rank(1 + x.b.len())?;
    v.check_rank(1 + c.d.len())?;
    let mut acc = &x.a * &c.c;
    for (b, d) in x.b.iter().zip(&c.d) {
        acc -= b * d;
    }
    Ok(acc)
}

/// Triple product pair(x, wedge11(y, z)); fully symmetric.
pub fn triple(
    v: &VarietyDescriptor,
    x: &DivisorClass,
    y: &DivisorClass,
    z: &DivisorClass,
) -> Result<Rat, Error> {
    pair(v, x, &wedge11(v, y, z)?)
}

/// Kleiman-style positivity probe: x pairs >= 0 (or > 0 when `strict`)
/// against every supplied curve. The probe is only as strong as its curve
/// list; [`VarietyDescriptor::default_cone_curves`] is the documented default.
pub fn cone_probe(
    v: &VarietyDescriptor,
    x: &DivisorClass,
    curves: &[CurveCycle],
    strict: bool,
) -> Result<bool, Error> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    for c in curves {
        let p = pair(v, x, c)?;
        let ok = if strict { p > Rat::zero() } else { p >= Rat::zero() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
