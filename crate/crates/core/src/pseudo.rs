//! Pseudo-isomorphism data and the pullback calculus built on it: wedge
//! defects, the NIC test, BTC decision procedures, and the built-in lift of
//! the standard Cremona involution of P^3.
//!
//! A pseudo-isomorphism f: X -> Y contracts no divisor in either direction;
//! in dimension 3 its indeterminacy loci are curves. Pulled-back (1,1)
//! classes multiply almost like forms — the failure is a curve-supported
//! cycle ("wedge defect") determined by the indeterminacy ladder:
//!
//! ```text
//! f*(a2) ^ f*(a3) = f*(a2 ^ a3) + sum_C <a2,C> <a3,C> [C']
//! ```
//!
//! where C runs over the ladder's source curves and C' is the matching image
//! curve.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::linalg::{self, Mat};
use crate::rat::{int, Rat};
use crate::ring::{line_curve_name, pair, CurveCycle, DivisorClass, VarietyDescriptor};

/// One rung of the indeterminacy ladder: the source curve is paired against
/// divisor classes, the image curve receives the defect mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderEntry {
    pub source_name: String,
    pub source_class: CurveCycle,
    pub image_name: String,
    pub image_class: CurveCycle,
}

/// A pseudo-isomorphism f: X -> Y in lattice coordinates: pullback matrices
/// on H^{1,1} and H^{2,2} (bases H, E_i and H^2, L_i), explicit pushforward
/// matrices, and the indeterminacy ladder of f^{-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoIsoData {
    pub name: String,
    pub source: VarietyDescriptor,
    pub target: VarietyDescriptor,
    pub m11: Mat,
    pub m22: Mat,
    pub push11: Mat,
    pub push22: Mat,
    pub ladder: Vec<LadderEntry>,
}

impl PseudoIsoData {
    /// Validates shapes, ladder classes (integral, unique names) and the
    /// projection formula <m11 x, c> = <x, push22 c> and
    /// <y, m22 c> = <push11 y, c> on all basis pairs.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: String,
        source: VarietyDescriptor,
        target: VarietyDescriptor,
        m11: Mat,
        m22: Mat,
        push11: Mat,
        push22: Mat,
        ladder: Vec<LadderEntry>,
    ) -> Result<Self, Error> {
        let rank = source.rank();
        if target.rank() != rank {
            return Err(Error::InvalidMap {
                msg: format!("source rank {} != target rank {}", rank, target.rank()),
            });
        }
        for (label, m) in [("m11", &m11), ("m22", &m22), ("push11", &push11), ("push22", &push22)] {
            if m.nrows() != rank || m.ncols() != rank {
                return Err(Error::InvalidMap {
                    msg: format!("{label} must be {rank}x{rank}, got {}x{}", m.nrows(), m.ncols()),
                });
            }
        }
        let mut names: Vec<&str> = Vec::new();
        for entry in &ladder {
            if entry.source_class.d.len() != source.n_points
                || entry.image_class.d.len() != source.n_points
            {
                return Err(Error::InvalidMap {
                    msg: format!("ladder entry {} has classes of wrong rank", entry.source_name),
                });
            }
            if !entry.source_class.is_integral() || !entry.image_class.is_integral() {
                return Err(Error::InvalidMap {
                    msg: format!("ladder entry {} has non-integer class", entry.source_name),
                });
            }
            if names.contains(&entry.source_name.as_str()) {
                return Err(Error::InvalidMap {
                    msg: format!("duplicate ladder curve name {}", entry.source_name),
                });
            }
            names.push(&entry.source_name);
        }
        // Projection formula on basis pairs. The pairing Gram matrix is
        // G = diag(1, -1, .., -1) in both lattices, so the two identities read
        // m11^T G = G push22 and m22^T G = G push11.
        let g = gram(rank);
        let lhs = m11.transpose().mul(&g).expect("shape checked");
        let rhs = g.mul(&push22).expect("shape checked");
        if lhs != rhs {
            return Err(Error::InvalidMap {
                msg: "adjunction failure: <m11 x, c> != <x, push22 c> on some basis pair".to_string(),
            });
        }
        let lhs = m22.transpose().mul(&g).expect("shape checked");
        let rhs = g.mul(&push11).expect("shape checked");
        if lhs != rhs {
            return Err(Error::InvalidMap {
                msg: "adjunction failure: <y, m22 c> != <push11 y, c> on some basis pair".to_string(),
            });
        }
        Ok(PseudoIsoData { name, source, target, m11, m22, push11, push22, ladder })
    }

    /// True when both pullback matrices square to the identity.
    pub fn is_involution(&self) -> bool {
        self.m11.mul(&self.m11).map(|m| m.is_identity()).unwrap_or(false)
            && self.m22.mul(&self.m22).map(|m| m.is_identity()).unwrap_or(false)
    }
}

fn gram(rank: usize) -> Mat {
    let mut g = Mat::identity(rank);
    for i in 1..rank {
        g.set(i, i, int(-1));
    }
    g
}

/// The lift J_X of the standard Cremona involution
/// (x0:x1:x2:x3) -> (1/x0:1/x1:1/x2:1/x3) to the blowup X of P^3 at the four
/// coordinate points. Pullbacks:
///
/// ```text
/// J*(H)   = 3H - 2 sum E_i        J*(E_j) = H + E_j - sum E_i
/// J*(H^2) = 3H^2 - sum L_i        J*(L_j) = 2H^2 + L_j - sum L_i
/// ```
///
/// J_X is an involution, so the pushforwards equal the pullbacks. The ladder
/// consists of the six line curves C{i}{j}, mapped to C{3-i}{3-j}.
pub fn make_jx() -> PseudoIsoData {
    let n = 4;
    let v = VarietyDescriptor::p3_blowup(n);
    let mut m11 = Mat::zeros(5, 5);
    // column 0: J*(H); column j+1: J*(E_j)
    m11.set(0, 0, int(3));
    for i in 0..n {
        m11.set(i + 1, 0, int(-2));
    }
    for j in 0..n {
        m11.set(0, j + 1, int(1));
        for i in 0..n {
            m11.set(i + 1, j + 1, if i == j { Rat::zero() } else { int(-1) });
        }
    }
    let mut m22 = Mat::zeros(5, 5);
    m22.set(0, 0, int(3));
    for i in 0..n {
        m22.set(i + 1, 0, int(-1));
    }
    for j in 0..n {
        m22.set(0, j + 1, int(2));
        for i in 0..n {
            m22.set(i + 1, j + 1, if i == j { Rat::zero() } else { int(-1) });
        }
    }
    let mut ladder = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (si, sj) = (i, j);
            let (ti, tj) = (n - 1 - j, n - 1 - i);
            let source_name = line_curve_name(si, sj);
            let image_name = line_curve_name(ti, tj);
            ladder.push(LadderEntry {
                source_class: v.curve(&source_name).expect("table curve").clone(),
                image_class: v.curve(&image_name).expect("table curve").clone(),
                source_name,
                image_name,
            });
        }
    }
    PseudoIsoData::new(
        "jx".to_string(),
        v.clone(),
        v,
        m11.clone(),
        m22.clone(),
        m11,
        m22,
        ladder,
    )
    .expect("built-in map is valid")
}

/// Pullback f* on H^{1,1}: x lives on the target lattice.
pub fn pullback11(f: &PseudoIsoData, x: &DivisorClass) -> Result<DivisorClass, Error> {
    DivisorClass::from_coords(&f.m11.mul_vec(&x.coords())?)
}

/// Pushforward f_* on H^{1,1}.
pub fn pushforward11(f: &PseudoIsoData, x: &DivisorClass) -> Result<DivisorClass, Error> {
    DivisorClass::from_coords(&f.push11.mul_vec(&x.coords())?)
}

/// Pullback f* on H^{2,2}.
pub fn pullback22(f: &PseudoIsoData, c: &CurveCycle) -> Result<CurveCycle, Error> {
    CurveCycle::from_coords(&f.m22.mul_vec(&c.coords())?)
}

/// Pushforward f_* on H^{2,2}.
pub fn pushforward22(f: &PseudoIsoData, c: &CurveCycle) -> Result<CurveCycle, Error> {
    CurveCycle::from_coords(&f.push22.mul_vec(&c.coords())?)
}

/// The wedge defect f*(a2)^f*(a3) - f*(a2^a3) as a formal combination of
/// named image curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectCycle {
    /// (image curve name, its class, coefficient lambda); zero terms pruned.
    pub terms: Vec<(String, CurveCycle, Rat)>,
}

impl DefectCycle {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a named curve (zero if absent).
    pub fn coeff(&self, name: &str) -> Rat {
        self.terms
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, l)| l.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Collapse to a lattice class with the term list as support.
    pub fn as_curve_cycle(&self, n_points: usize) -> Result<CurveCycle, Error> {
        CurveCycle::from_combination(n_points, &self.terms)
    }
}

/// Defect coefficients: lambda_C = <a2, C> <a3, C> for each ladder source
/// curve C, deposited on the image curve. Terms on the same image curve are
/// merged; zero terms are pruned.
pub fn defect_cycle(
    f: &PseudoIsoData,
    a2: &DivisorClass,
    a3: &DivisorClass,
) -> Result<DefectCycle, Error> {
    let mut terms: Vec<(String, CurveCycle, Rat)> = Vec::new();
    for entry in &f.ladder {
        let lambda = pair(&f.target, a2, &entry.source_class)?
            * pair(&f.target, a3, &entry.source_class)?;
        if lambda.is_zero() {
            continue;
        }
        if let Some(slot) = terms.iter_mut().find(|(n, _, _)| *n == entry.image_name) {
            slot.2 += lambda;
        } else {
            terms.push((entry.image_name.clone(), entry.image_class.clone(), lambda));
        }
    }
    terms.retain(|(_, _, l)| !l.is_zero());
    Ok(DefectCycle { terms })
}

/// Single-blowup correction multiplicity from Eq.-(1)-style bookkeeping: the
/// coefficient of the contracted divisor's curve class is the plain product
/// of the two pairings against the exceptional fiber class.
pub fn eq1_correction(alpha_dot_f: &Rat, beta_dot_f: &Rat) -> Rat {
    alpha_dot_f * beta_dot_f
}

/// NIC test: g pairs to zero with every ladder source curve.
pub fn nic_check(f: &PseudoIsoData, g: &DivisorClass) -> Result<bool, Error> {
    for entry in &f.ladder {
        if !pair(&f.target, g, &entry.source_class)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact basis of the NIC subspace {g : <g, C> = 0 for all ladder curves C},
/// each vector scaled to primitive integer form.
pub fn nic_space(f: &PseudoIsoData) -> Vec<DivisorClass> {
    let rank = f.target.rank();
    // kernel of the empty system is the whole lattice
    let basis: Vec<Vec<Rat>> = if f.ladder.is_empty() {
        (0..rank)
            .map(|i| {
                let mut v = vec![Rat::zero(); rank];
                v[i] = int(1);
                v
            })
            .collect()
    } else {
        let rows: Vec<Vec<Rat>> =
            f.ladder.iter().map(|e| pairing_row(&e.source_class)).collect();
        Mat::from_rows(rows).expect("equal-length rows").nullspace()
    };
    basis
        .iter()
        .map(|v| DivisorClass::from_coords(v).expect("rank-sized vector"))
        .collect()
}

/// The functional x -> <x, C> as a row vector in (a, b) coordinates.
fn pairing_row(c: &CurveCycle) -> Vec<Rat> {
    let mut row = Vec::with_capacity(1 + c.d.len());
    row.push(c.c.clone());
    row.extend(c.d.iter().map(|d| -d.clone()));
    row
}

/// BTC test: the wedge defect of (a2, a3) vanishes. For involution-type
/// ladders this is "per curve, <a2,C> = 0 or <a3,C> = 0".
pub fn btc_check(f: &PseudoIsoData, a2: &DivisorClass, a3: &DivisorClass) -> Result<bool, Error> {
    Ok(defect_cycle(f, a2, a3)?.is_zero())
}

/// Which of the two classes a component's assignment constrains on a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    A2,
    A3,
}

/// One maximal solution component of the BTC condition: for each ladder curve
/// the assignment says which class is orthogonal to it; the component is the
/// product of the two solution subspaces.
#[derive(Debug, Clone)]
pub struct BtcComponent {
    pub assignment: Vec<Slot>,
    pub subspace2: Vec<DivisorClass>,
    pub subspace3: Vec<DivisorClass>,
    pub dimension: usize,
}

impl BtcComponent {
    /// Exact membership test for a pair of classes.
    pub fn contains(&self, a2: &DivisorClass, a3: &DivisorClass) -> bool {
        let rows2: Vec<Vec<Rat>> = self.subspace2.iter().map(DivisorClass::coords).collect();
        let rows3: Vec<Vec<Rat>> = self.subspace3.iter().map(DivisorClass::coords).collect();
        linalg::span_contains(&rows2, &a2.coords()) && linalg::span_contains(&rows3, &a3.coords())
    }
}

/// Enumerate all 2^k orthogonality assignments over the k ladder curves,
/// solve each pair of homogeneous systems exactly, and keep the maximal
/// components (subspace-pair containment tested by exact rank). Deterministic:
/// assignments are scanned in ascending bitmask order and results sorted by
/// (descending dimension, ascending bitmask).
pub fn btc_classify(f: &PseudoIsoData) -> Vec<BtcComponent> {
    let k = f.ladder.len();
    let rank = f.target.rank();
    let rows: Vec<Vec<Rat>> =
        f.ladder.iter().map(|e| pairing_row(&e.source_class)).collect();

    let solve = |idx: &[usize]| -> Vec<Vec<Rat>> {
        if idx.is_empty() {
            return (0..rank)
                .map(|i| {
                    let mut v = vec![Rat::zero(); rank];
                    v[i] = int(1);
                    v
                })
                .collect();
        }
        let sel: Vec<Vec<Rat>> = idx.iter().map(|&i| rows[i].clone()).collect();
        Mat::from_rows(sel).expect("equal-length rows").nullspace()
    };

    struct Raw {
        mask: usize,
        assignment: Vec<Slot>,
        v2: Vec<Vec<Rat>>,
        v3: Vec<Vec<Rat>>,
        dim: usize,
    }

    let mut raws: Vec<Raw> = Vec::new();
    for mask in 0usize..(1 << k) {
        let mut on2 = Vec::new();
        let mut on3 = Vec::new();
        let mut assignment = Vec::with_capacity(k);
        for (i, _) in f.ladder.iter().enumerate() {
            if mask & (1 << i) == 0 {
                assignment.push(Slot::A2);
                on2.push(i);
            } else {
                assignment.push(Slot::A3);
                on3.push(i);
            }
        }
        let v2 = solve(&on2);
        let v3 = solve(&on3);
        let dim = v2.len() + v3.len();
        // drop exact duplicates (same spans) keeping the lowest mask
        if raws
            .iter()
            .any(|r| linalg::span_eq(&r.v2, &v2) && linalg::span_eq(&r.v3, &v3))
        {
            continue;
        }
        raws.push(Raw { mask, assignment, v2, v3, dim });
    }

    // maximality: discard any component whose both factors embed in another's
    let mut keep = vec![true; raws.len()];
    for i in 0..raws.len() {
        for j in 0..raws.len() {
            if i == j || !keep[i] {
                continue;
            }
            if linalg::span_leq(&raws[i].v2, &raws[j].v2)
                && linalg::span_leq(&raws[i].v3, &raws[j].v3)
                && (raws[j].dim > raws[i].dim)
            {
                keep[i] = false;
            }
        }
    }

    let mut out: Vec<(usize, BtcComponent)> = raws
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| {
            let comp = BtcComponent {
                assignment: r.assignment,
                subspace2: r
                    .v2
                    .iter()
                    .map(|v| DivisorClass::from_coords(v).expect("rank-sized"))
                    .collect(),
                subspace3: r
                    .v3
                    .iter()
                    .map(|v| DivisorClass::from_coords(v).expect("rank-sized"))
                    .collect(),
                dimension: r.dim,
            };
            (r.mask, comp)
        })
        .collect();
    out.sort_by(|(ma, ca), (mb, cb)| cb.dimension.cmp(&ca.dimension).then(ma.cmp(mb)));
    out.into_iter().map(|(_, c)| c).collect()
}

/// The ladder curves on which all three classes pair nonzero — the
/// obstructions to the diagonal Weak-BTC necessary condition. Empty means the
/// condition holds.
pub fn weak_btc_obstruction(
    f: &PseudoIsoData,
    a1: &DivisorClass,
    a2: &DivisorClass,
    a3: &DivisorClass,
) -> Result<Vec<(String, [Rat; 3])>, Error> {
    let mut out = Vec::new();
    for entry in &f.ladder {
        let p1 = pair(&f.target, a1, &entry.source_class)?;
        let p2 = pair(&f.target, a2, &entry.source_class)?;
        let p3 = pair(&f.target, a3, &entry.source_class)?;
        if !p1.is_zero() && !p2.is_zero() && !p3.is_zero() {
            out.push((entry.source_name.clone(), [p1, p2, p3]));
        }
    }
    Ok(out)
}

/// For an intended Kähler class kappa: the self-triple of f*(kappa) and the
/// list of ladder curves it pairs NEGATIVELY with (name, pairing value).
/// For J_X and a strictly positive kappa all six pairings are negative, which
/// is the positivity-loss witness.
pub fn negativity_witness(
    f: &PseudoIsoData,
    kappa: &DivisorClass,
) -> Result<(Rat, Vec<(String, Rat)>), Error> {
    let jk = pullback11(f, kappa)?;
    let t = crate::ring::triple(&f.source, &jk, &jk, &jk)?;
    let mut negs = Vec::new();
    for entry in &f.ladder {
        let p = pair(&f.source, &jk, &entry.source_class)?;
        if p < Rat::zero() {
            negs.push((entry.source_name.clone(), p));
        }
    }
    Ok((t, negs))
}
