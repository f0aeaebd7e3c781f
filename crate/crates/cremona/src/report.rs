//! Built-in reproduction reports: deterministic batteries of exact lattice
//! identities and numerical lab measurements, rendered as stable JSON.
//!
//! Two reports ship with the binary:
//!
//! - `theorem2`: exact rational checks of the lifted Cremona involution's
//!   pullback calculus — involution and adjunction identities, frozen triple
//!   products and curve pairings, defect and non-intersecting-center
//!   behaviour, cone probes, and seeded families exercising the box-type
//!   compatibility tests.
//! - `lab`: grid and radial-profile measurements at the default desk-scale
//!   resolutions — dd^c masses against closed-form values, Lelong estimates,
//!   extremal-envelope solves, and pulled-back singularity probes.
//!
//! Every entry records its inputs, the measured value, the expected value
//! where an independent one exists, a provenance tag (`"oracle"` when the
//! status is a comparison against an independently derived expected value,
//! `"computed"` for self-contained pass/fail checks), the status, and the
//! absolute tolerance used for numeric comparisons. Rendering is byte-stable
//! across runs: floats print at 12 significant digits, rationals print
//! exactly, entry order is fixed, and nothing depends on time, environment,
//! or hash order.

use cremona_core::pseudo::{
    btc_check, btc_classify, defect_cycle, make_jx, nic_check, nic_space, pullback11,
    pullback22, pushforward11, pushforward22, weak_btc_obstruction,
};
use cremona_core::rat::{frac, int, Rat};
use cremona_core::ring::{cone_probe, pair, triple, CurveCycle, DivisorClass};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::LabConfig;
use crate::jsonfmt::Json;
use crate::lab::{
    self, ddc_mass, envelope_residual, jstar_singularity_probe, least_negative_example,
    lelong_estimate, lelong_estimate_at, max_regularize, minimal_pair_envelope,
    monotone_convergence_report, CurveKind, GridFunction, RadialProfile,
};

/// Which built-in report to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    /// Exact-arithmetic identity battery for the built-in involution.
    Theorem2,
    /// Numerical measurement battery at the default lab configuration.
    Lab,
}

impl ReportKind {
    pub fn name(self) -> &'static str {
        match self {
            ReportKind::Theorem2 => "theorem2",
            ReportKind::Lab => "lab",
        }
    }

    pub fn from_name(name: &str) -> Option<ReportKind> {
        match name {
            "theorem2" => Some(ReportKind::Theorem2),
            "lab" => Some(ReportKind::Lab),
            _ => None,
        }
    }
}

/// One report line: a named check with its inputs, outcome, and expectation.
#[derive(Debug, Clone)]
pub struct ReportEntry {
    pub id: String,
    pub inputs: Json,
    pub value: Json,
    /// Independently derived expected value; `Json::Null` for self-contained
    /// checks.
    pub oracle: Json,
    /// "oracle" or "computed"; see module docs.
    pub provenance: &'static str,
    pub status: bool,
    /// Absolute tolerance used by numeric comparisons; `None` for exact ones.
    pub tolerance: Option<f64>,
}

/// A full report: an ordered list of uniquely-named entries.
#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub kind: &'static str,
    pub entries: Vec<ReportEntry>,
}

impl ReportDocument {
    fn new(kind: &'static str) -> Self {
        ReportDocument { kind, entries: Vec::new() }
    }

    /// Appends an entry; entry ids must be unique within a report.
    fn push(&mut self, entry: ReportEntry) {
        assert!(
            !self.entries.iter().any(|e| e.id == entry.id),
            "duplicate report entry id {:?}",
            entry.id
        );
        self.entries.push(entry);
    }

    /// True iff every entry passed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status)
    }

    /// Ids of the failing entries, in report order.
    pub fn failures(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.status).map(|e| e.id.as_str()).collect()
    }

    pub fn to_json(&self) -> Json {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Json::obj([
                    ("id", Json::str(e.id.clone())),
                    ("inputs", e.inputs.clone()),
                    ("value", e.value.clone()),
                    ("oracle", e.oracle.clone()),
                    ("provenance", Json::str(e.provenance)),
                    ("status", Json::str(if e.status { "pass" } else { "fail" })),
                    ("tolerance", e.tolerance.map_or(Json::Null, Json::Float)),
                ])
            })
            .collect::<Vec<_>>();
        Json::obj([
            ("format", Json::Int(1)),
            ("kind", Json::str(self.kind)),
            ("all_pass", Json::Bool(self.passed())),
            ("entries", Json::arr(entries)),
        ])
    }

    /// Stable pretty-printed JSON text (trailing newline included).
    pub fn render(&self) -> String {
        self.to_json().render()
    }
}

/// Runs a built-in report on the built-in map and lab configuration.
pub fn run_report(kind: ReportKind) -> ReportDocument {
    match kind {
        ReportKind::Theorem2 => theorem2_report(),
        ReportKind::Lab => lab_report(&LabConfig::default()),
    }
}

/// Runs the lab report at a caller-supplied configuration.
pub fn lab_report_with(config: &LabConfig) -> ReportDocument {
    lab_report(config)
}

// ---------------------------------------------------------------------------
// entry constructors

/// Exact comparison: passes iff value and oracle are structurally equal.
fn exact_entry(id: &str, inputs: Json, value: Json, oracle: Json) -> ReportEntry {
    let status = value == oracle;
    ReportEntry {
        id: id.to_string(),
        inputs,
        value,
        oracle,
        provenance: "oracle",
        status,
        tolerance: None,
    }
}

/// Numeric comparison with an absolute tolerance. `key` names the measured
/// quantity inside the value object, which also carries the absolute error.
fn numeric_entry(
    id: &str,
    inputs: Json,
    key: &'static str,
    value: f64,
    oracle: f64,
    abs_tol: f64,
) -> ReportEntry {
    let abs_err = (value - oracle).abs();
    let status = value.is_finite() && abs_err <= abs_tol;
    ReportEntry {
        id: id.to_string(),
        inputs,
        value: Json::obj([(key, Json::Float(value)), ("abs_err", Json::Float(abs_err))]),
        oracle: Json::Float(oracle),
        provenance: "oracle",
        status,
        tolerance: Some(abs_tol),
    }
}

/// Self-contained predicate: passes iff `ok`.
fn check_entry(id: &str, inputs: Json, ok: bool) -> ReportEntry {
    ReportEntry {
        id: id.to_string(),
        inputs,
        value: Json::Bool(ok),
        oracle: Json::Null,
        provenance: "computed",
        status: ok,
        tolerance: None,
    }
}

// ---------------------------------------------------------------------------
// exact-arithmetic report

fn dc(s: &str) -> DivisorClass {
    s.parse().expect("class literal")
}

fn draw_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let p = rng.gen_range(lo..=hi);
    let q = rng.gen_range(1..=9i64);
    frac(p, q)
}

fn draw_class(rng: &mut ChaCha8Rng, n_points: usize, lo: i64, hi: i64) -> DivisorClass {
    let a = draw_rat(rng, lo, hi);
    let b = (0..n_points).map(|_| draw_rat(rng, lo, hi)).collect();
    DivisorClass { a, b }
}

fn theorem2_report() -> ReportDocument {
    let jx = make_jx();
    let v = &jx.target;
    let rank = v.rank();
    let mut doc = ReportDocument::new("theorem2");
    let map_inputs = || Json::obj([("map", Json::str("jx"))]);

    // The map squares to the identity on both lattices.
    let sq11 = jx.m11.mul(&jx.m11).expect("square shapes");
    let sq22 = jx.m22.mul(&jx.m22).expect("square shapes");
    doc.push(check_entry("involution_h11", map_inputs(), sq11.is_identity()));
    doc.push(check_entry("involution_h22", map_inputs(), sq22.is_identity()));

    // Projection-formula adjunction over every pair of basis vectors:
    // <f* x, c> = <x, f_* c> and <f_* x, c> = <x, f* c>.
    let unit = |i: usize| {
        let mut u = vec![int(0); rank];
        u[i] = int(1);
        u
    };
    let mut adjunction_ok = true;
    for a in 0..rank {
        let x = DivisorClass::from_coords(&unit(a)).expect("rank-sized vector");
        for b in 0..rank {
            let c = CurveCycle::from_coords(&unit(b)).expect("rank-sized vector");
            let lhs_pull = pair(v, &pullback11(&jx, &x).expect("shape"), &c).expect("shape");
            let rhs_pull = pair(v, &x, &pushforward22(&jx, &c).expect("shape")).expect("shape");
            let lhs_push = pair(v, &pushforward11(&jx, &x).expect("shape"), &c).expect("shape");
            let rhs_push = pair(v, &x, &pullback22(&jx, &c).expect("shape")).expect("shape");
            adjunction_ok &= lhs_pull == rhs_pull && lhs_push == rhs_push;
        }
    }
    doc.push(check_entry(
        "adjunction_all_pairs",
        Json::obj([("map", Json::str("jx")), ("basis_pairs", Json::Int((rank * rank) as i64))]),
        adjunction_ok,
    ));

    // Pullback of the hyperplane class and its frozen self-triple.
    let h = DivisorClass::h(v.n_points);
    let jh = pullback11(&jx, &h).expect("shape");
    doc.push(exact_entry(
        "pullback_H",
        Json::obj([("class", Json::str(h.to_string()))]),
        Json::str(jh.to_string()),
        Json::str("3;-2,-2,-2,-2"),
    ));
    let t = triple(v, &jh, &jh, &jh).expect("shape");
    doc.push(exact_entry(
        "triple_JH",
        Json::obj([("class", Json::str(jh.to_string()))]),
        Json::rat(&t),
        Json::rat(&int(-5)),
    ));

    // The pulled-back hyperplane pairs -1 with every line-type table curve.
    for (name, curve) in &v.curve_table {
        let p = pair(v, &jh, curve).expect("shape");
        doc.push(exact_entry(
            &format!("pairing_JH_{name}"),
            Json::obj([("class", Json::str(jh.to_string())), ("curve", Json::str(name.clone()))]),
            Json::rat(&p),
            Json::rat(&int(-1)),
        ));
    }

    // Pushforward of a table curve lands on minus the opposite table curve.
    let c01 = v.curve("C01").expect("table curve").clone();
    let pc01 = pushforward22(&jx, &c01).expect("shape");
    doc.push(exact_entry(
        "pushforward_C01",
        Json::obj([("curve", Json::str("C01"))]),
        Json::str(pc01.to_string()),
        Json::str("-1;0,0,1,1"),
    ));

    // A sample defect: pulling back the wedge square of H - E0 - E1 misses
    // its cup square by one copy of each swapped table curve.
    let alpha = dc("1;-1,-1,0,0");
    let defect = defect_cycle(&jx, &alpha, &alpha).expect("shape");
    let defect_json = Json::arr(defect.terms.iter().map(|(name, _, lambda)| {
        Json::obj([("curve", Json::str(name.clone())), ("coeff", Json::rat(lambda))])
    }));
    doc.push(exact_entry(
        "defect_H_E0_E1_square",
        Json::obj([("a2", Json::str(alpha.to_string())), ("a3", Json::str(alpha.to_string()))]),
        defect_json,
        Json::arr([
            Json::obj([("curve", Json::str("C23")), ("coeff", Json::str("1"))]),
            Json::obj([("curve", Json::str("C01")), ("coeff", Json::str("1"))]),
        ]),
    ));

    // The non-intersecting-center subspace is the line spanned by 2H - sum E.
    let nic = nic_space(&jx);
    doc.push(exact_entry(
        "nic_dim",
        map_inputs(),
        Json::Int(nic.len() as i64),
        Json::Int(1),
    ));
    let generator = nic.first().map(|g| g.to_string()).unwrap_or_default();
    doc.push(exact_entry(
        "nic_generator",
        map_inputs(),
        Json::str(generator),
        Json::str("2;-1,-1,-1,-1"),
    ));
    let eta0 = dc("2;-1,-1,-1,-1");
    doc.push(check_entry(
        "nic_eta0",
        Json::obj([("class", Json::str(eta0.to_string()))]),
        nic_check(&jx, &eta0).expect("shape"),
    ));

    // The generator passes the nonnegativity cone probe on the default list.
    let cone_curves = v.default_cone_curves();
    doc.push(check_entry(
        "eta0_nef_probe",
        Json::obj([
            ("class", Json::str(eta0.to_string())),
            ("curves", Json::Int(cone_curves.len() as i64)),
            ("strict", Json::Bool(false)),
        ]),
        cone_probe(v, &eta0, &cone_curves, false).expect("shape"),
    ));

    // Compatibility components: every maximal one is at least 4-dimensional
    // and the all-swap assignment reaches the full 6.
    let components = btc_classify(&jx);
    let dims: Vec<usize> = components.iter().map(|c| c.dimension).collect();
    doc.push(check_entry(
        "btc_component_dimensions",
        Json::obj([("components", Json::Int(dims.len() as i64))]),
        !dims.is_empty() && dims.iter().all(|&d| d >= 4) && dims.contains(&6),
    ));

    // A two-parameter family built on the invariant generator stays
    // compatible for every nonnegative draw.
    let mut rng = ChaCha8Rng::seed_from_u64(20260401);
    let base2 = dc("1;0,0,-1,-1");
    let base3 = dc("1;0,-1,0,-1");
    let draws = 20usize;
    let mut family_ok = true;
    for _ in 0..draws {
        let a2 = draw_rat(&mut rng, 0, 9);
        let b2 = draw_rat(&mut rng, 0, 9);
        let a3 = draw_rat(&mut rng, 0, 9);
        let b3 = draw_rat(&mut rng, 0, 9);
        let alpha2 = eta0.scale(&a2).add(&base2.scale(&b2));
        let alpha3 = eta0.scale(&a3).add(&base3.scale(&b3));
        family_ok &= btc_check(&jx, &alpha2, &alpha3).expect("shape");
    }
    doc.push(check_entry(
        "btc_nef_pair_family",
        Json::obj([
            ("draws", Json::Int(draws as i64)),
            ("seed", Json::Int(20260401)),
            ("alpha2", Json::str("a*(2;-1,-1,-1,-1) + b*(1;0,0,-1,-1)")),
            ("alpha3", Json::str("a*(2;-1,-1,-1,-1) + b*(1;0,-1,0,-1)")),
        ]),
        family_ok,
    ));

    // On the diagonal the weak compatibility obstruction vanishes exactly on
    // the non-intersecting-center classes.
    let mut rng = ChaCha8Rng::seed_from_u64(20260402);
    let diag_draws = 100usize;
    let mut diag_ok = true;
    for _ in 0..diag_draws {
        let g = draw_class(&mut rng, v.n_points, -9, 9);
        let obstruction = weak_btc_obstruction(&jx, &g, &g, &g).expect("shape");
        diag_ok &= obstruction.is_empty() == nic_check(&jx, &g).expect("shape");
    }
    doc.push(check_entry(
        "weak_btc_diagonal_iff_nic",
        Json::obj([("draws", Json::Int(diag_draws as i64)), ("seed", Json::Int(20260402))]),
        diag_ok,
    ));
    let eta_obstruction = weak_btc_obstruction(&jx, &eta0, &eta0, &eta0).expect("shape");
    doc.push(exact_entry(
        "weak_btc_eta0_diagonal",
        Json::obj([("class", Json::str(eta0.to_string()))]),
        Json::arr(eta_obstruction.iter().map(|(name, _)| Json::str(name.clone()))),
        Json::arr([]),
    ));

    // A frozen mixed example: exactly two obstructing curves with these
    // pairing triples.
    let mixed = weak_btc_obstruction(&jx, &alpha, &h, &h).expect("shape");
    let mixed_json = Json::arr(mixed.iter().map(|(name, pairings)| {
        Json::obj([
            ("curve", Json::str(name.clone())),
            ("pairings", Json::arr(pairings.iter().map(Json::rat))),
        ])
    }));
    doc.push(exact_entry(
        "weak_btc_H_E0_E1_vs_H_H",
        Json::obj([
            ("a1", Json::str(alpha.to_string())),
            ("a2", Json::str(h.to_string())),
            ("a3", Json::str(h.to_string())),
        ]),
        mixed_json,
        Json::arr([
            Json::obj([
                ("curve", Json::str("C01")),
                ("pairings", Json::arr([Json::str("-1"), Json::str("1"), Json::str("1")])),
            ]),
            Json::obj([
                ("curve", Json::str("C23")),
                ("pairings", Json::arr([Json::str("1"), Json::str("1"), Json::str("1")])),
            ]),
        ]),
    ));

    // Positivity-loss witnesses: the pulled-back Kaehler classes have
    // negative self-triples and pair negatively with every table curve.
    push_negativity_entry(&mut doc, &jx, "negativity_H", &h, "-5", "-1");
    let mut kappa = h.clone();
    for i in 0..v.n_points {
        kappa = kappa.add(&DivisorClass::e(v.n_points, i).scale(&frac(-1, 10)));
    }
    push_negativity_entry(&mut doc, &jx, "negativity_kappa_tenth", &kappa, "-519/250", "-4/5");

    doc
}

fn push_negativity_entry(
    doc: &mut ReportDocument,
    jx: &cremona_core::pseudo::PseudoIsoData,
    id: &str,
    kappa: &DivisorClass,
    expect_triple: &str,
    expect_pairing: &str,
) {
    let (t, negatives) = cremona_core::pseudo::negativity_witness(jx, kappa).expect("shape");
    let value = Json::obj([
        ("triple", Json::rat(&t)),
        (
            "negative_pairings",
            Json::arr(negatives.iter().map(|(name, p)| {
                Json::obj([("curve", Json::str(name.clone())), ("pairing", Json::rat(p))])
            })),
        ),
    ]);
    let oracle = Json::obj([
        ("triple", Json::str(expect_triple)),
        (
            "negative_pairings",
            Json::arr(jx.target.curve_table.iter().map(|(name, _)| {
                Json::obj([
                    ("curve", Json::str(name.clone())),
                    ("pairing", Json::str(expect_pairing)),
                ])
            })),
        ),
    ]);
    doc.push(exact_entry(
        id,
        Json::obj([("kappa", Json::str(kappa.to_string()))]),
        value,
        oracle,
    ));
}

// ---------------------------------------------------------------------------
// numerical lab report

fn lab_report(lc: &LabConfig) -> ReportDocument {
    let mut doc = ReportDocument::new("lab");
    let radius = lc.radius;

    // One-dimensional smoothing family: masses against the closed form
    // R^2 / (R^2 + eps^2), monotonicity, and the extrapolated limit.
    let family = lab::eps_family_plane(lc.extent, lc.grid_1d, lc.eps_n_max as u32)
        .expect("built-in family");
    let rep = monotone_convergence_report(&family, radius).expect("monotone built-in family");
    for (k, &mass) in rep.masses.iter().enumerate() {
        let n = k + 1;
        let eps = lab::epsilon(n as u32);
        let oracle = radius * radius / (radius * radius + eps * eps);
        doc.push(numeric_entry(
            &format!("mass_eps_n{n}"),
            Json::obj([
                ("n", Json::Int(n as i64)),
                ("epsilon", Json::Float(eps)),
                ("radius", Json::Float(radius)),
                ("resolution", Json::Int(lc.grid_1d as i64)),
                ("extent", Json::Float(lc.extent)),
            ]),
            "mass",
            mass,
            oracle,
            lc.tol_mass_1d * oracle,
        ));
    }
    doc.push(check_entry(
        "mass_monotone_1d",
        Json::obj([("members", Json::Int(rep.masses.len() as i64))]),
        rep.masses.windows(2).all(|w| w[1] >= w[0] - 1e-12),
    ));
    doc.push(numeric_entry(
        "mass_limit_1d",
        Json::obj([("members", Json::Int(rep.masses.len() as i64))]),
        "limit",
        rep.limit,
        1.0,
        lc.tol_mass_1d,
    ));

    // Pure log potential: even resolutions dodge the singular node, odd ones
    // exercise the singular-core flux path; both masses are 1.
    for (id, res) in [("mass_log_even_res", lc.grid_1d), ("mass_log_odd_res", lc.grid_1d + 1)] {
        let u = lab::log_abs_plane(lc.extent, res).expect("built-in model");
        let mass = ddc_mass(&u, radius).expect("mass");
        doc.push(numeric_entry(
            id,
            Json::obj([
                ("resolution", Json::Int(res as i64)),
                ("radius", Json::Float(radius)),
                ("extent", Json::Float(lc.extent)),
            ]),
            "mass",
            mass,
            1.0,
            lc.tol_mass_1d,
        ));
    }

    // Two-dimensional polyradial family: masses against
    // R^4 / (R^2 + eps^2)^2 and monotonicity.
    let family2 = lab::eps_family_polyradial(lc.extent, lc.grid_2d, lc.eps_n_max_2d as u32)
        .expect("built-in family");
    let rep2 = monotone_convergence_report(&family2, radius).expect("monotone built-in family");
    let r2 = radius * radius;
    for (k, &mass) in rep2.masses.iter().enumerate() {
        let n = k + 1;
        let eps = lab::epsilon(n as u32);
        let denom = r2 + eps * eps;
        let oracle = r2 * r2 / (denom * denom);
        doc.push(numeric_entry(
            &format!("mass2d_eps_n{n}"),
            Json::obj([
                ("n", Json::Int(n as i64)),
                ("epsilon", Json::Float(eps)),
                ("radius", Json::Float(radius)),
                ("resolution", Json::Int(lc.grid_2d as i64)),
                ("extent", Json::Float(lc.extent)),
            ]),
            "mass",
            mass,
            oracle,
            lc.tol_mass_2d * oracle,
        ));
    }
    doc.push(check_entry(
        "mass2d_monotone",
        Json::obj([("members", Json::Int(rep2.masses.len() as i64))]),
        rep2.masses.windows(2).all(|w| w[1] >= w[0] - 1e-12),
    ));
    let abs_sq = lab::abs_squared_polyradial(lc.extent, lc.grid_2d).expect("built-in model");
    let abs_sq_mass = ddc_mass(&abs_sq, radius).expect("mass");
    doc.push(numeric_entry(
        "mass2d_abs_squared",
        Json::obj([
            ("resolution", Json::Int(lc.grid_2d as i64)),
            ("radius", Json::Float(radius)),
            ("extent", Json::Float(lc.extent)),
        ]),
        "mass",
        abs_sq_mass,
        4.0 * r2 * r2,
        0.01 * 4.0 * r2 * r2,
    ));

    // Lelong estimates: radial profiles c*t recover c exactly; a grid
    // potential 3 log|z| and the two-dimensional log recover their
    // coefficients through the annulus-mean estimator.
    for (label, c) in [("half", 0.5f64), ("one", 1.0), ("three", 3.0)] {
        let profile = RadialProfile::sample(-8.0, 0.0, 64, |t| c * t, true).expect("profile");
        doc.push(numeric_entry(
            &format!("lelong_line_{label}"),
            Json::obj([
                ("slope", Json::Float(c)),
                ("nodes", Json::Int(64)),
                ("t_min", Json::Float(-8.0)),
                ("t_max", Json::Float(0.0)),
            ]),
            "estimate",
            lelong_estimate(&profile),
            c,
            lc.tol_lelong * c,
        ));
    }
    let grid3 = GridFunction::sample_plane(lc.extent, lc.grid_1d, |x, y| {
        1.5 * (x * x + y * y).ln()
    })
    .expect("built-in model");
    doc.push(numeric_entry(
        "lelong_grid_three",
        Json::obj([
            ("coefficient", Json::Float(3.0)),
            ("resolution", Json::Int(lc.grid_1d as i64)),
            ("point", Json::str("0,0")),
        ]),
        "estimate",
        lelong_estimate_at(&grid3, (0.0, 0.0)).expect("interior probe"),
        3.0,
        lc.tol_lelong * 3.0,
    ));
    let log2d = GridFunction::sample_polyradial(lc.extent, lc.grid_2d, |r1, r2| {
        0.5 * (r1 * r1 + r2 * r2).ln()
    })
    .expect("built-in model");
    doc.push(numeric_entry(
        "lelong_2d_log",
        Json::obj([("resolution", Json::Int(lc.grid_2d as i64)), ("point", Json::str("0,0"))]),
        "estimate",
        lelong_estimate_at(&log2d, (0.0, 0.0)).expect("origin probe"),
        1.0,
        lc.tol_lelong,
    ));

    // Max-regularization flattens the pole, so the estimate drops to zero.
    let pole = RadialProfile::sample(-8.0, 0.0, 64, |t| t, true).expect("profile");
    for n in [2u32, 5] {
        let regularized = max_regularize(&pole, n);
        doc.push(numeric_entry(
            &format!("lelong_maxreg_n{n}"),
            Json::obj([("floor", Json::Float(-(n as f64))), ("nodes", Json::Int(64))]),
            "estimate",
            lelong_estimate(&regularized),
            0.0,
            lc.tol_lelong,
        ));
    }

    // Extremal envelopes: the zero obstacle yields the zero envelope; the
    // iterates land inside the constraint set; more positivity budget can
    // only raise the envelope.
    let nodes = 64usize;
    let zero_phi = RadialProfile::sample(-4.0, 0.0, nodes, |_| 0.0, false).expect("profile");
    let zero_env = minimal_pair_envelope(&zero_phi, 1.0).expect("feasible");
    let zero_dev = zero_env.values().iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    doc.push(numeric_entry(
        "envelope_zero_phi",
        Json::obj([("nodes", Json::Int(nodes as i64)), ("n_omega", Json::Float(1.0))]),
        "max_abs",
        zero_dev,
        0.0,
        1e-9,
    ));
    let obstacles: Vec<RadialProfile> = vec![
        RadialProfile::sample(-4.0, 0.0, nodes, |t| -2.0 * t, false).expect("profile"),
        RadialProfile::sample(-4.0, 0.0, nodes, |t| 0.5 * (3.0 * t).cos(), false).expect("profile"),
        RadialProfile::sample(-4.0, 0.0, nodes, |t| t * t - 1.0, false).expect("profile"),
        RadialProfile::sample(-4.0, 0.0, nodes, |t| 4.0 * t, false).expect("profile"),
    ];
    let mut max_residual = 0.0f64;
    for phi in &obstacles {
        for n_omega in [1.0, 4.0] {
            let env = minimal_pair_envelope(phi, n_omega).expect("feasible");
            max_residual = max_residual.max(envelope_residual(phi, n_omega, env.values()));
        }
    }
    doc.push(numeric_entry(
        "envelope_feasibility",
        Json::obj([
            ("obstacles", Json::Int(obstacles.len() as i64)),
            ("budgets", Json::str("1,4")),
            ("nodes", Json::Int(nodes as i64)),
        ]),
        "max_residual",
        max_residual,
        0.0,
        1e-7,
    ));
    let budgets = [0.5, 1.0, 2.0, 4.0, 8.0];
    let envelopes: Vec<RadialProfile> = budgets
        .iter()
        .map(|&n| minimal_pair_envelope(&obstacles[1], n).expect("feasible"))
        .collect();
    let monotone_in_budget = envelopes.windows(2).all(|w| {
        w[0].values().iter().zip(w[1].values()).all(|(lo, hi)| *lo <= hi + 1e-9)
    });
    doc.push(check_entry(
        "envelope_monotone_budget",
        Json::obj([("budgets", Json::str("0.5,1,2,4,8")), ("nodes", Json::Int(nodes as i64))]),
        monotone_in_budget,
    ));

    // Closed-form least-negative intersection values on sampled curves.
    let samples: Vec<f64> = (0..360)
        .map(|k| (2.0 * core::f64::consts::PI * k as f64 / 360.0).sin())
        .collect();
    doc.push(numeric_entry(
        "least_negative_line_sin",
        Json::obj([("kind", Json::str("line")), ("samples", Json::Int(360))]),
        "value",
        least_negative_example(CurveKind::Line, &samples).expect("samples"),
        1.0,
        1e-4,
    ));
    let constant = vec![0.7; 16];
    doc.push(numeric_entry(
        "least_negative_exceptional_const",
        Json::obj([("kind", Json::str("exceptional")), ("samples", Json::Int(16))]),
        "value",
        least_negative_example(CurveKind::Exceptional, &constant).expect("samples"),
        -0.7,
        1e-12,
    ));

    // Singularity transport probes: finite-difference Hessian norms of the
    // pulled-back model potentials scale with the frozen log-log slopes.
    let deltas = lab::default_deltas();
    let probe_inputs = |axes: &'static str| {
        Json::obj([
            ("axes", Json::str(axes)),
            ("deltas", Json::Int(deltas.len() as i64)),
            ("delta_max", Json::Float(deltas[0])),
        ])
    };
    let quad = jstar_singularity_probe(&lab::model_quadratic, (0, 1), &deltas).expect("probe");
    doc.push(numeric_entry(
        "probe_paired_slope",
        probe_inputs("0,1"),
        "slope",
        quad.slope,
        -4.0,
        lc.tol_probe,
    ));
    let product = lab::model_product(0, 1);
    let prod = jstar_singularity_probe(&product, (0, 1), &deltas).expect("probe");
    doc.push(numeric_entry(
        "probe_product_slope",
        probe_inputs("0,1"),
        "slope",
        prod.slope,
        -6.0,
        lc.tol_probe,
    ));
    let single = lab::model_single(0);
    let sing = jstar_singularity_probe(&single, (0, 1), &deltas).expect("probe");
    doc.push(numeric_entry(
        "probe_single_slope",
        probe_inputs("0,1"),
        "slope",
        sing.slope,
        -4.0,
        lc.tol_probe,
    ));

    doc
}
