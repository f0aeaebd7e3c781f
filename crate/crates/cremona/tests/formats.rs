//! Text-format contracts: serialize/parse round-trips on randomized config
//! documents, exact error positions, CSV persistence of sampled potentials
//! (singular nodes included), and a non-builtin config driven end to end.

use cremona::config::{
    parse_config, serialize_config, ConfigDocument, LabConfig, MapConfig, VarietyConfig,
    JX_CONFIG,
};
use cremona::csvio::{read_grid, read_profile, write_grid, write_profile};
use cremona::lab::{log_abs_plane, GridFunction, RadialProfile};
use cremona_core::pseudo::{make_jx, LadderEntry};
use cremona_core::rat::{frac, int, Rat};
use cremona_core::ring::{CurveCycle, DivisorClass};

use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Randomized round-trip: serialize_config and parse_config are exact
// inverses on every well-formed document, not just the builtin one.
// ---------------------------------------------------------------------------

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,4}"
}

fn rat_s() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| frac(p, q))
}

fn class_s(n_points: usize) -> impl Strategy<Value = CurveCycle> {
    (rat_s(), prop::collection::vec(rat_s(), n_points))
        .prop_map(|(c, d)| CurveCycle::new(c, d))
}

fn matrix_s(rank: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec(rat_s(), rank), rank)
}

fn ladder_s(n_points: usize) -> impl Strategy<Value = Vec<LadderEntry>> {
    prop::collection::vec(
        (ident(), class_s(n_points), ident(), class_s(n_points)).prop_map(
            |(source_name, source_class, image_name, image_class)| LadderEntry {
                source_name,
                source_class,
                image_name,
                image_class,
            },
        ),
        0..3,
    )
}

fn map_s(n_points: usize) -> impl Strategy<Value = MapConfig> {
    let rank = n_points + 1;
    (
        ident(),
        matrix_s(rank),
        matrix_s(rank),
        prop::option::of(matrix_s(rank)),
        prop::option::of(matrix_s(rank)),
        ladder_s(n_points),
    )
        .prop_map(|(name, m11, m22, push11, push22, ladder)| MapConfig {
            name,
            m11,
            m22,
            push11,
            push22,
            ladder,
        })
}

fn lab_s() -> impl Strategy<Value = LabConfig> {
    (
        (32usize..=512, 32usize..=512, 1e-3..10.0f64, 1e-3..10.0f64),
        (1usize..=10, 1usize..=10),
        prop::collection::vec(1e-9..1.0f64, 5),
    )
        .prop_map(|((g1, g2, extent, radius), (n1, n2), tols)| LabConfig {
            grid_1d: g1,
            grid_2d: g2,
            extent,
            radius,
            eps_n_max: n1,
            eps_n_max_2d: n2,
            tol_mass_1d: tols[0],
            tol_mass_2d: tols[1],
            tol_lelong: tols[2],
            tol_envelope: tols[3],
            tol_probe: tols[4],
        })
}

fn document_s() -> impl Strategy<Value = ConfigDocument> {
    (1usize..=5).prop_flat_map(|n_points| {
        (
            prop::option::of(prop::collection::vec(ident(), n_points)),
            prop::collection::vec((ident(), class_s(n_points)), 0..3),
            prop::option::of(map_s(n_points)),
            lab_s(),
        )
            .prop_map(move |(labels, curves, map, lab)| ConfigDocument {
                variety: VarietyConfig { n_points, labels, curves },
                map,
                lab,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_document_round_trips_exactly(doc in document_s()) {
        let text = serialize_config(&doc);
        let back = parse_config(&text).expect("serialized documents parse");
        prop_assert_eq!(&back, &doc);
        // and the text itself is a fixed point
        prop_assert_eq!(serialize_config(&back), text);
    }
}

// ---------------------------------------------------------------------------
// Error positions are part of the format contract: line and column must
// point at the offending token, not just "somewhere in the file".
// ---------------------------------------------------------------------------

fn err_at(text: &str) -> (usize, usize, String) {
    let e = parse_config(text).expect_err("document must be rejected");
    (e.line, e.col, e.msg)
}

#[test]
fn config_errors_point_at_the_offending_token() {
    // wrong version: column of the value
    let (l, c, m) = err_at("format = 2\n");
    assert_eq!((l, c), (1, 10), "{m}");
    assert!(m.contains("unsupported format version"));

    // a section before the format line
    let (l, c, m) = err_at("[variety]\nn_points = 4\n");
    assert_eq!((l, c), (1, 1), "{m}");
    assert!(m.contains("format = 1"));

    // unknown section name
    let (l, c, m) = err_at("format = 1\n[frobnicate]\n");
    assert_eq!((l, c), (2, 1), "{m}");
    assert!(m.contains("unknown section [frobnicate]"));

    // duplicate section
    let (l, c, m) = err_at("format = 1\n[variety]\nn_points = 1\n[variety]\n");
    assert_eq!((l, c), (4, 1), "{m}");
    assert!(m.contains("duplicate section"));

    // duplicate scalar key: column of the key
    let (l, c, m) = err_at("format = 1\n[variety]\nn_points = 4\nn_points = 5\n");
    assert_eq!((l, c), (4, 1), "{m}");
    assert!(m.contains("duplicate key n_points"));

    // key with no value: column just past the `=`
    let (l, c, m) = err_at("format = 1\n[variety]\nn_points =\n");
    assert_eq!((l, c), (3, 11), "{m}");
    assert!(m.contains("has no value"));

    // key outside any section
    let (l, c, m) = err_at("format = 1\nn_points = 4\n");
    assert_eq!((l, c), (2, 1), "{m}");
    assert!(m.contains("before any section"));

    // unknown key inside a section
    let (l, c, m) = err_at("format = 1\n[variety]\nn_points = 2\nwidgets = 3\n");
    assert_eq!((l, c), (4, 1), "{m}");
    assert!(m.contains("unknown key widgets"));
}

#[test]
fn matrix_and_ladder_errors_point_at_the_offending_token() {
    // a non-rational matrix cell: the column of that cell
    let text = "format = 1\n\n[variety]\nn_points = 1\n\n[map]\nname = idmap\n\n[m11]\nrow = 1, 0\nrow = 0, x\n";
    let (l, c, m) = err_at(text);
    assert_eq!((l, c), (11, 10), "{m}");
    assert!(m.contains("bad matrix entry"));

    // wrong row arity: the row's line
    let text = "format = 1\n\n[variety]\nn_points = 1\n\n[map]\nname = idmap\n\n[m11]\nrow = 1, 0, 0\nrow = 0, 1\n";
    let (l, _, m) = err_at(text);
    assert_eq!(l, 10, "{m}");
    assert!(m.contains("expected n_points + 1 = 2"));

    // wrong row count: the section header's line
    let text = "format = 1\n\n[variety]\nn_points = 1\n\n[map]\nname = idmap\n\n[m11]\nrow = 1, 0\n";
    let (l, _, m) = err_at(text);
    assert_eq!(l, 9, "{m}");
    assert!(m.contains("has 1 rows"));

    // matrix section without a [map]
    let text = "format = 1\n\n[variety]\nn_points = 1\n\n[m11]\nrow = 1, 0\nrow = 0, 1\n";
    let (l, _, m) = err_at(text);
    assert_eq!(l, 6, "{m}");
    assert!(m.contains("requires a [map] section"));

    // ladder entry without an arrow: the column of the value
    let text = "format = 1\n\n[variety]\nn_points = 1\n\n[map]\nname = idmap\n\n[m11]\nrow = 1, 0\nrow = 0, 1\n\n[m22]\nrow = 1, 0\nrow = 0, 1\n\n[ladder]\nentry = C01 : 1;-1\n";
    let (l, c, m) = err_at(text);
    assert_eq!((l, c), (18, 9), "{m}");
    assert!(m.contains("->"), "{m}");

    // unparsable class after the colon: the column of the class text
    let text = "format = 1\n\n[variety]\nn_points = 4\ncurve = cx : banana\n";
    let (l, c, m) = err_at(text);
    assert_eq!((l, c), (5, 14), "{m}");
    assert!(m.contains("bad class"));

    // class arity mismatches surface on the line that declared the class
    let text = "format = 1\n\n[variety]\nn_points = 4\ncurve = cx : 2;1\n";
    let (l, _, m) = err_at(text);
    assert_eq!(l, 5, "{m}");
    assert!(m.contains("expected n_points = 4"));

    // labels arity
    let text = "format = 1\n\n[variety]\nn_points = 2\nlabels = a b c\n";
    let (l, _, m) = err_at(text);
    assert_eq!(l, 5, "{m}");
    assert!(m.contains("lists 3 names"));
}

#[test]
fn truncated_documents_report_what_is_missing() {
    let (l, c, m) = err_at("");
    assert_eq!((l, c), (1, 1), "{m}");
    assert!(m.contains("format = 1"));

    let (_, _, m) = err_at("format = 1\n");
    assert!(m.contains("missing [variety]"));

    let (_, _, m) = err_at("format = 1\n\n[variety]\nlabels = a\n");
    assert!(m.contains("missing n_points"));

    // a [map] section that never provides its matrices
    let (_, _, m) = err_at("format = 1\n\n[variety]\nn_points = 1\n\n[map]\nname = f\n");
    assert!(m.contains("requires an [m11] section"));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "format = 1   # version\n\n# a comment line\n[variety]\nn_points = 2  # two points\n";
    let doc = parse_config(text).unwrap();
    assert_eq!(doc.variety.n_points, 2);
    assert_eq!(doc.lab, LabConfig::default());
}

// ---------------------------------------------------------------------------
// A custom (non-builtin) config drives the full pipeline.
// ---------------------------------------------------------------------------

#[test]
fn custom_identity_map_config_builds_and_computes() {
    let text = "format = 1\n\n[variety]\nn_points = 2\nlabels = p q\n\n[map]\nname = ident\n\n[m11]\nrow = 1, 0, 0\nrow = 0, 1, 0\nrow = 0, 0, 1\n\n[m22]\nrow = 1, 0, 0\nrow = 0, 1, 0\nrow = 0, 0, 1\n";
    let doc = parse_config(text).unwrap();
    let f = doc.to_pseudo_iso().expect("identity map is a pseudo-isomorphism");
    assert_eq!(f.name, "ident");
    assert_eq!(f.source.labels, vec!["p".to_string(), "q".to_string()]);
    // identity pullback fixes every class
    let x: DivisorClass = "4;-1,-2".parse().unwrap();
    assert_eq!(cremona_core::pseudo::pullback11(&f, &x).unwrap(), x);
    // derived pushforwards of the identity are the identity
    assert_eq!(f.push11, f.m11);
    assert_eq!(f.push22, f.m22);
}

#[test]
fn builtin_text_and_builtin_map_agree() {
    let doc = parse_config(JX_CONFIG).unwrap();
    assert_eq!(doc.to_pseudo_iso().unwrap(), make_jx());
}

// ---------------------------------------------------------------------------
// CSV persistence.
// ---------------------------------------------------------------------------

#[test]
fn profiles_round_trip_bit_for_bit() {
    for (f, psh) in [
        ((|t: f64| 0.25 * t * t - 1.0) as fn(f64) -> f64, false),
        ((|t: f64| t) as fn(f64) -> f64, true),
    ] {
        let u = RadialProfile::sample(-5.0, 0.0, 33, f, psh).unwrap();
        let text = write_profile(&u);
        let v = read_profile(&text).unwrap();
        assert_eq!(v.t_min(), u.t_min());
        assert_eq!(v.t_max(), u.t_max());
        assert_eq!(v.psh(), u.psh());
        assert_eq!(v.values(), u.values(), "samples must round-trip exactly");
        assert_eq!(write_profile(&v), text, "serialization is a fixed point");
    }
}

fn singular_set(u: &GridFunction) -> Vec<(usize, usize)> {
    let mut s = u.singular.clone();
    s.sort_unstable();
    s.dedup();
    s
}

#[test]
fn grids_round_trip_with_singular_nodes_as_nan() {
    let res = 32usize;
    let values: Vec<f64> = (0..res * res)
        .map(|k| {
            let (i, j) = (k % res, k / res);
            (i as f64 - 3.7).hypot(j as f64 - 11.2).ln()
        })
        .collect();
    let u = GridFunction::new(1, 1.0, res, values, vec![(3, 4), (10, 20)]).unwrap();
    let text = write_grid(&u);
    let v = read_grid(&text).unwrap();
    assert_eq!(v.dims, u.dims);
    assert_eq!(v.extent, u.extent);
    assert_eq!(v.resolution, u.resolution);
    assert_eq!(singular_set(&v), singular_set(&u));
    let singular = singular_set(&u);
    for k in 0..res * res {
        if singular.contains(&(k % res, k / res)) {
            assert!(v.values[k].is_nan(), "declared-singular nodes store NaN");
        } else {
            assert_eq!(v.values[k], u.values[k], "node {k}");
        }
    }
    assert_eq!(write_grid(&v), text, "serialization is a fixed point");
}

#[test]
fn auto_detected_singular_nodes_survive_the_round_trip() {
    // the odd-resolution log grid marks its own origin node
    let u = log_abs_plane(1.0, 33).unwrap();
    let text = write_grid(&u);
    let v = read_grid(&text).unwrap();
    assert_eq!(singular_set(&v), singular_set(&u));
    assert!(!singular_set(&v).is_empty(), "origin node is singular");
}

#[test]
fn csv_errors_point_at_the_offending_cell() {
    // wrong kind: the column of the kind cell
    let u = RadialProfile::sample(-2.0, 0.0, 16, |t| t, true).unwrap();
    let e = read_grid(&write_profile(&u)).unwrap_err();
    assert_eq!((e.line, e.col), (1, 10), "{}", e.msg);
    assert!(e.msg.contains("expected kind=grid"));

    // wrong format version: the column of the format cell
    let e = read_profile("format=2,kind=radial_profile\n").unwrap_err();
    assert_eq!((e.line, e.col), (1, 1), "{}", e.msg);
    assert!(e.msg.contains("unsupported format version"));

    // NaN in a profile: the line of the NaN row
    let mut text = String::from(
        "format=1,kind=radial_profile,t_min=-2e0,t_max=0e0,nodes=16,psh=false\n",
    );
    for i in 0..16 {
        if i == 3 {
            text.push_str("3,NaN\n");
        } else {
            text.push_str(&format!("{i},{:.17e}\n", i as f64));
        }
    }
    let e = read_profile(&text).unwrap_err();
    assert_eq!(e.line, 5, "{}", e.msg);
    assert!(e.msg.contains("NaN"));

    // out-of-order node index: its line
    let text = "format=1,kind=radial_profile,t_min=-2e0,t_max=0e0,nodes=16,psh=false\n0,1e0\n2,1e0\n";
    let e = read_profile(text).unwrap_err();
    assert_eq!(e.line, 3, "{}", e.msg);
    assert!(e.msg.contains("out of order"));

    // missing rows: reported past the end
    let text = "format=1,kind=radial_profile,t_min=-2e0,t_max=0e0,nodes=16,psh=false\n0,1e0\n";
    let e = read_profile(text).unwrap_err();
    assert!(e.msg.contains("expected 16 data rows, found 1"), "{}", e.msg);

    // a value that is not a number: line and the value's column
    let text = "format=1,kind=radial_profile,t_min=-2e0,t_max=0e0,nodes=16,psh=false\n0,pear\n";
    let e = read_profile(text).unwrap_err();
    assert_eq!((e.line, e.col), (2, 3), "{}", e.msg);
    assert!(e.msg.contains("bad sample value"));

    // metadata that contradicts the data (t_min >= t_max)
    let text = "format=1,kind=radial_profile,t_min=0e0,t_max=0e0,nodes=16,psh=false\n".to_string()
        + &(0..16).map(|i| format!("{i},0e0\n")).collect::<String>();
    let e = read_profile(&text).unwrap_err();
    assert!(e.msg.contains("metadata does not describe the data"), "{}", e.msg);
}

#[test]
fn int_rationals_in_configs_parse_as_integers() {
    // `3` and `3/1` and `6/2` are the same rational
    let text = "format = 1\n\n[variety]\nn_points = 1\ncurve = c : 3/1;6/2\n";
    let doc = parse_config(text).unwrap();
    let (_, class) = &doc.variety.curves[0];
    assert_eq!(class.c, int(3));
    assert_eq!(class.d, vec![int(3)]);
}
