//! Command-line surface: argument grammar, dispatch, and output shaping.
//!
//! Exit codes: 0 on success, 2 on usage errors (unknown flags, malformed
//! invocations), 1 on computation-level failures (unreadable files, classes
//! that do not parse, infeasible lab problems, reports with failing entries).
//!
//! Class arguments are written `"a;b0,b1,..."` with exact fractions
//! (`"3;-2,-2,-2,-2"`, `"1/2;0,0,0,0"`). A token `@path` reads the class text
//! from a file; a token `xN` repeats the previous class N times in total, so
//! `triple --class "3;-2,-2,-2,-2" x3` cubes a class. `--map` selects the
//! built-in involution (`jx`) or a config file describing another map.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use cremona_core::pseudo::{
    btc_check, btc_classify, defect_cycle, make_jx, nic_check, nic_space, pullback11,
    pullback22, pushforward11, pushforward22, PseudoIsoData, Slot,
};
use cremona_core::rat::fmt_rat;
use cremona_core::ring::{cone_probe, pair, triple, wedge11, CurveCycle, DivisorClass};

use crate::config::parse_config;
use crate::csvio;
use crate::jsonfmt::Json;
use crate::lab::{
    self, ddc_mass, envelope_residual, jstar_singularity_probe, least_negative_example,
    lelong_estimate, lelong_estimate_at, max_regularize, minimal_pair_envelope,
    monotone_convergence_report, CurveKind, GridFunction, RadialProfile,
};
use crate::report::{run_report, ReportKind};

/// Exact intersection calculus for a blown-up projective 3-space, transport
/// along its lifted Cremona involution, and a desk-scale pluripotential lab.
#[derive(Debug, Parser)]
#[command(name = "cremona", version, max_term_width = 100)]
struct Cli {
    /// Built-in map name ("jx") or path to a map config file.
    #[arg(long, global = true, default_value = "jx", value_name = "MAP")]
    map: String,
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Show the intersection ring, or evaluate wedge / pairing products.
    Ring(RingArgs),
    /// Transport a divisor or curve class through the map.
    Pullback(PullbackArgs),
    /// Defect cycle between the pulled-back product and the product of
    /// pullbacks for a pair of divisor classes.
    Defect(TwoClassArgs),
    /// Test a class for zero pairing with every ladder curve, or print a
    /// basis of the subspace of such classes.
    Nic(OptionalClassArgs),
    /// Check a pair of classes for box-type compatibility (zero defect).
    BtcCheck(TwoClassArgs),
    /// Enumerate the maximal box-type-compatible components.
    BtcClassify,
    /// Triple intersection product of three divisor classes.
    Triple(ClassListArgs),
    /// Probe a divisor class for nonnegative pairing against the standard
    /// curve list.
    Cone(ConeArgs),
    /// Run a built-in reproduction report (exit 1 if any entry fails).
    Report(ReportArgs),
    /// Numerical lab: masses, Lelong numbers, envelopes, probes.
    Lab(LabArgs),
}

#[derive(Debug, Args)]
struct RingArgs {
    #[command(subcommand)]
    op: Option<RingOp>,
}

#[derive(Debug, Subcommand)]
enum RingOp {
    /// Print the basis, point labels, and curve table (default).
    Info,
    /// Cup product of two divisor classes; prints a curve class.
    Wedge {
        #[arg(value_name = "CLASS", allow_hyphen_values = true)]
        x: String,
        #[arg(value_name = "CLASS", allow_hyphen_values = true)]
        y: String,
    },
    /// Intersection pairing of a divisor class with a curve class.
    Pair {
        #[arg(value_name = "CLASS", allow_hyphen_values = true)]
        x: String,
        #[arg(value_name = "CURVE", allow_hyphen_values = true)]
        c: String,
    },
}

#[derive(Debug, Args)]
struct PullbackArgs {
    /// Class to transport ("a;b0,..." or @file).
    #[arg(value_name = "CLASS", allow_hyphen_values = true)]
    class: String,
    /// Interpret the class in the curve lattice ("c;d0,...").
    #[arg(long)]
    h22: bool,
    /// Apply the pushforward instead of the pullback.
    #[arg(long)]
    push: bool,
}

#[derive(Debug, Args)]
struct TwoClassArgs {
    /// First divisor class.
    #[arg(value_name = "CLASS", allow_hyphen_values = true)]
    a2: String,
    /// Second divisor class.
    #[arg(value_name = "CLASS", allow_hyphen_values = true)]
    a3: String,
}

#[derive(Debug, Args)]
struct OptionalClassArgs {
    /// Divisor class to test (flag form).
    #[arg(long, value_name = "CLASS", allow_hyphen_values = true)]
    class: Option<String>,
    /// Divisor class to test (positional form).
    #[arg(value_name = "CLASS", allow_hyphen_values = true)]
    positional: Option<String>,
}

#[derive(Debug, Args)]
struct ClassListArgs {
    /// Classes; "xN" repeats the previous class N times in total.
    #[arg(value_name = "CLASS")]
    positionals: Vec<String>,
    /// Flag form; may be repeated and mixed with positionals.
    #[arg(long = "class", value_name = "CLASS", allow_hyphen_values = true)]
    classes: Vec<String>,
}

#[derive(Debug, Args)]
struct ConeArgs {
    /// Divisor class to probe (flag form).
    #[arg(long, value_name = "CLASS", allow_hyphen_values = true)]
    class: Option<String>,
    /// Divisor class to probe (positional form).
    #[arg(value_name = "CLASS", allow_hyphen_values = true)]
    positional: Option<String>,
    /// Require strictly positive pairings.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Which report to run.
    #[arg(value_parser = ["theorem2", "lab"])]
    kind: String,
    /// Write the JSON document to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LabArgs {
    #[command(subcommand)]
    op: LabOp,
}

#[derive(Debug, Subcommand)]
enum LabOp {
    /// Stencil mass of dd^c of a potential over a centered ball.
    Mass(MassArgs),
    /// Mass sequence and extrapolated limit of the built-in decreasing
    /// smoothing family.
    Monotone(MonotoneArgs),
    /// Lelong-number estimate of a profile or grid potential.
    Lelong(LelongArgs),
    /// Least upper envelope for an obstacle profile under a positivity
    /// budget.
    Envelope(EnvelopeArgs),
    /// Log-log Hessian-norm slope of a model potential pulled back through
    /// the reciprocal chart.
    Probe(ProbeArgs),
    /// Closed-form least-negative intersection value on a sampled curve.
    LeastNegative(LeastNegativeArgs),
    /// Clip a profile from below at -n (pole regularization).
    MaxRegularize(MaxRegArgs),
}

#[derive(Debug, Args)]
struct MassArgs {
    /// Grid CSV file written by this tool.
    #[arg(long, value_name = "CSV", conflicts_with = "model")]
    input: Option<PathBuf>,
    /// Built-in model: "log", "smoothed-log", or "abs-squared".
    #[arg(long, value_name = "NAME")]
    model: Option<String>,
    /// Smoothing index for "smoothed-log" (epsilon = 2^-n).
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Complex dimension of the model (1 = plane grid, 2 = polyradial grid).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    dims: u8,
    /// Grid resolution (defaults: 256 in dimension 1, 128 in dimension 2).
    #[arg(long, value_name = "NODES")]
    resolution: Option<usize>,
    /// Grid half-width (dimension 1) or width (dimension 2).
    #[arg(long, default_value_t = 1.0)]
    extent: f64,
    /// Ball radius for the mass region.
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
}

#[derive(Debug, Args)]
struct MonotoneArgs {
    /// Complex dimension of the built-in family.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    dims: u8,
    /// Largest smoothing index (members n = 1..=n_max).
    #[arg(long, value_name = "N")]
    n_max: Option<u32>,
    #[arg(long, value_name = "NODES")]
    resolution: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    extent: f64,
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
}

#[derive(Debug, Args)]
struct LelongArgs {
    /// Profile or grid CSV file (kind detected from the header).
    #[arg(long, value_name = "CSV", conflicts_with = "model")]
    input: Option<PathBuf>,
    /// Built-in model "log" with the given coefficient.
    #[arg(long, value_name = "NAME")]
    model: Option<String>,
    /// Coefficient c for the model c log|z|.
    #[arg(long, default_value_t = 1.0)]
    coefficient: f64,
    /// Complex dimension of the model grid.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    dims: u8,
    #[arg(long, value_name = "NODES")]
    resolution: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    extent: f64,
    /// Probe point "x,y" for grid potentials.
    #[arg(long, default_value = "0,0", value_name = "X,Y")]
    at: String,
}

#[derive(Debug, Args)]
struct EnvelopeArgs {
    /// Obstacle profile CSV.
    #[arg(long, value_name = "CSV")]
    input: PathBuf,
    /// Positivity budget multiplier.
    #[arg(long, default_value_t = 1.0, value_name = "X")]
    n_omega: f64,
    /// Write the envelope profile CSV here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProbeArgs {
    /// Model potential: "quadratic", "product", or "single".
    #[arg(long, default_value = "quadratic", value_parser = ["quadratic", "product", "single"])]
    model: String,
    /// Coordinate axes "j,k" spanning the probe plane.
    #[arg(long, default_value = "0,1", value_name = "J,K")]
    axes: String,
}

#[derive(Debug, Args)]
struct LeastNegativeArgs {
    /// Curve type the closed form applies to.
    #[arg(long, value_parser = ["line", "exceptional"])]
    kind: String,
    /// Profile CSV whose node values are the curve samples.
    #[arg(long, value_name = "CSV")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct MaxRegArgs {
    /// Profile CSV to regularize.
    #[arg(long, value_name = "CSV")]
    input: PathBuf,
    /// Clipping level: values are floored at -n.
    #[arg(long, value_name = "N")]
    n: u32,
    /// Write the regularized profile CSV here (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// dispatch

#[derive(Debug)]
enum CliError {
    /// Malformed invocation; exits 2.
    Usage(String),
    /// Computation-level failure; exits 1.
    Failure(String),
}

impl CliError {
    fn failure(e: impl std::fmt::Display) -> CliError {
        CliError::Failure(e.to_string())
    }
}

/// Parses and runs an argument vector, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Ring(args) => cmd_ring(cli, args),
        Command::Pullback(args) => cmd_pullback(cli, args),
        Command::Defect(args) => cmd_defect(cli, args),
        Command::Nic(args) => cmd_nic(cli, args),
        Command::BtcCheck(args) => cmd_btc_check(cli, args),
        Command::BtcClassify => cmd_btc_classify(cli),
        Command::Triple(args) => cmd_triple(cli, args),
        Command::Cone(args) => cmd_cone(cli, args),
        Command::Report(args) => cmd_report(args),
        Command::Lab(args) => cmd_lab(cli, args),
    }
}

// ---------------------------------------------------------------------------
// shared input helpers

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn load_map(spec: &str) -> Result<PseudoIsoData, CliError> {
    if spec == "jx" {
        return Ok(make_jx());
    }
    let text = read_text(Path::new(spec))?;
    let doc = parse_config(&text)
        .map_err(|e| CliError::Failure(format!("{spec}: {e}")))?;
    doc.to_pseudo_iso().map_err(|e| CliError::Failure(format!("{spec}: {e}")))
}

/// Resolves one class token: `@path` reads the (trimmed) file contents.
fn resolve_token(token: &str) -> Result<String, CliError> {
    match token.strip_prefix('@') {
        Some(path) => Ok(read_text(Path::new(path))?.trim().to_string()),
        None => Ok(token.to_string()),
    }
}

/// Expands class tokens: flag-form classes first, then positionals, with
/// `xN` repeating the previous class to N copies in total.
fn expand_class_tokens(flags: &[String], positionals: &[String]) -> Result<Vec<String>, CliError> {
    let mut out: Vec<String> = Vec::new();
    for token in flags.iter().chain(positionals.iter()) {
        let repeat = token
            .strip_prefix('x')
            .and_then(|rest| rest.parse::<usize>().ok());
        match repeat {
            Some(0) => return Err(CliError::Usage("x0 repeats a class to zero copies".into())),
            Some(n) => {
                let last = out
                    .last()
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("{token} has no class to repeat")))?;
                for _ in 1..n {
                    out.push(last.clone());
                }
            }
            None => out.push(resolve_token(token)?),
        }
    }
    Ok(out)
}

fn parse_divisor(text: &str) -> Result<DivisorClass, CliError> {
    text.parse::<DivisorClass>().map_err(CliError::failure)
}

fn parse_curve(text: &str) -> Result<CurveCycle, CliError> {
    text.parse::<CurveCycle>().map_err(CliError::failure)
}

fn one_class(flag: &Option<String>, positional: &Option<String>) -> Result<String, CliError> {
    match (flag, positional) {
        (Some(_), Some(_)) => {
            Err(CliError::Usage("give the class either as --class or positionally, not both".into()))
        }
        (Some(c), None) | (None, Some(c)) => resolve_token(c),
        (None, None) => Err(CliError::Usage("a class argument is required".into())),
    }
}

fn emit(json_mode: bool, doc: Json, plain: &str) {
    if json_mode {
        print!("{}", doc.render());
    } else {
        println!("{plain}");
    }
}

fn float_text(x: f64) -> String {
    format!("{x:.11e}")
}

// ---------------------------------------------------------------------------
// exact-arithmetic subcommands

fn cmd_ring(cli: &Cli, args: &RingArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let v = &map.target;
    match args.op.as_ref().unwrap_or(&RingOp::Info) {
        RingOp::Info => {
            let curves = Json::arr(v.curve_table.iter().map(|(name, class)| {
                Json::obj([
                    ("name", Json::str(name.clone())),
                    ("class", Json::str(class.to_string())),
                ])
            }));
            let doc = Json::obj([
                ("op", Json::str("ring")),
                ("n_points", Json::Int(v.n_points as i64)),
                ("rank", Json::Int(v.rank() as i64)),
                ("labels", Json::arr(v.labels.iter().map(|l| Json::str(l.clone())))),
                ("divisor_format", Json::str("a;b0,b1,...")),
                ("curve_format", Json::str("c;d0,d1,...")),
                ("curves", curves),
            ]);
            let mut plain = format!(
                "blowup of P^3 at {} points; lattice rank {}\nlabels: {}\ncurve table:",
                v.n_points,
                v.rank(),
                v.labels.join(" ")
            );
            for (name, class) in &v.curve_table {
                plain.push_str(&format!("\n  {name} = {class}"));
            }
            emit(cli.json, doc, &plain);
        }
        RingOp::Wedge { x, y } => {
            let a = parse_divisor(&resolve_token(x)?)?;
            let b = parse_divisor(&resolve_token(y)?)?;
            let w = wedge11(v, &a, &b).map_err(CliError::failure)?;
            let doc = Json::obj([
                ("op", Json::str("wedge")),
                ("x", Json::str(a.to_string())),
                ("y", Json::str(b.to_string())),
                ("value", Json::str(w.to_string())),
            ]);
            emit(cli.json, doc, &w.to_string());
        }
        RingOp::Pair { x, c } => {
            let a = parse_divisor(&resolve_token(x)?)?;
            let curve = parse_curve(&resolve_token(c)?)?;
            let p = pair(v, &a, &curve).map_err(CliError::failure)?;
            let doc = Json::obj([
                ("op", Json::str("pair")),
                ("x", Json::str(a.to_string())),
                ("c", Json::str(curve.to_string())),
                ("value", Json::rat(&p)),
            ]);
            emit(cli.json, doc, &fmt_rat(&p));
        }
    }
    Ok(())
}

fn cmd_pullback(cli: &Cli, args: &PullbackArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let text = resolve_token(&args.class)?;
    let (input, output) = if args.h22 {
        let c = parse_curve(&text)?;
        let out = if args.push {
            pushforward22(&map, &c).map_err(CliError::failure)?
        } else {
            pullback22(&map, &c).map_err(CliError::failure)?
        };
        (c.to_string(), out.to_string())
    } else {
        let x = parse_divisor(&text)?;
        let out = if args.push {
            pushforward11(&map, &x).map_err(CliError::failure)?
        } else {
            pullback11(&map, &x).map_err(CliError::failure)?
        };
        (x.to_string(), out.to_string())
    };
    let doc = Json::obj([
        ("op", Json::str(if args.push { "pushforward" } else { "pullback" })),
        ("lattice", Json::str(if args.h22 { "h22" } else { "h11" })),
        ("class", Json::str(input)),
        ("value", Json::str(output.clone())),
    ]);
    emit(cli.json, doc, &output);
    Ok(())
}

fn cmd_defect(cli: &Cli, args: &TwoClassArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let a2 = parse_divisor(&resolve_token(&args.a2)?)?;
    let a3 = parse_divisor(&resolve_token(&args.a3)?)?;
    let defect = defect_cycle(&map, &a2, &a3).map_err(CliError::failure)?;
    let terms = Json::arr(defect.terms.iter().map(|(name, _, lambda)| {
        Json::obj([("curve", Json::str(name.clone())), ("coeff", Json::rat(lambda))])
    }));
    let doc = Json::obj([
        ("op", Json::str("defect")),
        ("a2", Json::str(a2.to_string())),
        ("a3", Json::str(a3.to_string())),
        ("zero", Json::Bool(defect.is_zero())),
        ("terms", terms),
    ]);
    let plain = if defect.is_zero() {
        "0".to_string()
    } else {
        defect
            .terms
            .iter()
            .map(|(name, _, lambda)| format!("{name}: {}", fmt_rat(lambda)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    emit(cli.json, doc, &plain);
    Ok(())
}

fn cmd_nic(cli: &Cli, args: &OptionalClassArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    if args.class.is_none() && args.positional.is_none() {
        let basis = nic_space(&map);
        let doc = Json::obj([
            ("op", Json::str("nic-space")),
            ("dim", Json::Int(basis.len() as i64)),
            ("basis", Json::arr(basis.iter().map(|g| Json::str(g.to_string())))),
        ]);
        let plain = if basis.is_empty() {
            "dim 0".to_string()
        } else {
            format!(
                "dim {}: {}",
                basis.len(),
                basis.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
            )
        };
        emit(cli.json, doc, &plain);
        return Ok(());
    }
    let class = parse_divisor(&one_class(&args.class, &args.positional)?)?;
    let ok = nic_check(&map, &class).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("nic")),
        ("class", Json::str(class.to_string())),
        ("value", Json::Bool(ok)),
    ]);
    emit(cli.json, doc, if ok { "true" } else { "false" });
    Ok(())
}

fn cmd_btc_check(cli: &Cli, args: &TwoClassArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let a2 = parse_divisor(&resolve_token(&args.a2)?)?;
    let a3 = parse_divisor(&resolve_token(&args.a3)?)?;
    let ok = btc_check(&map, &a2, &a3).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("btc-check")),
        ("a2", Json::str(a2.to_string())),
        ("a3", Json::str(a3.to_string())),
        ("value", Json::Bool(ok)),
    ]);
    emit(cli.json, doc, if ok { "true" } else { "false" });
    Ok(())
}

fn cmd_btc_classify(cli: &Cli) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let names: Vec<&str> = map.ladder.iter().map(|e| e.source_name.as_str()).collect();
    let components = btc_classify(&map);
    let split = |assignment: &[Slot], want: Slot| -> Vec<String> {
        assignment
            .iter()
            .zip(&names)
            .filter(|(slot, _)| **slot == want)
            .map(|(_, name)| name.to_string())
            .collect()
    };
    let mut plain = format!("{} maximal components", components.len());
    let rows = components
        .iter()
        .map(|c| {
            let ortho2 = split(&c.assignment, Slot::A2);
            let ortho3 = split(&c.assignment, Slot::A3);
            plain.push_str(&format!(
                "\n  dim {}: a2 orthogonal to {{{}}}, a3 orthogonal to {{{}}}",
                c.dimension,
                ortho2.join(","),
                ortho3.join(",")
            ));
            Json::obj([
                ("dimension", Json::Int(c.dimension as i64)),
                ("a2_orthogonal_to", Json::arr(ortho2.into_iter().map(Json::str))),
                ("a3_orthogonal_to", Json::arr(ortho3.into_iter().map(Json::str))),
                ("a2_dim", Json::Int(c.subspace2.len() as i64)),
                ("a3_dim", Json::Int(c.subspace3.len() as i64)),
            ])
        })
        .collect::<Vec<_>>();
    let doc = Json::obj([
        ("op", Json::str("btc-classify")),
        ("count", Json::Int(components.len() as i64)),
        ("components", Json::arr(rows)),
    ]);
    emit(cli.json, doc, &plain);
    Ok(())
}

fn cmd_triple(cli: &Cli, args: &ClassListArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let tokens = expand_class_tokens(&args.classes, &args.positionals)?;
    if tokens.len() != 3 {
        return Err(CliError::Usage(format!(
            "triple needs exactly 3 classes, got {}",
            tokens.len()
        )));
    }
    let classes = tokens
        .iter()
        .map(|t| parse_divisor(t))
        .collect::<Result<Vec<_>, _>>()?;
    let t = triple(&map.target, &classes[0], &classes[1], &classes[2])
        .map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("triple")),
        ("classes", Json::arr(classes.iter().map(|c| Json::str(c.to_string())))),
        ("value", Json::rat(&t)),
    ]);
    emit(cli.json, doc, &fmt_rat(&t));
    Ok(())
}

fn cmd_cone(cli: &Cli, args: &ConeArgs) -> Result<(), CliError> {
    let map = load_map(&cli.map)?;
    let class = parse_divisor(&one_class(&args.class, &args.positional)?)?;
    let curves = map.target.default_cone_curves();
    let ok = cone_probe(&map.target, &class, &curves, args.strict).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("cone")),
        ("class", Json::str(class.to_string())),
        ("curves", Json::Int(curves.len() as i64)),
        ("strict", Json::Bool(args.strict)),
        ("value", Json::Bool(ok)),
    ]);
    emit(cli.json, doc, if ok { "true" } else { "false" });
    Ok(())
}

fn cmd_report(args: &ReportArgs) -> Result<(), CliError> {
    let kind = ReportKind::from_name(&args.kind)
        .ok_or_else(|| CliError::Usage(format!("unknown report kind {:?}", args.kind)))?;
    let doc = run_report(kind);
    let text = doc.render();
    match &args.out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    if doc.passed() {
        Ok(())
    } else {
        let failures = doc.failures();
        Err(CliError::Failure(format!(
            "{} of {} report entries failed: {}",
            failures.len(),
            doc.entries.len(),
            failures.join(", ")
        )))
    }
}

// ---------------------------------------------------------------------------
// lab subcommands

enum Potential {
    Profile(RadialProfile),
    Grid(GridFunction),
}

fn load_potential(path: &Path) -> Result<Potential, CliError> {
    let text = read_text(path)?;
    if text.starts_with("format=1,kind=radial_profile,") {
        Ok(Potential::Profile(csvio::read_profile(&text).map_err(CliError::failure)?))
    } else if text.starts_with("format=1,kind=grid,") {
        Ok(Potential::Grid(csvio::read_grid(&text).map_err(CliError::failure)?))
    } else {
        Err(CliError::Failure(format!(
            "{}: not a profile or grid CSV written by this tool",
            path.display()
        )))
    }
}

fn load_profile(path: &Path) -> Result<RadialProfile, CliError> {
    match load_potential(path)? {
        Potential::Profile(p) => Ok(p),
        Potential::Grid(_) => Err(CliError::Failure(format!(
            "{}: expected a radial profile CSV, found a grid",
            path.display()
        ))),
    }
}

fn cmd_lab(cli: &Cli, args: &LabArgs) -> Result<(), CliError> {
    match &args.op {
        LabOp::Mass(a) => lab_mass(cli, a),
        LabOp::Monotone(a) => lab_monotone(cli, a),
        LabOp::Lelong(a) => lab_lelong(cli, a),
        LabOp::Envelope(a) => lab_envelope(cli, a),
        LabOp::Probe(a) => lab_probe(cli, a),
        LabOp::LeastNegative(a) => lab_least_negative(cli, a),
        LabOp::MaxRegularize(a) => lab_max_regularize(cli, a),
    }
}

fn default_resolution(dims: u8, requested: Option<usize>) -> usize {
    requested.unwrap_or(if dims == 1 { 256 } else { 128 })
}

fn build_model(
    name: &str,
    dims: u8,
    resolution: usize,
    extent: f64,
    n: u32,
    coefficient: f64,
) -> Result<GridFunction, CliError> {
    let model = match (name, dims) {
        ("log", 1) => GridFunction::sample_plane(extent, resolution, |x, y| {
            coefficient * 0.5 * (x * x + y * y).ln()
        }),
        ("log", _) => GridFunction::sample_polyradial(extent, resolution, |r1, r2| {
            coefficient * 0.5 * (r1 * r1 + r2 * r2).ln()
        }),
        ("smoothed-log", 1) => lab::smoothed_log_plane(extent, resolution, lab::epsilon(n)),
        ("smoothed-log", _) => lab::smoothed_log_polyradial(extent, resolution, lab::epsilon(n)),
        ("abs-squared", 1) => {
            GridFunction::sample_plane(extent, resolution, |x, y| x * x + y * y)
        }
        ("abs-squared", _) => lab::abs_squared_polyradial(extent, resolution),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown model {name:?}; expected log, smoothed-log, or abs-squared"
            )))
        }
    };
    model.map_err(CliError::failure)
}

fn lab_mass(cli: &Cli, args: &MassArgs) -> Result<(), CliError> {
    let grid = match (&args.input, &args.model) {
        (Some(path), _) => match load_potential(path)? {
            Potential::Grid(g) => g,
            Potential::Profile(_) => {
                return Err(CliError::Failure(format!(
                    "{}: mass needs a grid CSV, found a radial profile",
                    path.display()
                )))
            }
        },
        (None, Some(name)) => {
            let resolution = default_resolution(args.dims, args.resolution);
            build_model(name, args.dims, resolution, args.extent, args.n, 1.0)?
        }
        (None, None) => {
            return Err(CliError::Usage("give either --input or --model".into()));
        }
    };
    let mass = ddc_mass(&grid, args.radius).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("lab-mass")),
        ("dims", Json::Int(grid.dims as i64)),
        ("resolution", Json::Int(grid.resolution as i64)),
        ("radius", Json::Float(args.radius)),
        ("mass", Json::Float(mass)),
    ]);
    emit(cli.json, doc, &float_text(mass));
    Ok(())
}

fn lab_monotone(cli: &Cli, args: &MonotoneArgs) -> Result<(), CliError> {
    let resolution = default_resolution(args.dims, args.resolution);
    let n_max = args.n_max.unwrap_or(if args.dims == 1 { 8 } else { 6 });
    let family = if args.dims == 1 {
        lab::eps_family_plane(args.extent, resolution, n_max)
    } else {
        lab::eps_family_polyradial(args.extent, resolution, n_max)
    }
    .map_err(CliError::failure)?;
    let report = monotone_convergence_report(&family, args.radius).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("lab-monotone")),
        ("dims", Json::Int(args.dims as i64)),
        ("resolution", Json::Int(resolution as i64)),
        ("radius", Json::Float(args.radius)),
        ("masses", Json::arr(report.masses.iter().map(|&m| Json::Float(m)))),
        ("limit", Json::Float(report.limit)),
    ]);
    let mut plain = String::new();
    for (k, m) in report.masses.iter().enumerate() {
        plain.push_str(&format!("n={} mass={}\n", k + 1, float_text(*m)));
    }
    plain.push_str(&format!("limit={}", float_text(report.limit)));
    emit(cli.json, doc, &plain);
    Ok(())
}

fn parse_point(text: &str) -> Result<(f64, f64), CliError> {
    let mut parts = text.split(',');
    let bad = || CliError::Usage(format!("--at expects \"x,y\", got {text:?}"));
    let x = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    let y = parts.next().ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((x, y))
}

fn lab_lelong(cli: &Cli, args: &LelongArgs) -> Result<(), CliError> {
    let at = parse_point(&args.at)?;
    let (estimate, source) = match (&args.input, &args.model) {
        (Some(path), _) => match load_potential(path)? {
            Potential::Profile(p) => (lelong_estimate(&p), "profile".to_string()),
            Potential::Grid(g) => {
                (lelong_estimate_at(&g, at).map_err(CliError::failure)?, "grid".to_string())
            }
        },
        (None, Some(name)) => {
            if name != "log" {
                return Err(CliError::Usage(format!(
                    "unknown model {name:?}; lelong supports the \"log\" model"
                )));
            }
            let resolution = default_resolution(args.dims, args.resolution);
            let grid = build_model(name, args.dims, resolution, args.extent, 0, args.coefficient)?;
            (lelong_estimate_at(&grid, at).map_err(CliError::failure)?, "model".to_string())
        }
        (None, None) => {
            return Err(CliError::Usage("give either --input or --model".into()));
        }
    };
    let doc = Json::obj([
        ("op", Json::str("lab-lelong")),
        ("source", Json::str(source)),
        ("at", Json::str(args.at.clone())),
        ("estimate", Json::Float(estimate)),
    ]);
    emit(cli.json, doc, &float_text(estimate));
    Ok(())
}

fn lab_envelope(cli: &Cli, args: &EnvelopeArgs) -> Result<(), CliError> {
    let phi = load_profile(&args.input)?;
    let envelope = minimal_pair_envelope(&phi, args.n_omega).map_err(CliError::failure)?;
    let residual = envelope_residual(&phi, args.n_omega, envelope.values());
    let min = envelope.values().iter().cloned().fold(f64::INFINITY, f64::min);
    if let Some(path) = &args.out {
        write_text(path, &csvio::write_profile(&envelope))?;
    }
    let values = if args.out.is_some() {
        Json::Null
    } else {
        Json::arr(envelope.values().iter().map(|&v| Json::Float(v)))
    };
    let doc = Json::obj([
        ("op", Json::str("lab-envelope")),
        ("nodes", Json::Int(envelope.len() as i64)),
        ("n_omega", Json::Float(args.n_omega)),
        ("min", Json::Float(min)),
        ("residual", Json::Float(residual)),
        ("values", values),
    ]);
    let plain = format!(
        "nodes={} n_omega={} min={} residual={}{}",
        envelope.len(),
        args.n_omega,
        float_text(min),
        float_text(residual),
        args.out
            .as_ref()
            .map(|p| format!(" out={}", p.display()))
            .unwrap_or_default()
    );
    emit(cli.json, doc, &plain);
    Ok(())
}

fn parse_axes(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--axes expects two distinct indices below 3 as \"j,k\", got {text:?}"
        ))
    };
    let mut parts = text.split(',');
    let j = parts.next().ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())?;
    let k = parts.next().ok_or_else(bad)?.trim().parse::<usize>().map_err(|_| bad())?;
    if parts.next().is_some() || j == k || j > 2 || k > 2 {
        return Err(bad());
    }
    Ok((j, k))
}

fn lab_probe(cli: &Cli, args: &ProbeArgs) -> Result<(), CliError> {
    let axes = parse_axes(&args.axes)?;
    let deltas = lab::default_deltas();
    let result = match args.model.as_str() {
        "quadratic" => jstar_singularity_probe(&lab::model_quadratic, axes, &deltas),
        "product" => {
            let u = lab::model_product(axes.0, axes.1);
            jstar_singularity_probe(&u, axes, &deltas)
        }
        _ => {
            let u = lab::model_single(axes.0);
            jstar_singularity_probe(&u, axes, &deltas)
        }
    }
    .map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("lab-probe")),
        ("model", Json::str(args.model.clone())),
        ("axes", Json::str(args.axes.clone())),
        ("deltas", Json::arr(result.deltas.iter().map(|&d| Json::Float(d)))),
        ("hessian_norms", Json::arr(result.hessian_norms.iter().map(|&h| Json::Float(h)))),
        ("slope", Json::Float(result.slope)),
    ]);
    emit(cli.json, doc, &float_text(result.slope));
    Ok(())
}

fn lab_least_negative(cli: &Cli, args: &LeastNegativeArgs) -> Result<(), CliError> {
    let profile = load_profile(&args.input)?;
    let kind = if args.kind == "line" { CurveKind::Line } else { CurveKind::Exceptional };
    let value = least_negative_example(kind, profile.values()).map_err(CliError::failure)?;
    let doc = Json::obj([
        ("op", Json::str("lab-least-negative")),
        ("kind", Json::str(args.kind.clone())),
        ("samples", Json::Int(profile.len() as i64)),
        ("value", Json::Float(value)),
    ]);
    emit(cli.json, doc, &float_text(value));
    Ok(())
}

fn lab_max_regularize(cli: &Cli, args: &MaxRegArgs) -> Result<(), CliError> {
    let profile = load_profile(&args.input)?;
    let regularized = max_regularize(&profile, args.n);
    let text = csvio::write_profile(&regularized);
    match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            let doc = Json::obj([
                ("op", Json::str("lab-max-regularize")),
                ("n", Json::Int(args.n as i64)),
                ("nodes", Json::Int(regularized.len() as i64)),
                ("out", Json::str(path.display().to_string())),
            ]);
            emit(cli.json, doc, &format!("nodes={} out={}", regularized.len(), path.display()));
        }
        None => {
            // The CSV itself is the output; --json has nothing to add here.
            print!("{text}");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_token_expansion_repeats_the_previous_class() {
        let toks =
            expand_class_tokens(&["3;-2,-2,-2,-2".into()], &["x3".into()]).unwrap();
        assert_eq!(toks.len(), 3);
        assert!(toks.iter().all(|t| t == "3;-2,-2,-2,-2"));
        let mixed =
            expand_class_tokens(&[], &["1;0,0,0,0".into(), "x2".into(), "2;-1,-1,-1,-1".into()])
                .unwrap();
        assert_eq!(mixed, vec!["1;0,0,0,0", "1;0,0,0,0", "2;-1,-1,-1,-1"]);
    }

    #[test]
    fn leading_repeat_token_is_a_usage_error() {
        assert!(matches!(
            expand_class_tokens(&[], &["x3".into()]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            expand_class_tokens(&["1;0,0,0,0".into()], &["x0".into()]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn axes_and_point_parsers_reject_malformed_text() {
        assert!(parse_axes("0,1").is_ok());
        assert!(parse_axes("1,1").is_err());
        assert!(parse_axes("0,3").is_err());
        assert!(parse_axes("0").is_err());
        assert!(parse_point("0.25,-0.5").is_ok());
        assert!(parse_point("0.25").is_err());
        assert!(parse_point("a,b").is_err());
    }

    #[test]
    fn cli_grammar_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
