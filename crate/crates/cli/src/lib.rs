//! Command-line front end.
//!
//! One command per process; reports are JSON documents with a fixed envelope
//! {tool_version, scope, command, inputs, results, residuals, certificates}
//! and byte-identical output on identical inputs. Exit code 0 means the
//! computation ran (negative mathematical answers included), 1 is an
//! input/validation error, 2 is an internal invariant violation.

pub mod formats;

use formats::{emit_structure, parse_form, parse_structure, parse_vector_form, FormatError};
use pcontact_core::catalog::{self, ParamValue};
use pcontact_core::cohomology;
use pcontact_core::contact;
use pcontact_core::deformations::{self, DeformError, Residual};
use pcontact_core::exterior::{render_form, render_vector_form};
use pcontact_core::invariant::{validate, InvariantForm, InvariantVectorForm, LieCS};
use pcontact_core::linalg::Matrix;
use pcontact_core::polyforms;
use pcontact_core::scalars::Gq;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const SCOPE: &str = "invariant-level";

#[derive(Serialize)]
struct Report {
    tool_version: &'static str,
    scope: &'static str,
    command: String,
    inputs: Value,
    results: Value,
    residuals: Value,
    certificates: Value,
}

/// Input error (exit 1) or internal invariant violation (exit 2).
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.0)
    }
}

impl From<catalog::CatalogError> for CliError {
    fn from(e: catalog::CatalogError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<contact::ContactError> for CliError {
    fn from(e: contact::ContactError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Entry point: returns (exit code, stdout bytes).
pub fn run(argv: &[String]) -> (i32, String) {
    match dispatch(argv) {
        Ok(stdout) => (0, stdout),
        Err(CliError::Input(msg)) => (1, error_json("input", &msg)),
        Err(CliError::Internal(msg)) => (2, error_json("internal", &msg)),
    }
}

fn error_json(kind: &str, msg: &str) -> String {
    let doc = json!({
        "tool_version": TOOL_VERSION,
        "error": { "kind": kind, "message": msg },
    });
    let mut s = serde_json::to_string_pretty(&doc).unwrap();
    s.push('\n');
    s
}

struct Args {
    positional: Vec<String>,
    flags: Vec<(String, Option<String>)>,
}

const VALUE_FLAGS: &[&str] = &[
    "catalog", "param", "form", "no-contact", "p", "gamma", "frolicher", "class",
    "theta", "seed", "trials", "nmax", "degmax", "suite", "output", "emit",
];
const BOOL_FLAGS: &[&str] = &[
    "exists", "sweep", "dolbeault", "tangent", "derham", "page1", "space", "order2", "bridge",
    "mutated", "list",
];

impl Args {
    fn parse(argv: &[String]) -> Result<Args, CliError> {
        let mut positional = Vec::new();
        let mut flags = Vec::new();
        let mut it = argv.iter().peekable();
        while let Some(a) = it.next() {
            if let Some(name) = a.strip_prefix("--") {
                if BOOL_FLAGS.contains(&name) {
                    flags.push((name.to_string(), None));
                } else if name == "z2" {
                    // takes the bidegree as two values: --z2 P Q
                    let pv = it
                        .next()
                        .ok_or_else(|| CliError::Input("--z2 needs P and Q".into()))?;
                    let qv = it
                        .next()
                        .ok_or_else(|| CliError::Input("--z2 needs P and Q".into()))?;
                    flags.push((name.to_string(), Some(format!("{pv},{qv}"))));
                } else if VALUE_FLAGS.contains(&name) {
                    let v = it
                        .next()
                        .ok_or_else(|| CliError::Input(format!("--{name} needs a value")))?;
                    flags.push((name.to_string(), Some(v.clone())));
                } else {
                    return Err(CliError::Input(format!("unknown flag --{name}")));
                }
            } else if let Some(name) = a.strip_prefix('-') {
                // short flags used by the grammar: -p
                if VALUE_FLAGS.contains(&name) {
                    let v = it
                        .next()
                        .ok_or_else(|| CliError::Input(format!("-{name} needs a value")))?;
                    flags.push((name.to_string(), Some(v.clone())));
                } else {
                    return Err(CliError::Input(format!("unknown flag -{name}")));
                }
            } else {
                positional.push(a.clone());
            }
        }
        Ok(Args { positional, flags })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.flags.iter().find(|(n, _)| n == name).and_then(|(_, v)| v.as_deref())
    }

    fn has(&self, name: &str) -> bool {
        self.flags.iter().any(|(n, _)| n == name)
    }

    fn get_all(&self, name: &str) -> Vec<&str> {
        self.flags.iter().filter(|(n, _)| n == name).filter_map(|(_, v)| v.as_deref()).collect()
    }
}

fn parse_param(kv: &str) -> Result<(String, ParamValue), CliError> {
    let (k, v) = kv.split_once('=').ok_or_else(|| {
        CliError::Input(format!("parameter {kv:?} is not of the form name=value"))
    })?;
    let value = match Gq::parse_text(v) {
        Ok(s) => ParamValue::Scalar(s),
        Err(_) => ParamValue::Text(v.to_string()),
    };
    Ok((k.to_string(), value))
}

/// Where the structure equations came from, for the report.
struct LoadedInput {
    lie: LieCS,
    descriptor: Value,
    catalog: Option<(String, Vec<(String, ParamValue)>)>,
}

/// Load the structure input: a positional file or `--catalog ID [--param k=v]`.
/// `gate` enforces the validation invariant of the file format.
fn load_input(args: &Args, gate: bool) -> Result<LoadedInput, CliError> {
    if let Some(id) = args.get("catalog") {
        let params: Vec<(String, ParamValue)> =
            args.get_all("param").iter().map(|kv| parse_param(kv)).collect::<Result<_, _>>()?;
        let lie = catalog::catalog_get(id, &params)?;
        let pjson: Map<String, Value> =
            params.iter().map(|(k, v)| (k.clone(), Value::String(v.render()))).collect();
        let descriptor = json!({ "catalog": id, "params": pjson });
        return Ok(LoadedInput { lie, descriptor, catalog: Some((id.to_string(), params)) });
    }
    let file = args
        .positional
        .get(1)
        .ok_or_else(|| CliError::Input("missing input: FILE or --catalog ID".into()))?;
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {file:?}: {e}")))?;
    let lie = parse_structure(&text)?;
    if gate {
        let rep = validate(&lie);
        if !rep.ok() {
            return Err(CliError::Input(validation_diagnostic(&lie, &rep)));
        }
    }
    Ok(LoadedInput { lie, descriptor: json!({ "file": file }), catalog: None })
}

fn validation_diagnostic(lie: &LieCS, rep: &pcontact_core::invariant::ValidationReport) -> String {
    if let Some((k, res)) = rep.jacobi_failures.first() {
        return format!(
            "validation failed: d^2 phi{k} = {} != 0",
            render_form(res, "phi", Some(&lie.names))
        );
    }
    if let Some((k, part)) = rep.integrability_failures.first() {
        return format!(
            "validation failed: dphi{k} has (0,2) term {}",
            render_form(part, "phi", Some(&lie.names))
        );
    }
    "validation failed".to_string()
}

fn sform(f: &InvariantForm) -> Value {
    Value::String(render_form(f, "phi", None))
}

fn svform(v: &InvariantVectorForm) -> Value {
    Value::String(render_vector_form(v, "phi"))
}

fn smatrix(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| Value::Array((0..m.cols).map(|j| Value::String(m[(i, j)].to_text())).collect()))
        .collect();
    Value::Array(rows)
}

fn sbasis(b: &contact::SubspaceBasis) -> Value {
    json!({
        "ambient": b.ambient,
        "basis": b.basis.iter().map(|v| {
            Value::Array(v.iter().map(|c| Value::String(c.to_text())).collect())
        }).collect::<Vec<_>>(),
    })
}

fn dispatch(argv: &[String]) -> Result<String, CliError> {
    let sub = argv.first().ok_or_else(|| {
        CliError::Input(
            "usage: pcontact <check|contact|sheaves|cohomology|deform|verify|catalog> ...".into(),
        )
    })?;
    let args = Args::parse(argv)?;
    let report = match sub.as_str() {
        "check" => cmd_check(&args)?,
        "contact" => cmd_contact(&args)?,
        "sheaves" => cmd_sheaves(&args)?,
        "cohomology" => cmd_cohomology(&args)?,
        "deform" => cmd_deform(&args)?,
        "verify" => cmd_verify(&args)?,
        "catalog" => return cmd_catalog(&args),
        other => return Err(CliError::Input(format!("unknown subcommand {other:?}"))),
    };
    finish(&args, &report)
}

fn finish(args: &Args, report: &Report) -> Result<String, CliError> {
    let text_mode = args.get("output") == Some("text");
    let mut out = if text_mode {
        render_text(report)
    } else {
        serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))?
    };
    out.push('\n');
    Ok(out)
}

fn render_text(report: &Report) -> String {
    let mut lines =
        vec![format!("command: {}", report.command), format!("scope: {}", report.scope)];
    fn render_leaf(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    fn walk(prefix: &str, v: &Value, lines: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, val, lines);
                }
            }
            Value::Array(items) => {
                if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))) {
                    let rendered: Vec<String> = items.iter().map(render_leaf).collect();
                    lines.push(format!("{prefix}: [{}]", rendered.join(", ")));
                } else {
                    for (i, item) in items.iter().enumerate() {
                        walk(&format!("{prefix}[{i}]"), item, lines);
                    }
                }
            }
            leaf => lines.push(format!("{prefix}: {}", render_leaf(leaf))),
        }
    }
    walk("results", &report.results, &mut lines);
    walk("residuals", &report.residuals, &mut lines);
    walk("certificates", &report.certificates, &mut lines);
    lines.join("\n")
}

fn empty_report(command: &str, inputs: Value) -> Report {
    Report {
        tool_version: TOOL_VERSION,
        scope: SCOPE,
        command: command.to_string(),
        inputs,
        results: Value::Object(Map::new()),
        residuals: Value::Object(Map::new()),
        certificates: Value::Object(Map::new()),
    }
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(args: &Args) -> Result<Report, CliError> {
    // `check` reports failures instead of gating on them
    let input = load_input(args, false)?;
    let rep = validate(&input.lie);
    let mut report = empty_report("check", input.descriptor);
    report.results = json!({
        "jacobi_ok": rep.jacobi_ok,
        "jacobi_failures": rep.jacobi_failures.iter().map(|(k, f)| json!({
            "k": k, "d2_phi": sform(f),
        })).collect::<Vec<_>>(),
        "integrable": rep.integrable,
        "integrability_failures": rep.integrability_failures.iter().map(|(k, f)| json!({
            "k": k, "part_02": sform(f),
        })).collect::<Vec<_>>(),
        "complex_parallelisable": rep.complex_parallelisable,
        "nilpotent": rep.nilpotent,
        "solvable": rep.solvable,
        "lower_central_series_dims": rep.lower_central_series_dims,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// contact
// ---------------------------------------------------------------------------

fn cmd_contact(args: &Args) -> Result<Report, CliError> {
    if args.has("sweep") {
        return cmd_contact_sweep(args);
    }
    let input = load_input(args, true)?;
    let lie = &input.lie;
    let mut report = empty_report("contact", input.descriptor.clone());
    if let Some(expr) = args.get("form") {
        let gamma = resolve_gamma(lie, expr, &input)?;
        let r = contact::is_p_contact(lie, &gamma)?;
        report.inputs = json!({ "structure": input.descriptor, "gamma": sform(&gamma) });
        report.results = json!({
            "holds": r.holds,
            "top_coefficient": r.top_coefficient.to_text(),
            "failed_condition": r.failed_condition,
        });
    } else if let Some(expr) = args.get("no-contact") {
        let gamma = resolve_gamma(lie, expr, &input)?;
        let r = contact::is_p_no_contact(lie, &gamma)?;
        report.inputs = json!({ "structure": input.descriptor, "gamma": sform(&gamma) });
        report.results = json!({
            "holds": r.holds,
            "zeta": r.zeta.as_ref().map(sform),
            "failed_condition": r.failed_condition,
        });
    } else if args.has("exists") {
        let p: usize = args
            .get("p")
            .ok_or_else(|| CliError::Input("--exists needs -p P".into()))?
            .parse()
            .map_err(|_| CliError::Input("-p expects an integer".into()))?;
        let r = contact::contact_exists(lie, p)?;
        report.results = json!({
            "exists": r.exists,
            "witness": r.witness.as_ref().map(sform),
            "closed_basis": r.closed_basis.iter().map(sform).collect::<Vec<_>>(),
        });
        report.certificates = json!({ "polarization": smatrix(&r.polarization) });
    } else {
        return Err(CliError::Input(
            "contact needs one of --form EXPR, --no-contact EXPR, --exists -p P".into(),
        ));
    }
    Ok(report)
}

fn cmd_contact_sweep(args: &Args) -> Result<Report, CliError> {
    let id = args
        .get("catalog")
        .ok_or_else(|| CliError::Input("--sweep needs --catalog ID".into()))?;
    if !args.has("exists") {
        return Err(CliError::Input("--sweep supports --exists only".into()));
    }
    let p: usize = args
        .get("p")
        .ok_or_else(|| CliError::Input("--exists needs -p P".into()))?
        .parse()
        .map_err(|_| CliError::Input("-p expects an integer".into()))?;
    let grid = catalog::test_grid(id);
    // worker pool; results collected in parameter-tuple order
    let computed: Vec<Result<Value, String>> = grid
        .par_iter()
        .map(|params| {
            let lie = catalog::catalog_get(id, params).map_err(|e| e.to_string())?;
            let r = contact::contact_exists(&lie, p).map_err(|e| e.to_string())?;
            let pjson: Map<String, Value> =
                params.iter().map(|(k, v)| (k.clone(), Value::String(v.render()))).collect();
            Ok(json!({
                "params": pjson,
                "exists": r.exists,
                "witness": r.witness.as_ref().map(sform),
            }))
        })
        .collect();
    let mut points = Vec::new();
    for c in computed {
        points.push(c.map_err(CliError::Input)?);
    }
    let mut report = empty_report("contact --sweep", json!({ "catalog": id, "p": p }));
    report.results = json!({ "points": points });
    Ok(report)
}

fn resolve_gamma(lie: &LieCS, expr: &str, input: &LoadedInput) -> Result<InvariantForm, CliError> {
    if expr == "witness" {
        if let Some((id, params)) = &input.catalog {
            let w = catalog::contact_witness(id, params)?;
            return w.map(|(_, g)| g).ok_or_else(|| {
                CliError::Input(format!("catalog entry {id} has no contact witness"))
            });
        }
        return Err(CliError::Input("--gamma witness needs --catalog input".into()));
    }
    Ok(parse_form(lie.n, expr)?)
}

// ---------------------------------------------------------------------------
// sheaves
// ---------------------------------------------------------------------------

fn cmd_sheaves(args: &Args) -> Result<Report, CliError> {
    let input = load_input(args, true)?;
    let lie = &input.lie;
    let gamma_expr =
        args.get("gamma").ok_or_else(|| CliError::Input("sheaves needs --gamma EXPR".into()))?;
    let gamma = resolve_gamma(lie, gamma_expr, &input)?;
    let (f, g) = contact::kernels(lie, &gamma);
    let fol = contact::foliation_check(lie, &gamma);
    let mut report =
        empty_report("sheaves", json!({ "structure": input.descriptor, "gamma": sform(&gamma) }));
    report.results = json!({
        "F": sbasis(&f),
        "G": sbasis(&g),
        "foliation": {
            "closed_under_bracket": fol.closed_under_bracket,
            "violating_pair": fol.violating_pair.as_ref().map(|(i, j, w)| json!({
                "i": i, "j": j, "bracket_contraction": sform(w),
            })),
        },
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

fn cmd_cohomology(args: &Args) -> Result<Report, CliError> {
    let input = load_input(args, true)?;
    let lie = &input.lie;
    let mut report = empty_report("cohomology", input.descriptor.clone());
    if args.has("dolbeault") {
        let rep = cohomology::dolbeault(lie);
        let mut results = Map::new();
        results.insert("h".into(), json!(rep.h));
        results.insert("b".into(), json!(rep.betti));
        results.insert("euler".into(), json!(rep.euler));
        if let Some(reps) = &rep.representatives {
            let rendered: Vec<Vec<Vec<Value>>> = reps
                .iter()
                .map(|row| row.iter().map(|cell| cell.iter().map(sform).collect()).collect())
                .collect();
            results.insert("representatives".into(), json!(rendered));
        }
        if args.has("tangent") {
            let t = cohomology::dolbeault_tangent(lie);
            results.insert("h_tangent".into(), json!(t.hq));
            let rendered: Vec<Vec<Value>> =
                t.representatives.iter().map(|row| row.iter().map(svform).collect()).collect();
            results.insert("tangent_representatives".into(), json!(rendered));
        }
        report.results = Value::Object(results);
    } else if args.has("derham") {
        let rep = cohomology::derham(lie);
        report.results = json!({ "b": rep.betti, "euler": rep.euler });
    } else if let Some(rmax) = args.get("frolicher") {
        let rmax: usize =
            rmax.parse().map_err(|_| CliError::Input("--frolicher expects a page cap".into()))?;
        let fr = cohomology::frolicher(lie, rmax.max(1));
        let mut results = Map::new();
        for page in &fr.pages {
            results.insert(format!("E{}", page.r), json!(page.dims));
        }
        results.insert("stabilization".into(), json!(fr.stabilization));
        results.insert("b".into(), json!(cohomology::betti_numbers(lie)));
        report.results = Value::Object(results);
    } else if let Some(pq) = args.get("z2") {
        let (ps, qs) = pq.split_once(',').expect("parser stores P,Q");
        let p: usize =
            ps.parse().map_err(|_| CliError::Input("--z2 expects integer P".into()))?;
        let q: usize =
            qs.parse().map_err(|_| CliError::Input("--z2 expects integer Q".into()))?;
        if p > lie.n || q > lie.n {
            return Err(CliError::Input(format!("bidegree ({p},{q}) out of range")));
        }
        let (z2, c2) = cohomology::z2_c2(lie, p, q);
        report.results = json!({ "Z2": sbasis(&z2), "C2": sbasis(&c2) });
    } else if args.has("page1") {
        let rep = cohomology::page1_check(lie);
        report.results = json!({
            "holds": rep.holds,
            "all_hold": rep.all_hold,
            "e2_degenerates": rep.e2_degenerates,
            "failure": rep.failure.as_ref().map(|(p, q, cert)| json!({
                "p": p, "q": q, "certificate": sform(cert),
            })),
        });
    } else {
        return Err(CliError::Input(
            "cohomology needs one of --dolbeault, --derham, --frolicher R, --z2 P Q, --page1"
                .into(),
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// deform
// ---------------------------------------------------------------------------

fn residuals_json(residuals: &[(String, Residual)]) -> Value {
    let mut map = Map::new();
    for (name, r) in residuals {
        map.insert(name.clone(), Value::String(r.render()));
    }
    Value::Object(map)
}

fn cmd_deform(args: &Args) -> Result<Report, CliError> {
    let input = load_input(args, true)?;
    let lie = &input.lie;
    let gamma_expr =
        args.get("gamma").ok_or_else(|| CliError::Input("deform needs --gamma EXPR".into()))?;
    let gamma = resolve_gamma(lie, gamma_expr, &input)?;
    let check = contact::is_p_contact(lie, &gamma)?;
    if !check.holds {
        return Err(CliError::Input(format!(
            "gamma is not a p-contact structure: {}",
            check.failed_condition.unwrap_or_default()
        )));
    }
    let mut report =
        empty_report("deform", json!({ "structure": input.descriptor, "gamma": sform(&gamma) }));
    if args.has("space") {
        let sp = deformations::deformation_space(lie, &gamma)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        report.results = json!({
            "dimension": sp.dimension,
            "tangent_h01": sp.tangent_h01,
            "classes": sp.classes.iter().map(|c| json!({
                "theta": svform(&c.theta1),
                "delbar_closed": c.delbar_closed,
                "class_of_contraction_vanishes": c.class_of_contraction_vanishes,
                "contraction_potential": c.contraction_potential.as_ref().map(sform),
                "z2_membership": c.z2_membership,
                "z2_witness": c.z2_witness.as_ref().map(sform),
            })).collect::<Vec<_>>(),
        });
    } else if args.has("order2") {
        let theta = if let Some(k) = args.get("class") {
            let k: usize =
                k.parse().map_err(|_| CliError::Input("--class expects an index".into()))?;
            let sp = deformations::deformation_space(lie, &gamma)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            sp.classes
                .get(k)
                .ok_or_else(|| {
                    CliError::Input(format!("class index {k} out of range 0..{}", sp.dimension))
                })?
                .theta1
                .clone()
        } else if let Some(file) = args.get("theta") {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Input(format!("cannot read {file:?}: {e}")))?;
            parse_vector_form(lie.n, text.trim())?
        } else {
            return Err(CliError::Input("--order2 needs --class K or --theta FILE".into()));
        };
        match deformations::order2(lie, &gamma, &theta) {
            Ok(cert) => {
                report.results = json!({
                    "obstructed": false,
                    "all_residuals_zero": cert.all_residuals_zero(),
                });
                report.residuals = residuals_json(&cert.residuals);
                report.certificates = json!({
                    "theta1": svform(&cert.theta1),
                    "eta1": sform(&cert.eta1),
                    "zeta1": sform(&cert.zeta1),
                    "psi1": svform(&cert.psi1),
                    "alpha": sform(&cert.alpha),
                    "bracket_psi1_psi1": svform(&cert.bracket),
                    "beta": sform(&cert.beta),
                    "delta": sform(&cert.delta),
                    "Phi2": sform(&cert.phi2),
                    "psi2": svform(&cert.psi2),
                });
                if !cert.all_residuals_zero() {
                    return Err(CliError::Internal(
                        "order-two certificate has a nonzero residual".into(),
                    ));
                }
            }
            Err(DeformError::Obstructed(o)) => {
                // a mathematical outcome, not a failure of the tool
                report.results = json!({
                    "obstructed": true,
                    "step": o.step,
                    "page1_note": o.page1_note,
                    "scope_note": o.scope_note,
                });
                report.certificates = json!({ "cokernel": sform(&o.certificate) });
            }
            Err(other) => return Err(CliError::Input(other.to_string())),
        }
    } else {
        return Err(CliError::Input("deform needs --space or --order2".into()));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &Args) -> Result<Report, CliError> {
    let suite = args.get("suite").unwrap_or("lie-calculus");
    if suite != "lie-calculus" {
        return Err(CliError::Input(format!("unknown suite {suite:?}")));
    }
    let seed: u64 = args
        .get("seed")
        .unwrap_or("42")
        .parse()
        .map_err(|_| CliError::Input("--seed expects an integer".into()))?;
    let trials: usize = args
        .get("trials")
        .unwrap_or("200")
        .parse()
        .map_err(|_| CliError::Input("--trials expects an integer".into()))?;
    let n_max: usize = args
        .get("nmax")
        .unwrap_or("3")
        .parse()
        .map_err(|_| CliError::Input("--nmax expects an integer".into()))?;
    let deg_max: usize = args
        .get("degmax")
        .unwrap_or("2")
        .parse()
        .map_err(|_| CliError::Input("--degmax expects an integer".into()))?;
    let mutation = if args.has("mutated") {
        polyforms::Mutation::FlipLieFormulaSign
    } else {
        polyforms::Mutation::None
    };
    let rep = polyforms::identity_suite_with(seed, trials, n_max, deg_max, mutation);
    let mut report = empty_report(
        "verify",
        json!({
            "suite": suite,
            "seed": seed,
            "trials": trials,
            "n_max": n_max,
            "deg_max": deg_max,
            "mutated": args.has("mutated"),
        }),
    );
    let mut results = Map::new();
    results.insert("passed".into(), json!(rep.passed()));
    results.insert(
        "checks".into(),
        json!(rep
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passes": c.passes, "failures": c.failures }))
            .collect::<Vec<_>>()),
    );
    results.insert(
        "first_counterexample".into(),
        match &rep.first_counterexample {
            Some(ce) => json!({ "trial": ce.trial, "identity": ce.identity, "detail": ce.detail }),
            None => Value::Null,
        },
    );
    if args.has("bridge") {
        let mut bridges = Vec::new();
        for id in ["iwasawa", "h15"] {
            let b = polyforms::bridge_check(id, seed, 50)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            bridges.push(json!({
                "id": b.id,
                "passed": b.passed(),
                "checks": b.checks.iter().map(|(name, p, f)| json!({
                    "op": name, "passes": p, "failures": f,
                })).collect::<Vec<_>>(),
                "first_failure": b.first_failure,
            }));
        }
        results.insert("bridge".into(), json!(bridges));
    }
    report.results = Value::Object(results);
    Ok(report)
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

fn cmd_catalog(args: &Args) -> Result<String, CliError> {
    if args.has("list") {
        let entries: Vec<Value> = catalog::entries()
            .iter()
            .map(|e| {
                json!({
                    "id": e.id,
                    "summary": e.summary,
                    "params": e.params.iter().map(|p| json!({
                        "name": p.name,
                        "constraint": p.constraint,
                        "default": p.default.as_ref().map(|d| d.render()),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut report = empty_report("catalog --list", Value::Object(Map::new()));
        report.results = json!({ "entries": entries });
        return finish(args, &report);
    }
    if let Some(id) = args.get("emit") {
        let params: Vec<(String, ParamValue)> = args
            .positional
            .iter()
            .skip(1)
            .map(|kv| parse_param(kv))
            .collect::<Result<_, _>>()?;
        let lie = catalog::catalog_get(id, &params)?;
        return Ok(emit_structure(id, &lie));
    }
    Err(CliError::Input("catalog needs --list or --emit ID [name=value ...]".into()))
}
