//! Command-line front end. Every subcommand builds a JSON document through
//! [`crate::report`] and either prints it verbatim (`--format json`) or
//! renders the same value as text, so both formats always agree.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::bialgebra_catalog::{bialgebra_entry, catalog_bialgebras};
use crate::catalog;
use crate::cohomology::extension_cohomology;
use crate::groups::catalog::{group_catalog, group_pair};
use crate::groups::cocycles::{
    check_group_cocycle, cocycle_family, quantization_scan, recommended_tolerance, CocycleFamily,
    EvalMode, COCYCLE_HEADS, QUANTIZATION_STEP,
};
use crate::linalg::QMat;
use crate::matched::trichotomy;
use crate::report::{
    bialgebra_section, group_section, merge_documents, num, verify_document, ReportError,
    VerifyOptions, SCHEMA,
};
use crate::scalar::{fmt_ratio, Q};

#[derive(Parser)]
#[command(
    name = "bicrossed",
    version,
    about = "Exact and numerical checks for matched pairs of low-dimensional Lie algebras and groups"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the shipped algebra, group, cocycle, and bialgebra catalogs
    Catalog {
        /// Keep only entries whose name contains this substring
        #[arg(long)]
        filter: Option<String>,
    },
    /// Extension cohomology of an algebra catalog entry
    Cohomology {
        /// Entry name, optionally with parameters: `2+1/4.1?d=-1&b=1`
        entry: String,
    },
    /// Checks on integrated group pairs
    #[command(subcommand)]
    Group(GroupCmd),
    /// Cocycle identities on integrated pairs
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Lie bialgebra checks
    #[command(subcommand)]
    Bialgebra(BialgebraCmd),
    /// Run every applicable check for one entry, or `all` for the catalogs
    Verify(VerifyArgs),
    /// Merge verification documents into one
    Report {
        /// JSON documents produced by `verify`; with none given, reads
        /// `$BICROSSED_REPORT_DIR/*.json`
        paths: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Factorization identities, infinitesimal match, and modular criterion
    Verify {
        /// Group entry name, optionally with parameters: `4.1?d=-1&b=1`
        entry: String,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Both cocycle identities at one coupling
    Check {
        /// Cocycle family name: a group entry with a shipped family
        entry: String,
        /// Coupling constant multiplying the generating function
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Identity residuals over a grid of couplings
    Scan {
        /// Cocycle family name: a group entry with a shipped family
        entry: String,
        /// Comma-separated couplings; defaults to a grid suited to the family
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[command(flatten)]
        sampling: Sampling,
    },
}

/// Evaluation route for cocycle values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Closed form when shipped, integration otherwise
    Auto,
    /// Closed form only
    Closed,
    /// Integration along the flow, principal-value where singular
    Pv,
}

#[derive(Subcommand)]
enum BialgebraCmd {
    /// Cobracket axioms, dual axioms, and involutivity of dualization
    Verify {
        /// Bialgebra family name, optionally with parameters
        name: String,
    },
    /// Print the dual bialgebra
    Dual {
        /// Bialgebra family name, optionally with parameters
        name: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Entry name (algebra or group catalog), or `all`
    target: String,
    /// Override parameter `d` of the target entry
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Override parameter `b` of the target entry
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Override parameter `r` of the target entry
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Override parameter `a` of the target entry
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Coupling for the cocycle sections
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    /// Number of seeded samples
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for the sample generator
    #[arg(long)]
    seed: Option<u64>,
    /// Pass tolerance on residuals
    #[arg(long)]
    tol: Option<f64>,
}

impl Sampling {
    fn options(&self) -> VerifyOptions {
        let base = VerifyOptions::default();
        VerifyOptions {
            samples: self.samples.unwrap_or(base.samples),
            seed: self.seed.unwrap_or(base.seed),
            tol: self.tol.unwrap_or(base.tol),
            coupling: None,
        }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok((doc, ok)) => {
            emit(cli.format, &doc, start);
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: &Command) -> Result<(Value, bool), ReportError> {
    match command {
        Command::Catalog { filter } => catalog_doc(filter.as_deref()),
        Command::Cohomology { entry } => cohomology_doc(entry),
        Command::Group(GroupCmd::Verify { entry, sampling }) => group_doc(entry, sampling),
        Command::Cocycle(CocycleCmd::Check {
            entry,
            lambda,
            mode,
            sampling,
        }) => cocycle_check_doc(entry, *lambda, *mode, sampling),
        Command::Cocycle(CocycleCmd::Scan {
            entry,
            grid,
            mode,
            sampling,
        }) => cocycle_scan_doc(entry, grid.as_deref(), *mode, sampling),
        Command::Bialgebra(BialgebraCmd::Verify { name }) => bialgebra_verify_doc(name),
        Command::Bialgebra(BialgebraCmd::Dual { name }) => bialgebra_dual_doc(name),
        Command::Verify(args) => verify_doc(args),
        Command::Report { paths } => report_doc(paths),
    }
}

fn emit(format: Format, doc: &Value, start: Instant) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(doc).expect("documents are valid JSON")
            );
        }
        Format::Text => {
            render(doc);
            let timed = matches!(
                doc.get("command").and_then(Value::as_str),
                Some("verify" | "group-verify" | "cocycle-check" | "cocycle-scan")
            );
            if timed {
                eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
            }
        }
    }
}

fn headed(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    map.insert("command".into(), Value::String(command.into()));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

fn catalog_doc(filter: Option<&str>) -> Result<(Value, bool), ReportError> {
    let keep = |name: &str| filter.map_or(true, |f| name.contains(f));

    let mut algebras = Vec::new();
    for e in catalog::catalog() {
        if !keep(&e.full_name()) {
            continue;
        }
        algebras.push(json!({
            "entry": e.full_name(),
            "trichotomy": trichotomy(&e.data)?.as_str(),
            "extension_group_dim": extension_cohomology(&e.data)?.ext_dim,
            "group_entry": e.group_entry,
            "bialgebra_entry": e.bialgebra_entry,
        }));
    }

    let mut groups = Vec::new();
    for pair in group_catalog() {
        if !keep(&pair.full_name()) {
            continue;
        }
        groups.push(json!({
            "entry": pair.full_name(),
            "algebra_entry": pair.algebra_entry(),
            "kac_expected": pair.kac_expected(),
        }));
    }

    let mut cocycles = Vec::new();
    for head in COCYCLE_HEADS {
        let family = cocycle_family(head)?;
        if !keep(&family.name()) {
            continue;
        }
        cocycles.push(json!({
            "entry": family.name(),
            "class": family.class().as_str(),
            "closed_form": family.has_closed_form(),
        }));
    }

    let mut bialgebras = Vec::new();
    for e in catalog_bialgebras() {
        if !keep(&e.full_name()) {
            continue;
        }
        bialgebras.push(json!({
            "entry": e.full_name(),
            "dim": e.bialgebra.dim(),
            "dual_entry": e.dual_name,
        }));
    }

    let doc = headed(
        "catalog",
        json!({
            "algebras": algebras,
            "groups": groups,
            "cocycles": cocycles,
            "bialgebras": bialgebras,
        }),
    );
    Ok((doc, true))
}

fn rational_matrix(m: &QMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| Value::String(fmt_ratio(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn cohomology_doc(spec: &str) -> Result<(Value, bool), ReportError> {
    let entry = catalog::entry(spec)?;
    let result = extension_cohomology(&entry.data)?;
    let doc = headed(
        "cohomology",
        json!({
            "entry": entry.full_name(),
            "basis": entry.data.g1.labels(),
            "cocycle_dim": result.cocycles.len(),
            "coboundary_dim": result.coboundaries.len(),
            "extension_group_dim": result.ext_dim,
            "generator": result.generator.as_ref().map(rational_matrix),
        }),
    );
    Ok((doc, true))
}

fn group_doc(entry: &str, sampling: &Sampling) -> Result<(Value, bool), ReportError> {
    let pair = group_pair(entry)?;
    let opts = sampling.options();
    let section = group_section(&pair, &opts)?;
    let ok = section["passed"].as_bool() == Some(true);
    let mut body = Map::new();
    body.insert("seed".into(), json!(opts.seed));
    if let Value::Object(fields) = section {
        body.extend(fields);
    }
    Ok((headed("group-verify", Value::Object(body)), ok))
}

fn effective_mode(family: &CocycleFamily, mode: Mode) -> (EvalMode, &'static str) {
    match mode {
        Mode::Closed => (EvalMode::Closed, "closed"),
        Mode::Pv => (EvalMode::Integral, "integral"),
        Mode::Auto if family.has_closed_form() => (EvalMode::Auto, "closed"),
        Mode::Auto => (EvalMode::Auto, "integral"),
    }
}

fn cocycle_config(
    family: &CocycleFamily,
    mode: EvalMode,
    route: &str,
    sampling: &Sampling,
) -> crate::groups::verify::SampleConfig {
    let samples = sampling
        .samples
        .unwrap_or(if route == "closed" { 200 } else { 25 });
    crate::groups::verify::SampleConfig {
        samples,
        seed: sampling.seed.unwrap_or(42),
        tol: sampling
            .tol
            .unwrap_or_else(|| recommended_tolerance(family, mode)),
    }
}

fn cocycle_check_doc(
    entry: &str,
    lambda: f64,
    mode: Mode,
    sampling: &Sampling,
) -> Result<(Value, bool), ReportError> {
    let family = cocycle_family(entry)?;
    let (eval, route) = effective_mode(&family, mode);
    let cfg = cocycle_config(&family, eval, route, sampling);
    let report = check_group_cocycle(&family, lambda, eval, &cfg)?;
    let expected = family.expected_pass(lambda);
    let doc = headed(
        "cocycle-check",
        json!({
            "entry": report.entry,
            "class": family.class().as_str(),
            "lambda": num(lambda),
            "mode": route,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "identity1_max": num(report.identity1_max),
            "identity2_max": num(report.identity2_max),
            "error_estimate": num(report.error_estimate),
            "tolerance": num(report.tolerance),
            "passed": report.passed,
            "expected": expected,
            "agrees": report.passed == expected,
        }),
    );
    let ok = report.passed;
    Ok((doc, ok))
}

fn cocycle_scan_doc(
    entry: &str,
    grid: Option<&[f64]>,
    mode: Mode,
    sampling: &Sampling,
) -> Result<(Value, bool), ReportError> {
    let family = cocycle_family(entry)?;
    let (eval, route) = effective_mode(&family, mode);
    let cfg = cocycle_config(&family, eval, route, sampling);
    let grid: Vec<f64> = match grid {
        Some(g) => g.to_vec(),
        None => family.default_grid(),
    };
    let points = quantization_scan(&family, &grid, eval, &cfg)?;
    let all_agree = points.iter().all(|p| p.passed == p.expected);
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "lambda": num(p.coupling),
                "identity1_max": num(p.identity1_max),
                "identity2_max": num(p.identity2_max),
                "passed": p.passed,
                "expected": p.expected,
                "agrees": p.passed == p.expected,
            })
        })
        .collect();
    let doc = headed(
        "cocycle-scan",
        json!({
            "entry": family.name(),
            "class": family.class().as_str(),
            "quantization_step": num(QUANTIZATION_STEP),
            "mode": route,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "tolerance": num(cfg.tol),
            "points": rows,
            "passed": all_agree,
        }),
    );
    Ok((doc, all_agree))
}

fn bialgebra_verify_doc(name: &str) -> Result<(Value, bool), ReportError> {
    let entry = bialgebra_entry(name)?;
    let section = bialgebra_section(&entry)?;
    let ok = section["passed"].as_bool() == Some(true);
    Ok((headed("bialgebra-verify", section), ok))
}

fn bialgebra_dual_doc(name: &str) -> Result<(Value, bool), ReportError> {
    let entry = bialgebra_entry(name)?;
    let dual = entry.bialgebra.dual();
    let n = dual.dim();
    let algebra = dual.algebra();

    let brackets: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| {
                        Value::Array(
                            (0..n)
                                .map(|k| {
                                    Value::String(fmt_ratio(algebra.structure_constant(i, j, k)))
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();

    let mut cobrackets = Vec::new();
    for k in 0..n {
        let mut e = vec![Q::zero(); n];
        e[k] = Q::one();
        cobrackets.push(rational_matrix(&dual.cobracket_of(&e)?));
    }

    let doc = headed(
        "bialgebra-dual",
        json!({
            "entry": entry.full_name(),
            "dual_entry": entry.dual_name,
            "basis": algebra.labels(),
            "structure_constants": brackets,
            "cobracket": cobrackets,
        }),
    );
    Ok((doc, true))
}

fn verify_doc(args: &VerifyArgs) -> Result<(Value, bool), ReportError> {
    let overrides: Vec<(&str, &Option<String>)> = vec![
        ("d", &args.d),
        ("b", &args.b),
        ("r", &args.r),
        ("a", &args.a),
    ];
    let mut spec = args.target.clone();
    for (key, value) in overrides {
        let Some(value) = value else { continue };
        if args.target == "all" {
            return Err(ReportError::Document(
                "parameter overrides apply to a single entry, not `all`".into(),
            ));
        }
        spec.push(if spec.contains('?') { '&' } else { '?' });
        spec.push_str(&format!("{key}={value}"));
    }

    let mut opts = args.sampling.options();
    opts.coupling = args.lambda;
    let doc = verify_document(&spec, &opts)?;
    let ok = doc["passed"].as_bool() == Some(true);
    Ok((doc, ok))
}

fn report_doc(paths: &[PathBuf]) -> Result<(Value, bool), ReportError> {
    let mut paths = paths.to_vec();
    if paths.is_empty() {
        if let Ok(dir) = std::env::var("BICROSSED_REPORT_DIR") {
            let mut found: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| ReportError::Document(format!("{dir}: {e}")))?
                .filter_map(|r| r.ok().map(|d| d.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            paths = found;
        }
    }

    let mut docs = Vec::new();
    for path in &paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ReportError::Document(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| ReportError::Document(format!("{}: {e}", path.display())))?;
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        docs.push((name, value));
    }

    let merged = merge_documents(&docs)?;
    let ok = merged["passed"].as_bool() == Some(true);
    Ok((merged, ok))
}

// Text rendering. Every renderer reads the same JSON value the `json` format
// prints, so the two outputs cannot drift apart.

fn render(doc: &Value) {
    match doc.get("command").and_then(Value::as_str) {
        Some("catalog") => render_catalog(doc),
        Some("cohomology") => render_cohomology(doc),
        Some("group-verify") => render_group_verify(doc),
        Some("cocycle-check") => render_cocycle_check(doc),
        Some("cocycle-scan") => render_cocycle_scan(doc),
        Some("bialgebra-verify") => render_bialgebra_verify(doc),
        Some("bialgebra-dual") => render_bialgebra_dual(doc),
        Some("verify") => render_verify(doc),
        Some("report") => render_report(doc),
        _ => println!("{doc}"),
    }
}

fn text(v: &Value, key: &str) -> String {
    match v.get(key) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Null) | None => "-".into(),
        Some(other) => other.to_string(),
    }
}

fn residual(v: &Value, key: &str) -> String {
    match v.get(key).and_then(Value::as_f64) {
        Some(x) => format!("{x:.3e}"),
        None => "-".into(),
    }
}

fn count(v: &Value, key: &str) -> u64 {
    v.get(key).and_then(Value::as_u64).unwrap_or(0)
}

fn flag(v: &Value, key: &str) -> bool {
    v.get(key).and_then(Value::as_bool) == Some(true)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn items<'a>(doc: &'a Value, key: &str) -> &'a [Value] {
    doc.get(key)
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or(&[])
}

fn render_catalog(doc: &Value) {
    let algebras = items(doc, "algebras");
    println!("algebra catalog ({})", algebras.len());
    for e in algebras {
        let mut refs = Vec::new();
        if let Some(g) = e.get("group_entry").and_then(Value::as_str) {
            refs.push(format!("group {g}"));
        }
        if let Some(b) = e.get("bialgebra_entry").and_then(Value::as_str) {
            refs.push(format!("bialgebra {b}"));
        }
        let refs = if refs.is_empty() {
            String::new()
        } else {
            format!("  [{}]", refs.join(", "))
        };
        println!(
            "  {:<24} {:<20} ext dim {}{}",
            text(e, "entry"),
            text(e, "trichotomy"),
            count(e, "extension_group_dim"),
            refs
        );
    }

    let groups = items(doc, "groups");
    println!("group catalog ({})", groups.len());
    for e in groups {
        let kac = match e.get("kac_expected") {
            Some(Value::Bool(true)) => "modular criterion holds",
            Some(Value::Bool(false)) => "modular criterion fails",
            _ => "",
        };
        let target = match e.get("algebra_entry").and_then(Value::as_str) {
            Some(t) => format!("integrates {t}"),
            None => String::new(),
        };
        println!("  {:<16} {:<28} {}", text(e, "entry"), target, kac);
    }

    let cocycles = items(doc, "cocycles");
    println!("cocycle families ({})", cocycles.len());
    for e in cocycles {
        let route = if flag(e, "closed_form") {
            "closed form"
        } else {
            "integral"
        };
        println!("  {:<24} {:<12} {}", text(e, "entry"), text(e, "class"), route);
    }

    let bialgebras = items(doc, "bialgebras");
    println!("bialgebra catalog ({})", bialgebras.len());
    for e in bialgebras {
        let dual = match e.get("dual_entry").and_then(Value::as_str) {
            Some(d) => format!("dual {d}"),
            None => String::new(),
        };
        println!("  {:<24} dim {}  {}", text(e, "entry"), count(e, "dim"), dual);
    }
}

fn render_cohomology(doc: &Value) {
    println!("entry {}", text(doc, "entry"));
    println!(
        "cocycles {}, coboundaries {}, extension group dimension {}",
        count(doc, "cocycle_dim"),
        count(doc, "coboundary_dim"),
        count(doc, "extension_group_dim"),
    );
    let labels: Vec<String> = items(doc, "basis")
        .iter()
        .map(|v| v.as_str().unwrap_or("?").to_string())
        .collect();
    match doc.get("generator") {
        Some(Value::Array(rows)) => {
            println!("generator of the extension group:");
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in items_of(row).iter().enumerate() {
                    if j <= i {
                        continue;
                    }
                    let c = cell.as_str().unwrap_or("0");
                    if c != "0" {
                        println!(
                            "  U({}, {}) = {}",
                            labels.get(i).map_or("?", |s| s),
                            labels.get(j).map_or("?", |s| s),
                            c
                        );
                    }
                }
            }
        }
        _ => println!("extension group is trivial"),
    }
}

fn items_of(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn render_group_verify(doc: &Value) {
    println!(
        "group {}  ({} samples, seed {})",
        text(doc, "entry"),
        count(doc, "samples"),
        count(doc, "seed"),
    );
    if let Some(Value::Object(residuals)) = doc.get("identity_residuals") {
        for (name, value) in residuals {
            let shown = value.as_f64().map_or("-".into(), |x| format!("{x:.3e}"));
            println!("  {name:<26} {shown}");
        }
    }
    println!(
        "  identities within tolerance: {}",
        verdict(flag(doc, "identities_ok"))
    );
    if let Some(inf) = doc.get("infinitesimal").filter(|v| !v.is_null()) {
        println!(
            "  infinitesimal data -> {}: residual {} (bound {}) {}",
            text(inf, "target"),
            residual(inf, "residual"),
            residual(inf, "bound"),
            verdict(flag(inf, "ok")),
        );
    }
    if let Some(kac) = doc.get("kac") {
        let outcome = if flag(kac, "passes_eq1") && flag(kac, "passes_eq2") {
            "holds"
        } else {
            "fails"
        };
        let expected = match kac.get("expected") {
            Some(Value::Bool(true)) => "expected to hold",
            Some(Value::Bool(false)) => "expected to fail",
            _ => "no expectation declared",
        };
        let agreement = match kac.get("agrees") {
            Some(Value::Bool(true)) => ", agrees",
            Some(Value::Bool(false)) => ", DISAGREES",
            _ => "",
        };
        println!(
            "  modular criterion: eq1 {}  eq2 {}  -> {} ({}{})",
            residual(kac, "eq1"),
            residual(kac, "eq2"),
            outcome,
            expected,
            agreement,
        );
        if kac
            .get("delta_M_closed_form_residual")
            .is_some_and(|v| !v.is_null())
        {
            println!(
                "  closed-form modular element residual      {}",
                residual(kac, "delta_M_closed_form_residual")
            );
        }
        if kac
            .get("delta_M_hat_closed_form_residual")
            .is_some_and(|v| !v.is_null())
        {
            println!(
                "  closed-form dual modular element residual {}",
                residual(kac, "delta_M_hat_closed_form_residual")
            );
        }
    }
    println!(
        "  modular function vs adjoint determinant   {}",
        residual(doc, "modular_residual")
    );
    println!("result: {}", verdict(flag(doc, "passed")));
}

fn render_cocycle_check(doc: &Value) {
    println!(
        "cocycle {}  lambda {}  ({}, {} samples, seed {})",
        text(doc, "entry"),
        text_number(doc, "lambda"),
        text(doc, "mode"),
        count(doc, "samples"),
        count(doc, "seed"),
    );
    println!("  identity 1 max residual  {}", residual(doc, "identity1_max"));
    println!("  identity 2 max residual  {}", residual(doc, "identity2_max"));
    println!("  tolerance                {}", residual(doc, "tolerance"));
    let agreement = match doc.get("agrees") {
        Some(Value::Bool(true)) => "as expected",
        Some(Value::Bool(false)) => "NOT as expected",
        _ => "",
    };
    println!(
        "result: {} ({})",
        verdict(flag(doc, "passed")),
        agreement
    );
}

fn text_number(v: &Value, key: &str) -> String {
    match v.get(key) {
        Some(Value::Number(n)) => n.to_string(),
        _ => "-".into(),
    }
}

fn render_cocycle_scan(doc: &Value) {
    println!(
        "cocycle scan {}  ({} family, {}, {} samples, seed {})",
        text(doc, "entry"),
        text(doc, "class"),
        text(doc, "mode"),
        count(doc, "samples"),
        count(doc, "seed"),
    );
    println!(
        "  {:<12} {:<12} {:<12} outcome",
        "lambda", "id1 max", "id2 max"
    );
    for p in items(doc, "points") {
        let mark = match (flag(p, "passed"), flag(p, "expected")) {
            (true, true) => "pass (expected)",
            (false, false) => "fail (expected)",
            (true, false) => "pass (UNEXPECTED)",
            (false, true) => "FAIL (unexpected)",
        };
        println!(
            "  {:<12} {:<12} {:<12} {}",
            text_number(p, "lambda"),
            residual(p, "identity1_max"),
            residual(p, "identity2_max"),
            mark
        );
    }
    println!(
        "result: {}",
        if flag(doc, "passed") {
            "every coupling matches its expectation"
        } else {
            "FAIL: some couplings deviate from their expectation"
        }
    );
}

fn render_bialgebra_verify(doc: &Value) {
    println!("bialgebra {}", text(doc, "entry"));
    if let Some(Value::Object(clauses)) = doc.get("clauses") {
        for (name, ok) in clauses {
            println!("  {:<26} {}", name, verdict(ok.as_bool() == Some(true)));
        }
    }
    println!("  {:<26} {}", "dual axioms", verdict(flag(doc, "dual_ok")));
    println!(
        "  {:<26} {}",
        "double dual is identity",
        verdict(flag(doc, "dual_involutive"))
    );
    if let Some(dual) = doc.get("dual_entry").and_then(Value::as_str) {
        println!("  dual belongs to family {dual}");
    }
    println!("result: {}", verdict(flag(doc, "passed")));
}

fn coefficient(c: &str) -> String {
    match c {
        "1" => String::new(),
        "-1" => "-".into(),
        other => format!("{other} "),
    }
}

fn join_terms(terms: &[String]) -> String {
    terms.join(" + ").replace("+ -", "- ")
}

fn render_bialgebra_dual(doc: &Value) {
    println!("dual of {}", text(doc, "entry"));
    if let Some(family) = doc.get("dual_entry").and_then(Value::as_str) {
        println!("isomorphic to catalog family {family}");
    }
    let labels: Vec<String> = items(doc, "basis")
        .iter()
        .map(|v| v.as_str().unwrap_or("?").to_string())
        .collect();
    let name = |i: usize| labels.get(i).cloned().unwrap_or_else(|| format!("e{i}"));

    println!("brackets:");
    let c = items(doc, "structure_constants");
    let mut any = false;
    for (i, plane) in c.iter().enumerate() {
        for (j, row) in items_of(plane).iter().enumerate() {
            if j <= i {
                continue;
            }
            let terms: Vec<String> = items_of(row)
                .iter()
                .enumerate()
                .filter_map(|(k, cell)| {
                    let c = cell.as_str().unwrap_or("0");
                    (c != "0").then(|| format!("{}{}", coefficient(c), name(k)))
                })
                .collect();
            if !terms.is_empty() {
                any = true;
                println!("  [{}, {}] = {}", name(i), name(j), join_terms(&terms));
            }
        }
    }
    if !any {
        println!("  all brackets vanish");
    }

    println!("cobrackets:");
    let d = items(doc, "cobracket");
    let mut any = false;
    for (k, matrix) in d.iter().enumerate() {
        let mut terms = Vec::new();
        for (i, row) in items_of(matrix).iter().enumerate() {
            for (j, cell) in items_of(row).iter().enumerate() {
                if j <= i {
                    continue;
                }
                let c = cell.as_str().unwrap_or("0");
                if c != "0" {
                    terms.push(format!("{}{} ^ {}", coefficient(c), name(i), name(j)));
                }
            }
        }
        if !terms.is_empty() {
            any = true;
            println!("  delta({}) = {}", name(k), join_terms(&terms));
        }
    }
    if !any {
        println!("  the cobracket vanishes");
    }
}

fn section_verdict(row: &Value, key: &str) -> String {
    match row.get(key) {
        Some(Value::Null) | None => format!("{key} -"),
        Some(section) => format!("{key} {}", verdict(flag(section, "passed"))),
    }
}

fn render_verify(doc: &Value) {
    println!(
        "verify {}  ({} samples, seed {})",
        text(doc, "target"),
        count(doc, "samples"),
        count(doc, "seed"),
    );
    for row in items(doc, "entries") {
        let ext = row
            .get("algebra")
            .and_then(|a| a.get("extension_group_dim"))
            .and_then(Value::as_u64)
            .map_or(String::new(), |d| format!("  ext dim {d}"));
        let line = format!(
            "  {:<26} {:<14} {:<12} {:<14}{}",
            text(row, "entry"),
            section_verdict(row, "algebra"),
            section_verdict(row, "group"),
            section_verdict(row, "cocycle"),
            ext,
        );
        println!("{}", line.trim_end());
    }
    let bialgebras = items(doc, "bialgebras");
    if !bialgebras.is_empty() {
        let failing: Vec<String> = bialgebras
            .iter()
            .filter(|s| !flag(s, "passed"))
            .map(|s| text(s, "entry"))
            .collect();
        if failing.is_empty() {
            println!("bialgebras: {} checked, all pass", bialgebras.len());
        } else {
            println!(
                "bialgebras: {} checked, FAILING: {}",
                bialgebras.len(),
                failing.join(", ")
            );
        }
    }
    println!("result: {}", verdict(flag(doc, "passed")));
}

fn render_report(doc: &Value) {
    let sources: Vec<String> = items(doc, "sources")
        .iter()
        .map(|v| v.as_str().unwrap_or("?").to_string())
        .collect();
    println!(
        "report over {} document(s): {}",
        sources.len(),
        sources.join(", ")
    );
    let entries = items(doc, "entries");
    let bialgebras = items(doc, "bialgebras");
    println!(
        "  entries {}, bialgebras {}",
        entries.len(),
        bialgebras.len()
    );
    let failing: Vec<String> = entries
        .iter()
        .chain(bialgebras.iter())
        .filter(|s| !flag(s, "passed"))
        .map(|s| text(s, "entry"))
        .collect();
    if failing.is_empty() {
        println!("  failing: none");
    } else {
        println!("  failing: {}", failing.join(", "));
    }
    println!("result: {}", verdict(flag(doc, "passed")));
}
