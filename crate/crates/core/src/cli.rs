//! The `hermlie` command line: JSON in, JSON out, exact rationals as
//! `"p/q"` strings.
//!
//! Exit codes: 0 when every requested check holds, 1 when a check ran and
//! failed, 2 on invalid input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::catalog::{family, named_algebra, parse_salamon, render_salamon, witness_lists, Bindings, FAMILIES};
use crate::error::Error;
use crate::forms::VectorValuedTwoForm;
use crate::hermitian::{
    balanced_structural, hermitian_decomposition, hermitian_forms, ClassifyOptions, ComplexStructure, Metric, PureType,
    Verdicts,
};
use crate::linalg::{QMatrix, Subspace, Vector};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::search::{search_metric, SearchConfig};
use crate::shear::{
    build_shear, check_complex_shear, random_complex_shear, shear_verdicts, ConditionKind, PreShearData, ShearProfile,
};
use crate::verify::CRITERIA;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "hermlie", version, about = "Exact Hermitian geometry on two-step solvable Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants and Salamon rendering of an algebra.
    Describe { algebra: PathBuf },
    /// Exact Kähler / balanced / SKT verdicts for a metric and complex structure.
    Check {
        algebra: PathBuf,
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        condition: Condition,
    },
    /// Conditions evaluated directly on complex shear data, or the built algebra.
    Shear {
        data: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        kind: ShearKind,
        /// Also build the algebra and compare with the direct check.
        #[arg(long)]
        cross_check: bool,
    },
    /// Numerical search for a compatible metric; the seed list can be set
    /// with HERMLIE_SEEDS.
    Search {
        algebra: PathBuf,
        structure: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        /// JSON file overriding fields of the search configuration.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Named families and the stored six-dimensional examples.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },
    /// Runs the full reproducibility harness.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Entry names and families.
    List,
    /// Entries with the given name (or index from `list`), with their
    /// witness verdicts recomputed.
    Show { name: String },
    /// A member of a named family as an algebra document.
    Family {
        name: String,
        /// `name=p/q`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Condition {
    Kahler,
    Balanced,
    Skt,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShearKind {
    Kahler,
    Balanced,
    Skt,
    All,
    Build,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Kahler,
    Balanced,
    Skt,
}

impl Condition {
    fn kinds(self) -> Vec<ConditionKind> {
        match self {
            Condition::Kahler => vec![ConditionKind::Kahler],
            Condition::Balanced => vec![ConditionKind::Balanced],
            Condition::Skt => vec![ConditionKind::Skt],
            Condition::All => ConditionKind::ALL.to_vec(),
        }
    }
}

impl From<Target> for ConditionKind {
    fn from(t: Target) -> Self {
        match t {
            Target::Kahler => ConditionKind::Kahler,
            Target::Balanced => ConditionKind::Balanced,
            Target::Skt => ConditionKind::Skt,
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, doc)) => Outcome { code, stdout: doc, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(command: Command) -> CliResult<(i32, String)> {
    match command {
        Command::Describe { algebra } => describe(&algebra),
        Command::Check { algebra, structure, condition } => check(&algebra, &structure, condition),
        Command::Shear { data, kind, cross_check } => shear(&data, kind, cross_check),
        Command::Search { algebra, structure, target, config } => search(&algebra, &structure, target, config.as_deref()),
        Command::Catalog { action } => catalog(action.unwrap_or(CatalogAction::List)),
        Command::VerifyPaper { json, only } => verify(json, only),
    }
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialise");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn scalar(v: &Value) -> CliResult<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| input(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(crate::scalar::int)
            .ok_or_else(|| input(format!("{n}: write non-integers as \"p/q\" strings"))),
        other => Err(input(format!("expected a rational, found {other}"))),
    }
}

fn vector(v: &Value) -> CliResult<Vector> {
    v.as_array().ok_or_else(|| input("expected an array"))?.iter().map(scalar).collect()
}

fn matrix(v: &Value, dim: usize, what: &str) -> CliResult<QMatrix> {
    let rows: Vec<Vector> =
        v.as_array().ok_or_else(|| input(format!("{what} must be an array of rows")))?.iter().map(vector).collect::<CliResult<_>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(input(format!("{what} must be {dim}×{dim}")));
    }
    Ok(QMatrix::from_rows(rows))
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(scalar_json).collect())).collect())
}

/// `{"dim", "constants", "salamon"}` for an algebra.
pub fn algebra_json(l: &LieAlgebra) -> Value {
    let constants: Vec<Value> =
        l.constants().iter().map(|(i, j, k, c)| json!([i, j, k, format_scalar(c)])).collect();
    json!({ "dim": l.dim(), "constants": constants, "salamon": render_salamon(l) })
}

fn bindings(doc: &Value) -> CliResult<Bindings> {
    let mut out = Bindings::new();
    if let Some(p) = doc.get("params") {
        let map = p.as_object().ok_or_else(|| input("\"params\" must be an object"))?;
        for (k, v) in map {
            out.insert(k.clone(), scalar(v)?);
        }
    }
    Ok(out)
}

pub fn parse_algebra_document(doc: &Value) -> crate::Result<LieAlgebra> {
    load_algebra_value(doc).map_err(|e| match e {
        CliError::Core(e) => e,
        CliError::Input(m) => Error::InvalidInput(m),
    })
}

fn load_algebra_value(doc: &Value) -> CliResult<LieAlgebra> {
    let dim = doc.get("dim").and_then(Value::as_u64).ok_or_else(|| input("\"dim\" must be a positive integer"))? as usize;
    let l = match (doc.get("salamon"), doc.get("constants")) {
        (Some(s), None) => {
            let text = s.as_str().ok_or_else(|| input("\"salamon\" must be a string"))?;
            parse_salamon(text, &bindings(doc)?)?
        }
        (None, Some(c)) => {
            let mut constants = Vec::new();
            for entry in c.as_array().ok_or_else(|| input("\"constants\" must be an array"))? {
                let e = entry.as_array().filter(|e| e.len() == 4).ok_or_else(|| input("constants are [i, j, k, \"p/q\"]"))?;
                let idx = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(|| input("indices must be positive integers"));
                constants.push((idx(&e[0])?, idx(&e[1])?, idx(&e[2])?, scalar(&e[3])?));
            }
            let l = LieAlgebra::new(dim, &constants)?;
            l.require_validated()?;
            l
        }
        _ => return Err(input("give exactly one of \"salamon\" and \"constants\"")),
    };
    if l.dim() != dim {
        return Err(input(format!("\"dim\" is {dim} but the algebra has dimension {}", l.dim())));
    }
    Ok(l)
}

fn load_algebra(path: &Path) -> CliResult<LieAlgebra> {
    load_algebra_value(&read_json(path)?)
}

fn load_j(doc: &Value, dim: usize) -> CliResult<ComplexStructure> {
    match (doc.get("J"), doc.get("J_pairs")) {
        (Some(j), None) => Ok(ComplexStructure::new(matrix(j, dim, "\"J\"")?)?),
        (None, Some(p)) => {
            let pairs: Vec<(usize, usize)> = p
                .as_array()
                .ok_or_else(|| input("\"J_pairs\" must be an array"))?
                .iter()
                .map(|pair| match pair.as_array().map(|a| (a.first().and_then(Value::as_u64), a.get(1).and_then(Value::as_u64))) {
                    Some((Some(a), Some(b))) => Ok((a as usize, b as usize)),
                    _ => Err(input("\"J_pairs\" entries are [a, b]")),
                })
                .collect::<CliResult<_>>()?;
            Ok(ComplexStructure::from_pairs(dim, &pairs)?)
        }
        (None, None) => Err(input("missing \"J\"")),
        _ => Err(input("give only one of \"J\" and \"J_pairs\"")),
    }
}

fn load_metric(doc: &Value, dim: usize) -> CliResult<Metric> {
    let m = doc.get("metric").ok_or_else(|| input("missing \"metric\""))?;
    Ok(Metric::new(matrix(m, dim, "\"metric\"")?)?)
}

fn verdicts_json(v: &Verdicts) -> Value {
    json!({ "kahler": v.kahler, "balanced": v.balanced, "skt": v.skt })
}

fn describe(path: &Path) -> CliResult<(i32, String)> {
    let l = load_algebra(path)?;
    let f = l.structure_invariants()?;
    let doc = json!({
        "schema": SCHEMA,
        "command": "describe",
        "algebra": algebra_json(&l),
        "fingerprint": f,
        "two_step_solvable": l.is_two_step_solvable(),
        "nilpotent": l.is_nilpotent(),
        "unimodular": l.is_unimodular(),
        "derived_dim": l.derived_algebra().dim(),
        "center_dim": l.center().dim(),
    });
    Ok((0, render(&doc)))
}

fn check(algebra: &Path, structure: &Path, condition: Condition) -> CliResult<(i32, String)> {
    let l = load_algebra(algebra)?;
    let s = read_json(structure)?;
    let j = load_j(&s, l.dim())?;
    let g = load_metric(&s, l.dim())?;
    let forms = hermitian_forms(&l, &g, &j, ClassifyOptions::default())?;
    let v = forms.verdicts();
    let kinds = condition.kinds();
    let holds = kinds.iter().all(|k| v.get(*k));
    let mut doc = json!({
        "schema": SCHEMA,
        "command": "check",
        "verdicts": verdicts_json(&v),
        "requested": kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "holds": holds,
        "residuals": {
            "d_sigma": forms.d_sigma.to_string(),
            "d_sigma_power": forms.d_sigma_power.to_string(),
            "d_j_d_sigma": forms.d_j_d_sigma.to_string(),
        },
    });
    if l.is_two_step_solvable() {
        let d = hermitian_decomposition(&l, &g, &j)?;
        let types: BTreeMap<String, bool> = [PureType::None, PureType::I, PureType::II, PureType::III, PureType::Mixed]
            .iter()
            .map(|t| (t.to_string(), d.is_type(*t)))
            .collect();
        doc["decomposition"] = json!({
            "s": d.s,
            "r": d.r,
            "l": d.ell,
            "pure_type": d.pure_type.to_string(),
            "holds": types,
        });
        doc["structural_balanced"] = json!(balanced_structural(&l, &g, &j)?.balanced);
    }
    Ok((if holds { 0 } else { 1 }, render(&doc)))
}

/// Shear data: `{"dim", "a": [vectors], "omega": [[i, j, vector]], "J", "metric"}`
/// with 1-indexed `i < j`, or `{"algebra": {...}, "J", "metric"}`, or
/// `{"random": {"seed", "profile", "dim"}}`.
fn load_shear(doc: &Value) -> CliResult<(PreShearData, Metric, ComplexStructure)> {
    if let Some(r) = doc.get("random") {
        let seed = r.get("seed").and_then(Value::as_u64).ok_or_else(|| input("random.seed must be an integer"))?;
        let dim = r.get("dim").and_then(Value::as_u64).ok_or_else(|| input("random.dim must be an integer"))? as usize;
        let profile: ShearProfile = r
            .get("profile")
            .and_then(Value::as_str)
            .ok_or_else(|| input("random.profile must be a string"))?
            .parse()?;
        let s = random_complex_shear(seed, profile, dim)?;
        return Ok((s.data, s.g, s.j));
    }
    if let Some(a) = doc.get("algebra") {
        let l = load_algebra_value(a)?;
        let (j, g) = (load_j(doc, l.dim())?, load_metric(doc, l.dim())?);
        return Ok((PreShearData::from_algebra(&l), g, j));
    }
    let dim = doc.get("dim").and_then(Value::as_u64).ok_or_else(|| input("\"dim\" must be a positive integer"))? as usize;
    let a_vectors: Vec<Vector> = doc
        .get("a")
        .and_then(Value::as_array)
        .ok_or_else(|| input("\"a\" must be an array of vectors"))?
        .iter()
        .map(vector)
        .collect::<CliResult<_>>()?;
    if a_vectors.iter().any(|v| v.len() != dim) {
        return Err(input(format!("vectors in \"a\" must have length {dim}")));
    }
    let a = Subspace::span(dim, a_vectors);
    let mut values: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for entry in doc.get("omega").and_then(Value::as_array).ok_or_else(|| input("\"omega\" must be an array"))? {
        let e = entry.as_array().filter(|e| e.len() == 3).ok_or_else(|| input("omega entries are [i, j, vector]"))?;
        let (i, j) = match (e[0].as_u64(), e[1].as_u64()) {
            (Some(i), Some(j)) if 1 <= i && i < j && j as usize <= dim => (i as usize - 1, j as usize - 1),
            _ => return Err(input("omega indices must satisfy 1 ≤ i < j ≤ dim")),
        };
        values.insert((i, j), vector(&e[2])?);
    }
    let omega = VectorValuedTwoForm::from_fn(a.clone(), |i, j| {
        values.get(&(i, j)).cloned().unwrap_or_else(|| crate::linalg::zero_vector(dim))
    })?;
    let data = PreShearData::new(a, omega)?;
    Ok((data, load_metric(doc, dim)?, load_j(doc, dim)?))
}

fn shear(path: &Path, kind: ShearKind, cross_check: bool) -> CliResult<(i32, String)> {
    let (data, g, j) = load_shear(&read_json(path)?)?;
    let status = check_complex_shear(&data, &j)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "command": "shear",
        "complex_shear": { "jacobi": status.jacobi_ok, "integrable": status.integrable_ok },
    });
    if !status.is_complex_shear_data() {
        return Err(input("not complex shear data (Jacobi or integrability fails)"));
    }
    let mut code = 0;
    let v = shear_verdicts(&data, &g, &j)?;
    match kind {
        ShearKind::Build => {
            doc["algebra"] = algebra_json(&build_shear(&data)?);
        }
        ShearKind::All => {
            doc["verdicts"] = verdicts_json(&v);
            if !(v.kahler && v.balanced && v.skt) {
                code = 1;
            }
        }
        k => {
            let kind = match k {
                ShearKind::Kahler => ConditionKind::Kahler,
                ShearKind::Balanced => ConditionKind::Balanced,
                _ => ConditionKind::Skt,
            };
            doc["condition"] = json!(kind.to_string());
            doc["holds"] = json!(v.get(kind));
            if !v.get(kind) {
                code = 1;
            }
        }
    }
    if cross_check {
        let l = build_shear(&data)?;
        let direct = crate::hermitian::classify_metric(&l, &g, &j)?;
        doc["agreement"] = json!(direct == v);
        if direct != v {
            code = 1;
        }
    }
    Ok((code, render(&doc)))
}

fn search_config(path: Option<&Path>) -> CliResult<SearchConfig> {
    let mut c = SearchConfig::from_env()?;
    let Some(path) = path else { return Ok(c) };
    let doc = read_json(path)?;
    let obj = doc.as_object().ok_or_else(|| input("the search configuration must be an object"))?;
    for (k, v) in obj {
        let f = || v.as_f64().ok_or_else(|| input(format!("\"{k}\" must be a number")));
        match k.as_str() {
            "seeds" => {
                c.seeds = v
                    .as_array()
                    .ok_or_else(|| input("\"seeds\" must be an array"))?
                    .iter()
                    .map(|s| s.as_u64().ok_or_else(|| input("seeds are non-negative integers")))
                    .collect::<CliResult<_>>()?
            }
            "max_iterations" => c.max_iterations = v.as_u64().ok_or_else(|| input("\"max_iterations\" must be an integer"))? as usize,
            "tolerance" => c.tolerance = f()?,
            "barrier_initial" => c.barrier_initial = f()?,
            "barrier_decay" => c.barrier_decay = f()?,
            "barrier_floor" => c.barrier_floor = f()?,
            "initial_step" => c.initial_step = f()?,
            "denominators" => {
                c.denominators = v
                    .as_array()
                    .ok_or_else(|| input("\"denominators\" must be an array"))?
                    .iter()
                    .map(|s| s.as_i64().filter(|d| *d > 0).ok_or_else(|| input("denominators are positive integers")))
                    .collect::<CliResult<_>>()?
            }
            other => return Err(input(format!("unknown configuration key \"{other}\""))),
        }
    }
    if c.seeds.is_empty() {
        return Err(input("the seed list is empty"));
    }
    Ok(c)
}

fn search(algebra: &Path, structure: &Path, target: Target, config: Option<&Path>) -> CliResult<(i32, String)> {
    let l = load_algebra(algebra)?;
    let j = load_j(&read_json(structure)?, l.dim())?;
    let config = search_config(config)?;
    let r = search_metric(&l, &j, target.into(), &config)?;
    let doc = json!({
        "schema": SCHEMA,
        "command": "search",
        "target": r.kind.to_string(),
        "status": r.status,
        "summary": r.status.describe(),
        "result": r,
        "exact_metric": r.exact_metric.as_ref().map(|m| matrix_json(m.matrix())),
        "exact_verified": r.exact_verified,
    });
    Ok((if r.exact_verified { 0 } else { 1 }, render(&doc)))
}

fn catalog(action: CatalogAction) -> CliResult<(i32, String)> {
    let entries = witness_lists();
    match action {
        CatalogAction::List => {
            let list: Vec<Value> = entries
                .iter()
                .enumerate()
                .map(|(i, e)| json!({ "index": i, "name": e.name, "kind": e.kind, "differentials": e.differentials }))
                .collect();
            let families: Vec<Value> = FAMILIES
                .iter()
                .map(|f| json!({ "name": f.name, "dim": f.dim, "differentials": f.differentials, "params": f.params, "constraint": f.constraint }))
                .collect();
            Ok((0, render(&json!({ "schema": SCHEMA, "command": "catalog", "entries": list, "families": families }))))
        }
        CatalogAction::Show { name } => {
            let chosen: Vec<_> = match name.parse::<usize>() {
                Ok(i) => entries.get(i).into_iter().collect(),
                Err(_) => entries.iter().filter(|e| e.name == name).collect(),
            };
            if chosen.is_empty() {
                return Err(Error::UnknownName(name).into());
            }
            let mut all_ok = true;
            let mut shown = Vec::new();
            for e in chosen {
                let mut witnesses = Vec::new();
                for (w, (_, expected, actual)) in e.witnesses.iter().zip(e.check()?) {
                    all_ok &= expected == actual;
                    witnesses.push(json!({
                        "label": w.label,
                        "metric": matrix_json(w.metric.matrix()),
                        "expected": verdicts_json(&expected),
                        "computed": verdicts_json(&actual),
                        "reproduced": expected == actual,
                    }));
                }
                shown.push(json!({
                    "name": e.name,
                    "kind": e.kind,
                    "differentials": e.differentials,
                    "algebra": algebra_json(&e.algebra),
                    "J": matrix_json(e.j.matrix()),
                    "witnesses": witnesses,
                    "source": e.source,
                    "notes": e.notes,
                }));
            }
            Ok((if all_ok { 0 } else { 1 }, render(&json!({ "schema": SCHEMA, "command": "catalog", "entries": shown }))))
        }
        CatalogAction::Family { name, params } => {
            let f = family(&name)?;
            let mut b = Bindings::new();
            for p in params {
                let (k, v) = p.split_once('=').ok_or_else(|| input(format!("--param expects name=value, got '{p}'")))?;
                b.insert(k.trim().to_string(), parse_scalar(v).map_err(|e| input(e.to_string()))?);
            }
            let l = named_algebra(&name, &b)?;
            let params: BTreeMap<String, String> = b.iter().map(|(k, v)| (k.clone(), format_scalar(v))).collect();
            let mut doc = algebra_json(&l);
            doc["family"] = json!(f.name);
            doc["params"] = json!(params);
            doc["schema"] = json!(SCHEMA);
            Ok((0, render(&doc)))
        }
    }
}

fn verify(as_json: bool, only: Option<usize>) -> CliResult<(i32, String)> {
    let criteria: Vec<_> = match only {
        Some(id) => vec![crate::verify::criterion(id).ok_or_else(|| input(format!("no criterion {id}")))?],
        None => CRITERIA.iter().collect(),
    };
    let reports: Vec<_> = criteria.iter().map(|c| c.run()).collect();
    let passed = reports.iter().all(|r| r.passed);
    let out = if as_json {
        render(&json!({ "schema": SCHEMA, "command": "verify-paper", "passed": passed, "criteria": reports }))
    } else {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!(
                "[{}] {:>2} {} ({} ms, budget {} ms): {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.elapsed_ms,
                r.budget_ms,
                r.detail
            ));
        }
        s.push_str(&format!("{}/{} criteria passed\n", reports.iter().filter(|r| r.passed).count(), reports.len()));
        s
    };
    Ok((if passed { 0 } else { 1 }, out))
}
