//! Command-line front end for the `dwconst` engine.
//!
//! [`run_args`] parses a command line and [`run`] executes a parsed
//! [`CliRequest`]; both return an [`Outcome`] instead of printing, so the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 on success, 2 for malformed norm specs or arguments, 3 for
//! internal errors and results that violate a known bound.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use dwconst::birkhoff::{baronti_check, orthogonal_companions};
use dwconst::oracle::{oracle_dw, oracle_dwb_polygon, OracleConfig};
use dwconst::{
    build_norm, check_equivalences, compute_dw_formulation, compute_dwb, compute_ib, dual_experiment, objective_value,
    sphere_polyline, unit_vector, validate_norm, DWResult, EngineConfig, Error, Formulation, NormHandle, NormSpec,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Slack on the bounds `2 <= DW <= 4` and `1/2 <= IB <= 1`.
pub const BOUND_EPS: f64 = 1e-6;
/// Allowed drift when a result is re-evaluated at its witness.
pub const WITNESS_TOL: f64 = 1e-9;

const DEFAULT_SPHERE_POINTS: usize = 360;
const DEFAULT_ORTHO_POINTS: usize = 8;
const DEFAULT_VALIDATE_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// DW(X) in one formulation.
    Dw,
    /// DW_B(X), the supremum over Birkhoff-orthogonal pairs.
    Dwb,
    /// IB(X), the isosceles-Birkhoff constant.
    Ib,
    /// All six formulations of DW(X) and their largest gap.
    Equiv,
    /// Birkhoff-orthogonal companions of sample directions.
    Ortho,
    /// DW(X) against DW(X*).
    Dual,
    /// Points of the unit sphere.
    Sphere,
    /// Sampled check of the norm axioms.
    Validate,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Dw => "dw",
            Command::Dwb => "dwb",
            Command::Ib => "ib",
            Command::Equiv => "equiv",
            Command::Ortho => "ortho",
            Command::Dual => "dual",
            Command::Sphere => "sphere",
            Command::Validate => "validate",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Command-line arguments as parsed by clap.
#[derive(Debug, Parser)]
#[command(name = "dwconst", version, about = "Dunkl-Williams and related constants of planar normed spaces")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Norm spec, e.g. `lp:inf`, `mixed:2,1`, `regular:12`, `dual(mixed:2,1)`.
    #[arg(long)]
    pub norm: String,
    /// Angular grid size (angleGridN).
    #[arg(long)]
    pub grid: Option<String>,
    /// Parameter grid intervals (tGridN).
    #[arg(long = "t-grid")]
    pub t_grid: Option<String>,
    /// Distance kept from the ends of the parameter domains (tMargin).
    #[arg(long = "t-margin", allow_hyphen_values = true)]
    pub t_margin: Option<String>,
    /// Refinement sweeps (refineSweeps).
    #[arg(long)]
    pub refine: Option<String>,
    /// Formulation for `dw`: triple or 1..5.
    #[arg(long)]
    pub formulation: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Also run the brute-force oracle and report the gap.
    #[arg(long)]
    pub oracle: bool,
    /// Seed for `validate`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Point count for `sphere` and `ortho`, sample count for `validate`.
    #[arg(short = 'n')]
    pub n: Option<usize>,
}

/// A fully parsed request.
#[derive(Clone, Debug, PartialEq)]
pub struct CliRequest {
    pub command: Command,
    pub norm_spec: String,
    /// `(field, value)` pairs naming [`EngineConfig`] or [`OracleConfig`]
    /// fields in their serialized spelling.
    pub config_overrides: Vec<(String, String)>,
    pub output_format: OutputFormat,
    pub oracle_flag: bool,
    pub formulation: Option<String>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
}

impl From<Args> for CliRequest {
    fn from(a: Args) -> Self {
        let config_overrides = [("angleGridN", a.grid), ("tGridN", a.t_grid), ("tMargin", a.t_margin), ("refineSweeps", a.refine)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
            .collect();
        CliRequest {
            command: a.command,
            norm_spec: a.norm,
            config_overrides,
            output_format: a.format,
            oracle_flag: a.oracle,
            formulation: a.formulation,
            seed: a.seed,
            points: a.n,
        }
    }
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(_) | Error::Argument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// A finished computation: the JSON record, an optional table for CSV, and
/// any bound the result violates.
struct Report {
    fields: Map<String, Value>,
    table: Option<(Vec<&'static str>, Vec<Vec<f64>>)>,
    violation: Option<String>,
}

impl Report {
    fn new() -> Self {
        Report { fields: Map::new(), table: None, violation: None }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    fn flag(&mut self, msg: String) {
        if self.violation.is_none() {
            self.violation = Some(msg);
        }
    }
}

/// Parses `args` (including the program name) and runs the request.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(a) => run(&a.into()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SPEC } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(req: &CliRequest) -> Outcome {
    let start = Instant::now();
    let result = execute(req);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(mut report) => {
            report.set("elapsedMs", json!(elapsed_ms));
            let stdout = match render(req, &report) {
                Ok(s) => s,
                Err(msg) => return Outcome { code: EXIT_SPEC, stdout: String::new(), stderr: format!("error: {msg}\n") },
            };
            match report.violation {
                Some(msg) => Outcome { code: EXIT_INTERNAL, stdout, stderr: format!("error: invariant violated: {msg}\n") },
                None => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
            }
        }
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_SPEC, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Internal(msg)) => Outcome { code: EXIT_INTERNAL, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

/// Applies overrides to the default configurations through their serialized
/// form, so field names and value types are checked by serde.
pub fn apply_overrides(overrides: &[(String, String)]) -> Result<(EngineConfig, OracleConfig), String> {
    let mut engine = serde_json::to_value(EngineConfig::default()).map_err(|e| e.to_string())?;
    let mut oracle = serde_json::to_value(OracleConfig::default()).map_err(|e| e.to_string())?;
    for (key, raw) in overrides {
        let value: Value =
            serde_json::from_str(raw.trim()).map_err(|_| format!("value '{raw}' for '{key}' is not a number"))?;
        let target = if engine.get(key).is_some() {
            &mut engine
        } else if oracle.get(key).is_some() {
            &mut oracle
        } else {
            return Err(format!("unknown config field '{key}'"));
        };
        target[key.as_str()] = value;
    }
    let engine: EngineConfig = serde_json::from_value(engine).map_err(|e| format!("bad engine config: {e}"))?;
    let oracle: OracleConfig = serde_json::from_value(oracle).map_err(|e| format!("bad oracle config: {e}"))?;
    engine.validate().map_err(|e| e.to_string())?;
    oracle.validate().map_err(|e| e.to_string())?;
    Ok((engine, oracle))
}

fn execute(req: &CliRequest) -> Result<Report, Failure> {
    let spec: NormSpec = req.norm_spec.parse()?;
    let norm = build_norm(&spec)?;
    let (cfg, ocfg) = apply_overrides(&req.config_overrides).map_err(Failure::Usage)?;
    if req.formulation.is_some() && req.command != Command::Dw {
        return Err(Failure::Usage("--formulation only applies to dw".into()));
    }
    if req.oracle_flag && !matches!(req.command, Command::Dw | Command::Dwb) {
        return Err(Failure::Usage("--oracle only applies to dw and dwb".into()));
    }
    if req.seed.is_some() && req.command != Command::Validate {
        return Err(Failure::Usage("--seed only applies to validate".into()));
    }
    if req.points == Some(0) {
        return Err(Failure::Usage("-n must be positive".into()));
    }

    let mut r = Report::new();
    r.set("command", json!(req.command.name()));
    r.set("norm", json!(spec.to_string()));
    match req.command {
        Command::Dw => {
            let f = match &req.formulation {
                Some(s) => parse_dw_formulation(s)?,
                None => Formulation::Triple,
            };
            let res = compute_dw_formulation(&norm, f, &cfg)?;
            put_result(&mut r, &norm, &res, (2.0, 4.0))?;
            if req.oracle_flag {
                let o = oracle_dw(&norm, &ocfg)?;
                put_oracle(&mut r, o, res.value, &ocfg);
            }
        }
        Command::Dwb => {
            let res = compute_dwb(&norm, &cfg)?;
            put_result(&mut r, &norm, &res, (2.0, 4.0))?;
            if req.oracle_flag {
                if norm.polygon().is_none() {
                    return Err(Failure::Usage("the DW_B oracle needs a polygon or regular spec".into()));
                }
                let o = oracle_dwb_polygon(&norm, &ocfg)?;
                put_oracle(&mut r, o, res.value, &ocfg);
            }
        }
        Command::Ib => {
            let res = compute_ib(&norm, &cfg)?;
            put_result(&mut r, &norm, &res, (0.5, 1.0))?;
        }
        Command::Equiv => {
            let rep = check_equivalences(&norm, &cfg)?;
            let mut values = Map::new();
            let mut rows = Vec::new();
            for res in &rep.results {
                values.insert(res.formulation.to_string(), json!(res.value));
                rows.push(vec![res.value]);
                check_bounds(&mut r, &format!("{}", res.formulation), res.value, (2.0, 4.0));
            }
            r.set("value", json!(rep.results[0].value));
            r.set("formulationValues", Value::Object(values));
            r.set("maxDeviation", json!(rep.max_deviation));
            r.set("tolerance", json!(rep.tolerance));
            r.set("pass", json!(rep.pass));
            r.set("config", json!(cfg));
            if !rep.pass {
                r.flag(format!("formulations differ by {:e} > {:e}", rep.max_deviation, rep.tolerance));
            }
            r.table = Some((vec!["triple", "dw1", "dw2", "dw3", "dw4", "dw5"], vec![rows.concat()]));
        }
        Command::Ortho => {
            let n = req.points.unwrap_or(DEFAULT_ORTHO_POINTS);
            let mut pairs = Vec::new();
            let mut rows = Vec::new();
            for k in 0..n {
                let u = unit_vector(&norm, std::f64::consts::PI * k as f64 / n as f64);
                for p in orthogonal_companions(&norm, u, cfg.angle_grid_n)? {
                    let (ok, defect) = baronti_check(&norm, p.u, p.v)?;
                    pairs.push(json!({"u": p.u, "v": p.v, "defect": p.defect, "baronti": ok, "barontiDefect": defect}));
                    rows.push(vec![p.u.x1, p.u.x2, p.v.x1, p.v.x2, p.defect]);
                }
            }
            r.set("pairs", Value::Array(pairs));
            r.table = Some((vec!["u1", "u2", "v1", "v2", "defect"], rows));
        }
        Command::Dual => {
            let d = dual_experiment(&norm, &cfg)?;
            check_bounds(&mut r, "DW(X)", d.primal.value, (2.0, 4.0));
            check_bounds(&mut r, "DW(X*)", d.dual.value, (2.0, 4.0));
            r.set("dualNorm", json!(d.dual_spec.to_string()));
            r.set("value", json!(d.dual.value));
            r.set("witness", json!(d.dual.witness));
            r.set("boundaryFlag", json!(d.dual.boundary_flag));
            r.set("primalValue", json!(d.primal.value));
            r.set("primalWitness", json!(d.primal.witness));
            r.set("primalBoundaryFlag", json!(d.primal.boundary_flag));
            r.set("gap", json!(d.gap));
            r.set("config", json!(cfg));
        }
        Command::Sphere => {
            let n = req.points.unwrap_or(DEFAULT_SPHERE_POINTS);
            let pts = sphere_polyline(&norm, n);
            r.set("points", json!(pts));
            r.table = Some((vec!["x1", "x2"], pts.iter().map(|p| vec![p.x1, p.x2]).collect()));
        }
        Command::Validate => {
            let samples = req.points.unwrap_or(DEFAULT_VALIDATE_SAMPLES);
            let rep = validate_norm(&norm, samples, req.seed.unwrap_or(0));
            r.set("seed", json!(req.seed.unwrap_or(0)));
            if let Value::Object(m) = json!(rep) {
                r.fields.extend(m);
            }
        }
    }
    Ok(r)
}

fn parse_dw_formulation(s: &str) -> Result<Formulation, Failure> {
    let f: Formulation = s.parse()?;
    if !Formulation::DW_FAMILY.contains(&f) {
        return Err(Failure::Usage(format!("unknown formulation '{s}'; expected triple or 1..5")));
    }
    Ok(f)
}

fn check_bounds(r: &mut Report, what: &str, value: f64, (lo, hi): (f64, f64)) {
    if !(value >= lo - BOUND_EPS && value <= hi + BOUND_EPS) {
        r.flag(format!("{what} = {value} lies outside [{lo}, {hi}]"));
    }
}

fn put_result(r: &mut Report, norm: &NormHandle, res: &DWResult, bounds: (f64, f64)) -> Result<(), Failure> {
    check_bounds(r, &res.formulation.to_string(), res.value, bounds);
    let again = objective_value(norm, res.formulation, &res.witness, &res.config)?;
    if !((again - res.value).abs() <= WITNESS_TOL) {
        r.flag(format!("witness re-evaluates to {again}, reported {}", res.value));
    }
    r.set("formulation", json!(res.formulation));
    r.set("value", json!(res.value));
    r.set("witness", json!(res.witness));
    r.set("boundaryFlag", json!(res.boundary_flag));
    r.set("config", json!(res.config));
    Ok(())
}

fn put_oracle(r: &mut Report, oracle: f64, value: f64, ocfg: &OracleConfig) {
    r.set("oracle", json!({"value": oracle, "gap": value - oracle, "config": ocfg}));
}

fn render(req: &CliRequest, r: &Report) -> Result<String, String> {
    match req.output_format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&r.fields).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Text => {
            let mut flat = Vec::new();
            flatten("", &Value::Object(r.fields.clone()), false, &mut flat);
            let width = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in flat {
                let _ = writeln!(s, "{k:width$}  {v}");
            }
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            match &r.table {
                Some((header, rows)) => {
                    let _ = writeln!(s, "{}", header.join(","));
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
                        let _ = writeln!(s, "{}", cells.join(","));
                    }
                }
                None => {
                    let mut flat = Vec::new();
                    flatten("", &Value::Object(r.fields.clone()), true, &mut flat);
                    let keys: Vec<String> = flat.iter().map(|(k, _)| csv_field(k)).collect();
                    let vals: Vec<String> = flat.iter().map(|(_, v)| csv_field(v)).collect();
                    let _ = writeln!(s, "{}", keys.join(","));
                    let _ = writeln!(s, "{}", vals.join(","));
                }
            }
            Ok(s)
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Flattens nested JSON into dotted keys; numbers use 12 significant digits.
/// Vectors print as `(x1 x2)`, or as two `.x1`, `.x2` entries with `split`.
fn flatten(prefix: &str, v: &Value, split: bool, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, split, out);
            }
        }
        Value::Array(xs) if xs.len() == 2 && xs.iter().all(Value::is_number) => {
            let a = sig12(xs[0].as_f64().unwrap_or(f64::NAN));
            let b = sig12(xs[1].as_f64().unwrap_or(f64::NAN));
            if split {
                out.push((key("x1"), a));
                out.push((key("x2"), b));
            } else {
                out.push((prefix.to_string(), format!("({a} {b})")));
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, split, out);
            }
        }
        Value::Number(n) => {
            let s = match (n.as_u64(), n.as_i64(), n.as_f64()) {
                (Some(u), _, _) => u.to_string(),
                (_, Some(i), _) => i.to_string(),
                (_, _, Some(f)) => sig12(f),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), s));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// `x` rounded to 12 significant digits, printed without trailing zeros.
/// Magnitudes outside `[1e-4, 1e15)` use exponent notation.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded.abs() < 1e-4 || rounded.abs() >= 1e15 {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}
