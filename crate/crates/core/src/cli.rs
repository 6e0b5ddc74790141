//! The `ineq` command line.
//!
//! Subcommands: `compute`, `influence`, `estimate`, `simulate`. JSON output
//! carries `"schema": "ineq-report/1"`.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 domain error, 4 a
//! diagnostic check failed.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::engine::{gateaux_numeric_with, GateauxOptions};
use crate::error::Error;
use crate::indexes::IndexKind;
use crate::measure::DiscreteMeasure;
use crate::montecarlo::{self, SimulationConfig};
use crate::survey::{self, SampleData, SampledUnit, SamplingDesign};

pub const SCHEMA: &str = "ineq-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_DIAGNOSTIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ineq",
    version,
    about = "Inequality indexes, influence functions and linearized variance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute index values of a population file.
    Compute(ComputeArgs),
    /// Evaluate the influence function, optionally against a numerical derivative.
    Influence(InfluenceArgs),
    /// Plug-in estimate with linearized variance from a sample file.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo experiment described by a JSON config.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexName {
    Gini,
    Amato,
    Zenga,
    Atkinson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignName {
    Srswor,
    Poisson,
    Bernoulli,
    Stratified,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// CSV with a `y` column and optional `weight` column.
    pub population: PathBuf,
    #[arg(long = "index", value_enum, value_delimiter = ',', required = true)]
    pub indexes: Vec<IndexName>,
    /// Atkinson inequality aversion in [0, 1).
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct InfluenceArgs {
    pub population: PathBuf,
    #[arg(long, value_enum)]
    pub index: IndexName,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Point(s) at which to evaluate the influence function.
    #[arg(long = "at", allow_negative_numbers = true)]
    pub at: Vec<f64>,
    /// Evaluate at every distinct population value.
    #[arg(long)]
    pub all_atoms: bool,
    /// Compare with a central-difference Gateaux derivative.
    #[arg(long)]
    pub check_oracle: bool,
    /// Perturbation size for the oracle (default 1e-5 times the population mass).
    #[arg(long)]
    pub step: Option<f64>,
    /// Largest accepted absolute gap between closed form and oracle.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV with `y` and `pi` columns; optional `label` and `stratum`.
    pub sample: PathBuf,
    #[arg(long, value_enum)]
    pub index: IndexName,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum)]
    pub design: DesignName,
    #[arg(long)]
    pub pop_size: Option<usize>,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON simulation config.
    pub config: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the per-replicate table to this CSV file.
    #[arg(long)]
    pub per_replicate: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) => CliError::parse(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::parse(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(&a, out),
        Command::Influence(a) => cmd_influence(&a, out),
        Command::Estimate(a) => cmd_estimate(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn index_kind(name: IndexName, epsilon: Option<f64>) -> CliResult<IndexKind> {
    let kind = match name {
        IndexName::Gini => IndexKind::Gini,
        IndexName::Amato => IndexKind::Amato,
        IndexName::Zenga => IndexKind::Zenga,
        IndexName::Atkinson => IndexKind::Atkinson {
            epsilon: epsilon.ok_or_else(|| CliError::parse("--index atkinson needs --epsilon"))?,
        },
    };
    // a bad flag value is a usage error, not a data error
    kind.validate()
        .map_err(|e| CliError::parse(e.to_string()))?;
    Ok(kind)
}

fn index_json(kind: IndexKind) -> Value {
    match kind {
        IndexKind::Atkinson { epsilon } => json!({"name": "atkinson", "epsilon": epsilon}),
        other => json!({"name": other.name()}),
    }
}

/// Six significant digits for human-readable output.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationRow {
    pub line: u64,
    pub y: f64,
    pub weight: f64,
}

fn read_csv(path: &Path) -> CliResult<csv::Reader<fs::File>> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::parse(format!("cannot open {}: {e}", path.display())))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn column(headers: &csv::StringRecord, name: &str) -> Option<usize> {
    headers.iter().position(|h| h == name)
}

fn parse_field(record: &csv::StringRecord, idx: usize, name: &str, line: u64) -> CliResult<f64> {
    let raw = record.get(idx).unwrap_or("");
    let v: f64 = raw
        .parse()
        .map_err(|_| CliError::parse(format!("line {line}: invalid {name} value '{raw}'")))?;
    if !v.is_finite() {
        return Err(CliError::parse(format!(
            "line {line}: {name} value '{raw}' is not finite"
        )));
    }
    Ok(v)
}

fn record_line(record: &csv::StringRecord, fallback: u64) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(fallback)
}

/// Reads a population CSV: header row, required `y`, optional `weight > 0`.
pub fn read_population(path: &Path) -> CliResult<Vec<PopulationRow>> {
    let mut reader = read_csv(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?
        .clone();
    let y_col = column(&headers, "y").ok_or_else(|| {
        CliError::parse(format!("{}: missing required column 'y'", path.display()))
    })?;
    let w_col = column(&headers, "weight");
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
        let line = record_line(&record, i as u64 + 2);
        let y = parse_field(&record, y_col, "y", line)?;
        let weight = match w_col {
            Some(c) => {
                let w = parse_field(&record, c, "weight", line)?;
                if w <= 0.0 {
                    return Err(CliError::parse(format!(
                        "line {line}: weight {w} must be > 0"
                    )));
                }
                w
            }
            None => 1.0,
        };
        rows.push(PopulationRow { line, y, weight });
    }
    if rows.is_empty() {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

fn check_rows(kind: IndexKind, rows: impl IntoIterator<Item = (u64, f64)>) -> CliResult<()> {
    for (line, y) in rows {
        if !kind.admits_value(y) {
            let need = match kind {
                IndexKind::Gini => "y >= 0",
                _ => "y > 0",
            };
            return Err(CliError::domain(format!(
                "line {line}: y = {y} is outside the domain of {} (needs {need})",
                kind.name()
            )));
        }
    }
    Ok(())
}

fn population_measure(rows: &[PopulationRow]) -> CliResult<DiscreteMeasure> {
    Ok(DiscreteMeasure::new(rows.iter().map(|r| (r.y, r.weight)))?)
}

fn write_json(out: &mut dyn Write, mut body: Map<String, Value>, command: &str) -> CliResult<()> {
    body.insert("schema".into(), json!(SCHEMA));
    body.insert("command".into(), json!(command));
    let text = serde_json::to_string_pretty(&Value::Object(body))
        .map_err(|e| CliError::domain(format!("cannot serialize report: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("report is a JSON object"),
    }
}

pub fn cmd_compute(args: &ComputeArgs, out: &mut dyn Write) -> CliResult<i32> {
    let rows = read_population(&args.population)?;
    let kinds: Vec<IndexKind> = args
        .indexes
        .iter()
        .map(|&name| index_kind(name, args.epsilon))
        .collect::<CliResult<_>>()?;
    for &kind in &kinds {
        check_rows(kind, rows.iter().map(|r| (r.line, r.y)))?;
    }
    let m = population_measure(&rows)?;
    let mut results = Vec::with_capacity(kinds.len());
    for &kind in &kinds {
        results.push((kind, kind.value(&m)?));
    }

    if args.json {
        let indexes: Vec<Value> = results
            .iter()
            .map(|&(kind, value)| {
                let mut entry = object(index_json(kind));
                entry.insert("value".into(), json!(value));
                Value::Object(entry)
            })
            .collect();
        let body = object(json!({
            "population": {"rows": rows.len(), "mass": m.mass(), "total": m.total()},
            "indexes": indexes,
        }));
        write_json(out, body, "compute")?;
    } else {
        for (kind, value) in results {
            writeln!(out, "{kind}\t{}", format_sig6(value))?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_influence(args: &InfluenceArgs, out: &mut dyn Write) -> CliResult<i32> {
    let kind = index_kind(args.index, args.epsilon)?;
    if args.at.is_empty() && !args.all_atoms {
        return Err(CliError::parse("give --at <u> or --all-atoms"));
    }
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(CliError::parse(format!("--tol {} must be >= 0", args.tol)));
    }
    let rows = read_population(&args.population)?;
    check_rows(kind, rows.iter().map(|r| (r.line, r.y)))?;
    let m = population_measure(&rows)?;
    let value = kind.value(&m)?;
    let influence = kind.influence_function(&m)?;
    let composition = kind.composition()?;
    let options = GateauxOptions {
        step: args.step,
        richardson: true,
    };

    let mut points: Vec<f64> = args.at.clone();
    if args.all_atoms {
        points.extend_from_slice(m.values());
    }

    struct Point {
        u: f64,
        influence: f64,
        oracle: Option<(f64, f64)>,
    }
    let mut table = Vec::with_capacity(points.len());
    for &u in &points {
        let z = influence.at(u)?;
        let oracle = if args.check_oracle {
            let numeric = gateaux_numeric_with(&composition, u, &m, options)?;
            Some((numeric, (numeric - z).abs()))
        } else {
            None
        };
        table.push(Point {
            u,
            influence: z,
            oracle,
        });
    }
    let max_gap = table
        .iter()
        .filter_map(|p| p.oracle.map(|(_, gap)| gap))
        .fold(None, |acc: Option<f64>, g| {
            Some(acc.map_or(g, |a| a.max(g)))
        });
    let failed = max_gap.is_some_and(|g| g > args.tol);

    if args.json {
        let pts: Vec<Value> = table
            .iter()
            .map(|p| {
                let mut entry = object(json!({"u": p.u, "influence": p.influence}));
                if let Some((numeric, gap)) = p.oracle {
                    entry.insert("oracle".into(), json!(numeric));
                    entry.insert("gap".into(), json!(gap));
                }
                Value::Object(entry)
            })
            .collect();
        let mut body = object(json!({
            "index": index_json(kind),
            "value": value,
            "points": pts,
        }));
        if args.check_oracle {
            body.insert("max_gap".into(), json!(max_gap));
            body.insert("tol".into(), json!(args.tol));
            body.insert(
                "step".into(),
                json!(args
                    .step
                    .unwrap_or(crate::engine::DEFAULT_RELATIVE_STEP * m.mass())),
            );
            body.insert("passed".into(), json!(!failed));
        }
        write_json(out, body, "influence")?;
    } else {
        if args.check_oracle {
            writeln!(out, "u\tinfluence\toracle\tgap")?;
        } else {
            writeln!(out, "u\tinfluence")?;
        }
        for p in &table {
            match p.oracle {
                Some((numeric, gap)) => writeln!(
                    out,
                    "{}\t{}\t{}\t{:.3e}",
                    format_sig6(p.u),
                    format_sig6(p.influence),
                    format_sig6(numeric),
                    gap
                )?,
                None => writeln!(out, "{}\t{}", format_sig6(p.u), format_sig6(p.influence))?,
            }
        }
    }
    if failed {
        return Err(CliError {
            code: EXIT_DIAGNOSTIC,
            message: format!(
                "oracle gap {:.3e} exceeds --tol {:.3e}",
                max_gap.unwrap_or(f64::NAN),
                args.tol
            ),
        });
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub line: u64,
    pub y: f64,
    pub pi: f64,
    pub label: Option<String>,
    pub stratum: Option<String>,
}

/// Reads a sample CSV: header row, required `y` and `pi` in (0, 1],
/// optional `label` and `stratum`.
pub fn read_sample(path: &Path) -> CliResult<Vec<SampleRow>> {
    let mut reader = read_csv(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?
        .clone();
    let missing = |name: &str| {
        CliError::parse(format!(
            "{}: missing required column '{name}'",
            path.display()
        ))
    };
    let y_col = column(&headers, "y").ok_or_else(|| missing("y"))?;
    let pi_col = column(&headers, "pi").ok_or_else(|| missing("pi"))?;
    let label_col = column(&headers, "label");
    let stratum_col = column(&headers, "stratum");
    let mut rows = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
        let line = record_line(&record, i as u64 + 2);
        let y = parse_field(&record, y_col, "y", line)?;
        let pi = parse_field(&record, pi_col, "pi", line)?;
        if !(pi > 0.0 && pi <= 1.0) {
            return Err(CliError::parse(format!(
                "line {line}: pi = {pi} must lie in (0, 1]"
            )));
        }
        let text = |c: Option<usize>| c.map(|c| record.get(c).unwrap_or("").to_string());
        let label = text(label_col);
        if let Some(l) = &label {
            if let Some(first) = seen.insert(l.clone(), line) {
                return Err(CliError::parse(format!(
                    "line {line}: label '{l}' already used on line {first}"
                )));
            }
        }
        rows.push(SampleRow {
            line,
            y,
            pi,
            label,
            stratum: text(stratum_col),
        });
    }
    if rows.is_empty() {
        return Err(CliError::parse(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Rebuilds a design that reproduces the file's first-order probabilities
/// and determines the joint ones, and maps each row to a design unit.
pub fn sample_from_rows(
    rows: &[SampleRow],
    design: DesignName,
    pop_size: Option<usize>,
) -> CliResult<SampleData> {
    let n = rows.len();
    let sequential = |d: SamplingDesign| -> CliResult<SampleData> {
        let units = rows
            .iter()
            .enumerate()
            .map(|(i, r)| SampledUnit {
                label: i,
                y: r.y,
                pi: d.first_order(i),
            })
            .collect();
        Ok(SampleData::new(units, Some(Arc::new(d)))?)
    };
    match design {
        DesignName::Srswor => {
            let big_n = pop_size.ok_or_else(|| {
                CliError::domain("srswor joint inclusion probabilities need --pop-size")
            })?;
            if n > big_n {
                return Err(CliError::domain(format!(
                    "sample has {n} rows but --pop-size is {big_n}"
                )));
            }
            let expected = n as f64 / big_n as f64;
            if let Some(r) = rows.iter().find(|r| relative_gap(r.pi, expected) > 1e-9) {
                return Err(CliError::domain(format!(
                    "line {}: pi = {} but srswor with n = {n} rows and N = {big_n} gives {expected}",
                    r.line, r.pi
                )));
            }
            let d = SamplingDesign::srswor(big_n, n)?;
            let units = rows
                .iter()
                .enumerate()
                .map(|(i, r)| SampledUnit {
                    label: i,
                    y: r.y,
                    pi: d.first_order(i),
                })
                .collect();
            Ok(SampleData::new(units, Some(Arc::new(d)))?)
        }
        DesignName::Poisson => sequential(SamplingDesign::poisson(
            rows.iter().map(|r| r.pi).collect(),
        )?),
        DesignName::Bernoulli => {
            let p = rows[0].pi;
            if let Some(r) = rows.iter().find(|r| relative_gap(r.pi, p) > 1e-12) {
                return Err(CliError::domain(format!(
                    "line {}: bernoulli needs a common pi, found {} and {p}",
                    r.line, r.pi
                )));
            }
            let big_n = pop_size.unwrap_or(n).max(n);
            let d = SamplingDesign::bernoulli(big_n, p)?;
            sequential(d)
        }
        DesignName::Stratified => stratified_sample(rows, pop_size),
    }
}

fn stratified_sample(rows: &[SampleRow], pop_size: Option<usize>) -> CliResult<SampleData> {
    // stratum name -> row indices, in order of first appearance
    let mut order: Vec<String> = Vec::new();
    let mut members: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        let s = r.stratum.clone().ok_or_else(|| {
            CliError::domain("stratified joint inclusion probabilities need a 'stratum' column")
        })?;
        if !members.contains_key(&s) {
            order.push(s.clone());
        }
        members.entry(s).or_default().push(i);
    }

    let mut strata = Vec::new();
    let mut sample_sizes = Vec::new();
    let mut labels = vec![0usize; rows.len()];
    for (h, name) in order.iter().enumerate() {
        let idx = &members[name];
        let n_h = idx.len();
        let pi = rows[idx[0]].pi;
        if let Some(&i) = idx.iter().find(|&&i| relative_gap(rows[i].pi, pi) > 1e-12) {
            return Err(CliError::domain(format!(
                "line {}: stratum '{name}' mixes pi = {} and {pi}",
                rows[i].line, rows[i].pi
            )));
        }
        let size = n_h as f64 / pi;
        let big_n_h = size.round();
        if (size - big_n_h).abs() > 1e-6 * size {
            return Err(CliError::domain(format!(
                "stratum '{name}': {n_h} rows with pi = {pi} imply a non-integer stratum size {size}"
            )));
        }
        let offset = strata.len();
        for (k, &i) in idx.iter().enumerate() {
            labels[i] = offset + k;
        }
        strata.extend(std::iter::repeat_n(h, big_n_h as usize));
        sample_sizes.push(n_h);
    }
    if let Some(big_n) = pop_size {
        if big_n != strata.len() {
            return Err(CliError::domain(format!(
                "strata sizes implied by pi add up to {}, not --pop-size {big_n}",
                strata.len()
            )));
        }
    }
    let d = SamplingDesign::stratified_srswor(strata, sample_sizes)?;
    let units = rows
        .iter()
        .zip(&labels)
        .map(|(r, &label)| SampledUnit {
            label,
            y: r.y,
            pi: d.first_order(label),
        })
        .collect();
    Ok(SampleData::new(units, Some(Arc::new(d)))?)
}

pub fn cmd_estimate(args: &EstimateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let kind = index_kind(args.index, args.epsilon)?;
    if !(args.level > 0.0 && args.level < 1.0) {
        return Err(CliError::parse(format!(
            "--level {} must lie in (0, 1)",
            args.level
        )));
    }
    let rows = read_sample(&args.sample)?;
    check_rows(kind, rows.iter().map(|r| (r.line, r.y)))?;
    let sample = sample_from_rows(&rows, args.design, args.pop_size)?;
    let report = survey::estimate_with_variance(kind, &sample, args.level)?;
    let mut body = object(serde_json::to_value(&report).expect("report serializes"));
    body.insert("index".into(), index_json(kind));
    body.insert(
        "design".into(),
        json!(sample.design().map(|d| d.name()).unwrap_or("unknown")),
    );
    write_json(out, body, "estimate")?;
    Ok(EXIT_OK)
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", args.config.display())))?;
    let mut config: SimulationConfig = serde_json::from_str(&text).map_err(|e| {
        CliError::parse(format!("{}: malformed config: {e}", args.config.display()))
    })?;
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    let (report, rows) = montecarlo::run_detailed(&config, args.threads)?;
    if let Some(path) = &args.per_replicate {
        let file = fs::File::create(path)
            .map_err(|e| CliError::parse(format!("cannot create {}: {e}", path.display())))?;
        montecarlo::write_csv(&rows, file)
            .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display())))?;
    }
    let body = object(serde_json::to_value(&report).expect("report serializes"));
    write_json(out, body, "simulate")?;
    Ok(EXIT_OK)
}
