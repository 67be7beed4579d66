//! Command implementations behind the `vknot` binary, and the table report.
//!
//! Every command returns a [`CmdOutput`] instead of printing, so the binary
//! stays a thin argument parser and the commands are testable in-process.
//!
//! Table files hold one entry per line, `name<TAB>code`; lines starting with
//! `#` and blank lines are skipped.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrow::{self, ArrowError};
use crate::colorability::{self, ColorabilityVerdict};
use crate::gauss::GaussCode;
use crate::moves::{self, MoveKind, WalkConfig};
use crate::parity::{self, ParityError};
use crate::poly::ArrowPoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;
pub const EXIT_FUZZ_FAILED: i32 = 4;

/// Environment variable holding the worker thread count (default: all cores).
pub const THREADS_ENV: &str = "VKNOT_THREADS";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, stderr: String) -> Self {
        CmdOutput { stdout: String::new(), stderr, code }
    }
}

fn parse_arg(text: &str) -> Result<GaussCode, CmdOutput> {
    text.parse::<GaussCode>()
        .map_err(|e| CmdOutput::fail(EXIT_PARSE, format!("error: invalid Gauss code: {e}\n")))
}

fn arrow_failure(e: ArrowError) -> CmdOutput {
    let code = match e {
        ArrowError::TooLarge { .. } => EXIT_TOO_LARGE,
        ArrowError::OddLength(_) => EXIT_IO,
    };
    CmdOutput::fail(code, format!("error: {e}\n"))
}

/// Prints the (normalized) arrow polynomial, as canonical text or JSON.
pub fn cmd_arrow(code_text: &str, normalized: bool, as_json: bool, limit: usize) -> CmdOutput {
    let code = match parse_arg(code_text) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let result = if normalized {
        arrow::arrow_normalized_with_limit(&code, limit)
    } else {
        arrow::arrow_bracket_with_limit(&code, limit)
    };
    match result {
        Ok(p) if as_json => CmdOutput::ok(format!("{}\n", p.to_json())),
        Ok(p) => CmdOutput::ok(format!("{p}\n")),
        Err(e) => arrow_failure(e),
    }
}

pub fn cmd_oddwrithe(code_text: &str) -> CmdOutput {
    let code = match parse_arg(code_text) {
        Ok(c) => c,
        Err(out) => return out,
    };
    match parity::odd_writhe(&code) {
        Ok(j) => CmdOutput::ok(format!("{j}\n")),
        Err(e @ ParityError::NotAKnot(_)) | Err(e @ ParityError::UnknownCrossing(_)) => {
            CmdOutput::fail(EXIT_PARSE, format!("error: {e}\n"))
        }
    }
}

/// Prints the verdict JSON.
pub fn cmd_colorability(code_text: &str) -> CmdOutput {
    let code = match parse_arg(code_text) {
        Ok(c) => c,
        Err(out) => return out,
    };
    match colorability::criteria_verdict(&code) {
        Ok(v) => CmdOutput::ok(format!("{}\n", v.to_json())),
        Err(e) => arrow_failure(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableLine {
    pub line: usize,
    pub name: String,
    pub code: GaussCode,
}

/// Splits a table file into parsed entries and per-line errors.
pub fn parse_table(text: &str) -> (Vec<TableLine>, Vec<TableError>) {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    let mut names = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((name, code)) = raw.split_once('\t') else {
            errors.push(TableError { line, message: "expected `name<TAB>code`".into() });
            continue;
        };
        let name = name.trim().to_string();
        if name.is_empty() {
            errors.push(TableError { line, message: "empty name".into() });
            continue;
        }
        if !names.insert(name.clone()) {
            errors.push(TableError { line, message: format!("duplicate name {name}") });
            continue;
        }
        match code.parse::<GaussCode>() {
            Ok(code) => entries.push(TableLine { line, name, code }),
            Err(e) => errors.push(TableError { line, message: e.to_string() }),
        }
    }
    (entries, errors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub code: GaussCode,
    pub writhe: i32,
    /// Only for knots.
    pub odd_writhe: Option<i32>,
    pub arrow_normalized: ArrowPoly,
    pub as_set: BTreeSet<u32>,
    pub verdict: ColorabilityVerdict,
}

impl TableEntry {
    pub fn compute(name: &str, code: &GaussCode) -> Result<Self, ArrowError> {
        let normalized = arrow::arrow_normalized(code)?;
        let verdict = colorability::verdict_from_parts(code, &normalized);
        Ok(TableEntry {
            name: name.to_string(),
            code: code.clone(),
            writhe: code.writhe(),
            odd_writhe: parity::odd_writhe(code).ok(),
            as_set: normalized.k_degree_set(),
            arrow_normalized: normalized,
            verdict,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "code": self.code.to_string(),
            "writhe": self.writhe,
            "odd_writhe": self.odd_writhe,
            "arrow_poly": self.arrow_normalized.to_string(),
            "as_set": self.as_set,
            "verdict": self.verdict.to_json(),
        })
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            name: self.name.clone(),
            writhe: self.writhe,
            odd_writhe: self.odd_writhe,
            arrow_poly: self.arrow_normalized.to_string(),
            as_set: self.as_set.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
            verdict: self.verdict.name().to_string(),
            obstructions: self
                .verdict
                .obstructions()
                .iter()
                .map(|o| format!("{}: {}", o.criterion(), o.detail()))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

pub const CSV_COLUMNS: [&str; 7] = ["name", "writhe", "odd_writhe", "arrow_poly", "as_set", "verdict", "obstructions"];

/// One CSV line; `as_set` is space separated, obstructions are `; ` separated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub name: String,
    pub writhe: i32,
    pub odd_writhe: Option<i32>,
    pub arrow_poly: String,
    pub as_set: String,
    pub verdict: String,
    pub obstructions: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub entries: Vec<TableEntry>,
    pub errors: Vec<TableError>,
}

impl TableReport {
    /// Counts per verdict name.
    pub fn summary(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::from([("Colorable", 0), ("NotColorable", 0), ("Unknown", 0)]);
        for e in &self.entries {
            *counts.entry(e.verdict.name()).or_default() += 1;
        }
        counts
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter().map(TableEntry::to_json).collect::<Vec<_>>(),
            "errors": self.errors,
            "summary": self.summary(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.entries.is_empty() {
            w.write_record(CSV_COLUMNS).expect("in-memory csv write");
        }
        for e in &self.entries {
            w.serialize(e.csv_row()).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
    }
}

/// Computes all entries of a table file; row order follows the input.
pub fn build_report(text: &str) -> TableReport {
    let (lines, mut errors) = parse_table(text);
    let results: Vec<(usize, Result<TableEntry, ArrowError>)> = lines
        .par_iter()
        .map(|l| (l.line, TableEntry::compute(&l.name, &l.code)))
        .collect();
    let mut entries = Vec::new();
    for (line, r) in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(TableError { line, message: e.to_string() }),
        }
    }
    errors.sort_by_key(|e| e.line);
    TableReport { entries, errors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub fn render_report(report: &TableReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("json");
            s.push('\n');
            s
        }
        ReportFormat::Csv => report.to_csv(),
    }
}

/// Reads a table file, writes the report, prints a summary and reports
/// per-line errors on the diagnostic stream.
pub fn cmd_table(input: &Path, output: &Path, format: ReportFormat) -> CmdOutput {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return CmdOutput::fail(EXIT_IO, format!("error: cannot read {}: {e}\n", input.display())),
    };
    let report = build_report(&text);
    if let Err(e) = std::fs::write(output, render_report(&report, format)) {
        return CmdOutput::fail(EXIT_IO, format!("error: cannot write {}: {e}\n", output.display()));
    }
    let stderr: String = report.errors.iter().map(|e| format!("line {}: {}\n", e.line, e.message)).collect();
    let summary = report.summary();
    let stdout = format!(
        "{} entries: {} Colorable, {} NotColorable, {} Unknown; {} errors\n",
        report.entries.len(),
        summary["Colorable"],
        summary["NotColorable"],
        summary["Unknown"],
        report.errors.len()
    );
    CmdOutput { stdout, stderr, code: EXIT_OK }
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub walks: usize,
    pub steps: usize,
    /// Bound on crossings of the random start codes and along walks.
    pub max_crossings: usize,
    pub seed: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { walks: 200, steps: 10, max_crossings: 6, seed: 0 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub walks: usize,
    pub codes_checked: usize,
    pub failures: Vec<String>,
}

/// Per-seed start code: up to `max_crossings` crossings, one or two components.
pub fn fuzz_start_code(seed: u64, max_crossings: usize) -> GaussCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_crossings);
    let comps = if rng.gen_bool(0.8) { 1 } else { 2 };
    moves::random_code(&mut rng, n, comps)
}

/// Runs two walks per start code: an R2/R3-only walk checking the
/// unnormalized bracket, and a mixed walk checking the normalized
/// polynomial, its k-degree set and the odd writhe.
pub fn run_fuzz(config: &FuzzConfig) -> FuzzReport {
    let walk_limit = config.max_crossings + 4;
    let results: Vec<(usize, Vec<String>)> = (0..config.walks)
        .into_par_iter()
        .map(|w| {
            let seed = config.seed.wrapping_mul(1_000_003).wrapping_add(w as u64);
            let start = fuzz_start_code(seed, config.max_crossings);
            let mut failures = Vec::new();
            let mut checked = 0;

            let r23 = WalkConfig { kinds: MoveKind::R2_R3.to_vec(), max_crossings: walk_limit };
            let walk = moves::random_walk_with(&start, config.steps, seed, &r23);
            let base = arrow::arrow_bracket(&start);
            for c in &walk[1..] {
                checked += 1;
                if arrow::arrow_bracket(c) != base {
                    failures.push(format!("bracket changed along R2/R3 walk: {start} -> {c}"));
                }
            }

            let mixed = WalkConfig { kinds: MoveKind::ALL.to_vec(), max_crossings: walk_limit };
            let walk = moves::random_walk_with(&start, config.steps, seed ^ 0x5eed, &mixed);
            let base_n = arrow::arrow_normalized(&start);
            let base_j = parity::odd_writhe(&start).ok();
            for c in &walk[1..] {
                checked += 1;
                let n = arrow::arrow_normalized(c);
                if n != base_n {
                    failures.push(format!("normalized polynomial changed: {start} -> {c}"));
                }
                if let (Ok(a), Ok(b)) = (&n, &base_n) {
                    if a.k_degree_set() != b.k_degree_set() {
                        failures.push(format!("k-degree set changed: {start} -> {c}"));
                    }
                }
                if parity::odd_writhe(c).ok() != base_j {
                    failures.push(format!("odd writhe changed: {start} -> {c}"));
                }
            }
            (checked, failures)
        })
        .collect();
    let mut report = FuzzReport { walks: config.walks, ..Default::default() };
    for (checked, failures) in results {
        report.codes_checked += checked;
        report.failures.extend(failures);
    }
    report
}

pub fn cmd_fuzz(config: &FuzzConfig) -> CmdOutput {
    let report = run_fuzz(config);
    let stdout = format!(
        "{} walks, {} codes checked, {} failures\n",
        report.walks,
        report.codes_checked,
        report.failures.len()
    );
    let stderr: String = report.failures.iter().map(|f| format!("{f}\n")).collect();
    let code = if report.failures.is_empty() { EXIT_OK } else { EXIT_FUZZ_FAILED };
    CmdOutput { stdout, stderr, code }
}
