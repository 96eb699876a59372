//! Corpus runner: executes every entry of a manifest and prints a TSV
//! report (name, outcome, steps, max-ordinal-tag, wall-time).
//!
//! The manifest is `manifest.tsv` in the corpus directory, one entry per
//! line: `name<TAB>file<TAB>regime<TAB>expected`, where expected is one of
//! `checks`, `solves-in-<N>`, or `extracts-real`. Report order is manifest
//! order.

use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};

use epsilon_core::esubst;
use epsilon_core::proofs::{self, Regime};
use epsilon_core::syntax::Derivation;
use epsilon_core::parse_derivation;

pub struct Entry {
    pub name: String,
    pub file: String,
    pub regime: Regime,
    pub expected: Expected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Checks,
    SolvesIn(u64),
    ExtractsReal,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Checks => write!(f, "checks"),
            Expected::SolvesIn(n) => write!(f, "solves-in-{n}"),
            Expected::ExtractsReal => write!(f, "extracts-real"),
        }
    }
}

pub fn parse_manifest(dir: &Path) -> Result<Vec<Entry>> {
    let path = dir.join("manifest.tsv");
    let src = fs::read_to_string(&path).with_context(|| path.display().to_string())?;
    let mut entries = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(anyhow!(
                "manifest line {}: expected 4 tab-separated fields, found {}",
                lineno + 1,
                fields.len()
            ));
        }
        let regime: Regime =
            fields[2].parse().map_err(|e| anyhow!("manifest line {}: {e}", lineno + 1))?;
        let expected = parse_expected(fields[3])
            .ok_or_else(|| anyhow!("manifest line {}: bad expected '{}'", lineno + 1, fields[3]))?;
        entries.push(Entry {
            name: fields[0].to_string(),
            file: fields[1].to_string(),
            regime,
            expected,
        });
    }
    Ok(entries)
}

fn parse_expected(s: &str) -> Option<Expected> {
    match s {
        "checks" => Some(Expected::Checks),
        "extracts-real" => Some(Expected::ExtractsReal),
        other => {
            let n = other.strip_prefix("solves-in-")?;
            n.parse().ok().map(Expected::SolvesIn)
        }
    }
}

struct Row {
    name: String,
    outcome: &'static str,
    detail: String,
    steps: Option<usize>,
    max_ordinal: Option<String>,
    millis: u128,
}

pub fn run(dir: &Path) -> Result<ExitCode> {
    let entries = parse_manifest(dir)?;
    let mut all_pass = true;
    println!("name\toutcome\tsteps\tmax-ordinal-tag\twall-time-ms");
    for entry in &entries {
        let started = Instant::now();
        let row = match run_entry(dir, entry) {
            Ok((steps, max_ordinal)) => Row {
                name: entry.name.clone(),
                outcome: "pass",
                detail: String::new(),
                steps,
                max_ordinal,
                millis: started.elapsed().as_millis(),
            },
            Err(RunFailure { outcome, detail }) => Row {
                name: entry.name.clone(),
                outcome,
                detail,
                steps: None,
                max_ordinal: None,
                millis: started.elapsed().as_millis(),
            },
        };
        if row.outcome != "pass" {
            all_pass = false;
        }
        let steps = row.steps.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let ordinal = row.max_ordinal.unwrap_or_else(|| "-".into());
        println!("{}\t{}\t{}\t{}\t{}", row.name, row.outcome, steps, ordinal, row.millis);
        if !row.detail.is_empty() {
            eprintln!("{}: {}", row.name, row.detail);
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

struct RunFailure {
    outcome: &'static str,
    detail: String,
}

fn fail(detail: impl Into<String>) -> RunFailure {
    RunFailure { outcome: "fail", detail: detail.into() }
}

fn error(detail: impl Into<String>) -> RunFailure {
    RunFailure { outcome: "error", detail: detail.into() }
}

type EntryResult = std::result::Result<(Option<usize>, Option<String>), RunFailure>;

fn load(dir: &Path, entry: &Entry) -> std::result::Result<Derivation, RunFailure> {
    let path = dir.join(&entry.file);
    let src = fs::read_to_string(&path)
        .map_err(|e| error(format!("{}: {e}", path.display())))?;
    parse_derivation(&src).map_err(|e| error(e.to_string()))
}

fn run_entry(dir: &Path, entry: &Entry) -> EntryResult {
    let d = load(dir, entry)?;
    match entry.expected {
        Expected::Checks => {
            proofs::check(&d, entry.regime).map_err(|e| fail(e.to_string()))?;
            Ok((None, None))
        }
        Expected::SolvesIn(n) => {
            let (_, trace) = esubst::solve(&d, esubst::DEFAULT_BUDGET)
                .map_err(|e| fail(e.to_string()))?;
            if trace.steps.len() as u64 != n {
                return Err(fail(format!("solved in {} steps, expected {n}", trace.steps.len())));
            }
            Ok((Some(trace.steps.len()), max_ordinal(&trace)))
        }
        Expected::ExtractsReal => {
            let (s, trace) = esubst::solve(&d, esubst::DEFAULT_BUDGET)
                .map_err(|e| fail(e.to_string()))?;
            let real = esubst::extract_real(&d, &s).map_err(|e| fail(e.to_string()))?;
            proofs::check(&real, Regime::RealExtended)
                .map_err(|e| fail(format!("extracted derivation: {e}")))?;
            if real.end_formula() != d.end_formula() {
                return Err(fail("end-formula changed by extraction".to_string()));
            }
            Ok((Some(trace.steps.len()), max_ordinal(&trace)))
        }
    }
}

/// The largest ordinal tag in the trace; with strict descent this is the
/// first step's tag.
fn max_ordinal(trace: &esubst::SolverTrace) -> Option<String> {
    trace
        .steps
        .iter()
        .filter_map(|s| s.ordinal.as_ref())
        .max()
        .map(|o| o.to_string())
}
