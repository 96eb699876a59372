//! Command-line entry point wiring the epsilon-calculus toolkit together.
//!
//! Exit codes: 0 on success, 1 on a domain failure (a derivation that does
//! not check, a solver that exhausts its budget, a failing corpus entry),
//! 2 on usage or I/O errors. All outputs are line-oriented text; solver
//! traces and corpus reports are TSV.

mod corpus;

use std::cmp::Ordering;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use epsilon_core::esubst::{self, SolveError};
use epsilon_core::ordinals::{cmp_cnf, parse_cnf};
use epsilon_core::proofs::{self, Regime};
use epsilon_core::syntax::Term;
use epsilon_core::transform;
use epsilon_core::translate::eps_translate;
use epsilon_core::{eval, parse_derivation, parse_formula, parse_term};

#[derive(Parser)]
#[command(name = "epsilon", version, about = "Epsilon-calculus toolkit for first-order arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula file and reprint each formula.
    Parse { file: PathBuf },
    /// Eliminate quantifiers from each formula in a file.
    Translate { file: PathBuf },
    /// Evaluate each line of a file: truth for formulas, value for terms.
    Eval { file: PathBuf },
    /// Check a derivation file against an axiom regime.
    Check {
        #[arg(long, value_parser = parse_regime)]
        regime: Regime,
        file: PathBuf,
    },
    /// Run the epsilon substitution method on an ideal derivation.
    Solve {
        file: PathBuf,
        /// Maximum number of update steps (default 1000000).
        #[arg(long)]
        budget: Option<u64>,
        /// Write the solver trace as TSV.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Write the extracted real derivation.
        #[arg(long = "emit-real", value_name = "FILE")]
        emit_real: Option<PathBuf>,
        /// Optional key=value config file (supported key: budget).
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Build derivations with strictly decreasing weights.
    Transform {
        #[command(subcommand)]
        what: TransformCommand,
    },
    /// Ordinal notation utilities.
    Ord {
        #[command(subcommand)]
        what: OrdCommand,
    },
    /// Run every entry of a corpus manifest and report TSV results.
    Corpus { dir: PathBuf },
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Derive `~ n = m` for distinct naturals.
    Neq {
        n: u64,
        m: u64,
        #[command(flatten)]
        out: TransformOut,
    },
    /// Derive `t = value(t)` for a closed term over numerals and `+`.
    Sum {
        term: String,
        #[command(flatten)]
        out: TransformOut,
    },
    /// Derive `t = value(t)` for any closed epsilon-free term.
    Value {
        term: String,
        #[command(flatten)]
        out: TransformOut,
    },
}

#[derive(clap::Args)]
struct TransformOut {
    /// Print the weight trace, one weight per line.
    #[arg(long)]
    weights: bool,
    /// Write the derivation to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    emit: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OrdCommand {
    /// Compare two ordinal expressions; prints `<`, `=`, or `>`.
    Cmp { a: String, b: String },
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

const OK: ExitCode = ExitCode::SUCCESS;

fn domain_failure() -> ExitCode {
    ExitCode::from(1)
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Parse { file } => {
            for line in formula_lines(&file)? {
                println!("{}", parse_formula(&line).map_err(|e| anyhow!("{e}"))?);
            }
            Ok(OK)
        }
        Command::Translate { file } => {
            for line in formula_lines(&file)? {
                let f = parse_formula(&line).map_err(|e| anyhow!("{e}"))?;
                println!("{}", eps_translate(&f));
            }
            Ok(OK)
        }
        Command::Eval { file } => {
            for line in formula_lines(&file)? {
                match parse_formula(&line) {
                    Ok(f) => {
                        let v = eval::truth(&f).map_err(|e| anyhow!("{line}: {e}"))?;
                        println!("{v}");
                    }
                    Err(_) => {
                        let t: Term = parse_term(&line).map_err(|e| anyhow!("{e}"))?;
                        let v = eval::term_value(&t).map_err(|e| anyhow!("{line}: {e}"))?;
                        println!("{v}");
                    }
                }
            }
            Ok(OK)
        }
        Command::Check { regime, file } => {
            let src = fs::read_to_string(&file).with_context(|| file.display().to_string())?;
            let d = parse_derivation(&src).map_err(|e| anyhow!("{e}"))?;
            match proofs::check(&d, regime) {
                Ok(()) => Ok(OK),
                Err(e) => {
                    println!("{e}");
                    Ok(domain_failure())
                }
            }
        }
        Command::Solve { file, budget, trace, emit_real, config } => {
            let src = fs::read_to_string(&file).with_context(|| file.display().to_string())?;
            let d = parse_derivation(&src).map_err(|e| anyhow!("{e}"))?;
            let budget = resolve_budget(budget, config.as_deref())?;
            match esubst::solve(&d, budget) {
                Ok((substitution, solver_trace)) => {
                    if let Some(path) = trace {
                        fs::write(&path, solver_trace.to_tsv())
                            .with_context(|| path.display().to_string())?;
                    }
                    if let Some(path) = emit_real {
                        let real = esubst::extract_real(&d, &substitution)?;
                        fs::write(&path, real.to_string())
                            .with_context(|| path.display().to_string())?;
                    }
                    println!("solved in {} steps", solver_trace.steps.len());
                    print!("{substitution}");
                    Ok(OK)
                }
                Err(e @ SolveError::BudgetExhausted { .. }) => {
                    println!("{e}");
                    Ok(domain_failure())
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        Command::Transform { what } => {
            let (derivation, weights, out) = match what {
                TransformCommand::Neq { n, m, out } => {
                    let (d, weights) = transform::derive_neq(n, m)?;
                    (d, weights.iter().map(u64::to_string).collect::<Vec<_>>(), out)
                }
                TransformCommand::Sum { term, out } => {
                    let t = parse_term(&term).map_err(|e| anyhow!("{e}"))?;
                    let (d, weights) = transform::derive_sum_value(&t)?;
                    (d, weights.iter().map(|w| w.to_string()).collect(), out)
                }
                TransformCommand::Value { term, out } => {
                    let t = parse_term(&term).map_err(|e| anyhow!("{e}"))?;
                    let (d, weights) = transform::derive_term_value(&t)?;
                    (d, weights.iter().map(|w| w.to_string()).collect(), out)
                }
            };
            if out.weights {
                for w in &weights {
                    println!("{w}");
                }
            }
            match out.emit {
                Some(path) => {
                    fs::write(&path, derivation.to_string())
                        .with_context(|| path.display().to_string())?;
                }
                None => print!("{derivation}"),
            }
            Ok(OK)
        }
        Command::Ord { what: OrdCommand::Cmp { a, b } } => {
            let ca = parse_cnf(&a)?;
            let cb = parse_cnf(&b)?;
            let sym = match cmp_cnf(&ca, &cb) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            println!("{sym}");
            Ok(OK)
        }
        Command::Corpus { dir } => corpus::run(&dir),
    }
}

/// Budget precedence: flag, then ESUBST_BUDGET, then config file, then the
/// library default.
fn resolve_budget(flag: Option<u64>, config: Option<&std::path::Path>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    if let Ok(s) = std::env::var("ESUBST_BUDGET") {
        return s.parse().map_err(|_| anyhow!("ESUBST_BUDGET is not a number: {s}"));
    }
    if let Some(path) = config {
        let src = fs::read_to_string(path).with_context(|| path.display().to_string())?;
        for line in src.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line is not key=value: {line}"))?;
            if key.trim() == "budget" {
                let value = value.trim();
                return value.parse().map_err(|_| anyhow!("budget is not a number: {value}"));
            }
        }
    }
    Ok(esubst::DEFAULT_BUDGET)
}

fn formula_lines(file: &std::path::Path) -> Result<Vec<String>> {
    let src = fs::read_to_string(file).with_context(|| file.display().to_string())?;
    Ok(src
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}
