//! The epsilon substitution method: epsilon types, finite substitutions,
//! evaluation under a substitution, the update-with-reset solving loop, and
//! extraction of a real derivation from a solved ideal one.
//!
//! An epsilon term is evaluated by first evaluating its maximal closed
//! subterms to numerals and then looking the resulting argument tuple up in
//! the table assigned to its type, so distinct terms that agree after that
//! replacement always receive the same value.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;

use crate::eval;
use crate::ordinals::{embed_seq, Cnf, SeqWeight};
use crate::proofs::{
    check, classify_axiom, closed_eps_subterms, decompose_critical, CheckError, CriticalFormula,
    Regime,
};
use crate::syntax::{numeral, Derivation, DerivationLine, Formula, Justification, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EsubstError {
    #[error("term is not closed: free variable '{0}'")]
    FreeVariable(String),
    #[error("not an epsilon term: {0}")]
    NotEpsilon(String),
    #[error("quantifier cannot be evaluated: {0}")]
    Quantifier(String),
    #[error("value does not fit in a substitution entry")]
    ValueTooLarge,
    #[error("line {line}: not a critical formula")]
    NotCritical { line: usize },
    #[error("line {line}: critical formula is already true under the substitution")]
    NotFalse { line: usize },
    #[error("line {line}: no witness up to the instance value (contract violation)")]
    NoWitness { line: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("budget exhausted after {steps} update steps")]
    BudgetExhausted { steps: usize },
    #[error("derivation does not check in the ideal regime: {0}")]
    InvalidDerivation(#[from] CheckError),
    #[error("end-formula is not a real formula")]
    EndFormulaNotReal,
    #[error("line {line}: replaced formula is false, substitution is not solving")]
    NotSolving { line: usize },
    #[error(transparent)]
    Esubst(#[from] EsubstError),
}

/// Default solver budget (update steps); override per call or via the
/// `ESUBST_BUDGET` environment variable in the command-line tool.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// An epsilon type: the skeleton obtained by replacing the maximal proper
/// closed subterms of an epsilon term with placeholder variables `p1..pk`
/// (left to right), bound variables renamed canonically. A type contains no
/// closed subterms and each placeholder occurs exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonType {
    skeleton: Term,
    arity: usize,
}

impl EpsilonType {
    pub fn skeleton(&self) -> &Term {
        &self.skeleton
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Maximal epsilon-nesting depth of the skeleton. A placeholder slot
    /// stands for a replaced closed subterm, so it counts as depth 1; the
    /// types whose entries depend on nothing else are exactly those of
    /// rank 1.
    pub fn rank(&self) -> u32 {
        term_depth(&self.skeleton)
    }
}

impl fmt::Display for EpsilonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.skeleton)
    }
}

fn is_placeholder(name: &str) -> bool {
    name.strip_prefix('p')
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

fn term_depth(t: &Term) -> u32 {
    match t {
        Term::Zero => 0,
        Term::Succ(a) => term_depth(a),
        Term::Add(a, b) | Term::Mul(a, b) => term_depth(a).max(term_depth(b)),
        Term::Var(x) => {
            if is_placeholder(x) {
                1
            } else {
                0
            }
        }
        Term::Eps(_, body) => 1 + formula_depth(body),
    }
}

fn formula_depth(f: &Formula) -> u32 {
    match f {
        Formula::Eq(a, b) | Formula::Lt(a, b) => term_depth(a).max(term_depth(b)),
        Formula::Not(g) => formula_depth(g),
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
            formula_depth(a).max(formula_depth(b))
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => formula_depth(g),
    }
}

/// Computes the epsilon type of a closed epsilon term together with its
/// argument terms, the replaced maximal proper closed subterms in order.
/// Substituting the arguments back into the skeleton reproduces the term.
pub fn type_of(e: &Term) -> Result<(EpsilonType, Vec<Term>), EsubstError> {
    if !matches!(e, Term::Eps(..)) {
        return Err(EsubstError::NotEpsilon(e.to_string()));
    }
    if let Some(x) = e.free_vars().into_iter().next() {
        return Err(EsubstError::FreeVariable(x));
    }
    // Canonical bound names first so placeholder names cannot collide.
    let canon = e.canonical();
    let mut args = Vec::new();
    let skeleton = extract_term(&canon, true, &mut args);
    let skeleton = skeleton.canonical();
    Ok((EpsilonType { skeleton, arity: args.len() }, args))
}

fn extract_term(t: &Term, top: bool, args: &mut Vec<Term>) -> Term {
    if !top && t.is_closed() {
        args.push(t.clone());
        return Term::Var(format!("p{}", args.len()));
    }
    match t {
        Term::Zero | Term::Var(_) => t.clone(),
        Term::Succ(a) => Term::succ(extract_term(a, false, args)),
        Term::Add(a, b) => {
            Term::add(extract_term(a, false, args), extract_term(b, false, args))
        }
        Term::Mul(a, b) => {
            Term::mul(extract_term(a, false, args), extract_term(b, false, args))
        }
        Term::Eps(x, body) => Term::Eps(x.clone(), Box::new(extract_formula(body, args))),
    }
}

fn extract_formula(f: &Formula, args: &mut Vec<Term>) -> Formula {
    match f {
        Formula::Eq(a, b) => {
            Formula::Eq(extract_term(a, false, args), extract_term(b, false, args))
        }
        Formula::Lt(a, b) => {
            Formula::Lt(extract_term(a, false, args), extract_term(b, false, args))
        }
        Formula::Not(g) => Formula::not(extract_formula(g, args)),
        Formula::Or(a, b) => Formula::or(extract_formula(a, args), extract_formula(b, args)),
        Formula::And(a, b) => Formula::and(extract_formula(a, args), extract_formula(b, args)),
        Formula::Imp(a, b) => Formula::imp(extract_formula(a, args), extract_formula(b, args)),
        Formula::Exists(x, g) => Formula::Exists(x.clone(), Box::new(extract_formula(g, args))),
        Formula::Forall(x, g) => Formula::Forall(x.clone(), Box::new(extract_formula(g, args))),
    }
}

/// A finite assignment of argument-tuple tables to epsilon types. Absent
/// types denote the all-zero function and only non-zero values are stored,
/// so the whole object stays finite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    table: HashMap<EpsilonType, BTreeMap<Vec<u64>, u64>>,
}

impl Substitution {
    pub fn empty() -> Self {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn lookup(&self, ty: &EpsilonType, args: &[u64]) -> u64 {
        self.table.get(ty).and_then(|m| m.get(args)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, ty: EpsilonType, args: Vec<u64>, value: u64) {
        if value == 0 {
            if let Some(m) = self.table.get_mut(&ty) {
                m.remove(&args);
                if m.is_empty() {
                    self.table.remove(&ty);
                }
            }
        } else {
            self.table.entry(ty).or_default().insert(args, value);
        }
    }

    pub fn has_entries(&self, ty: &EpsilonType) -> bool {
        self.table.get(ty).is_some_and(|m| !m.is_empty())
    }

    /// Removes every type of rank strictly greater than `rank`, returning
    /// the removed types (sorted for deterministic traces).
    pub fn reset_above(&mut self, rank: u32) -> Vec<EpsilonType> {
        let mut removed: Vec<EpsilonType> =
            self.table.keys().filter(|ty| ty.rank() > rank).cloned().collect();
        for ty in &removed {
            self.table.remove(ty);
        }
        removed.sort_by_key(|ty| ty.to_string());
        removed
    }

    /// Stored (type, args, value) triples, sorted for deterministic output.
    pub fn entries(&self) -> Vec<(&EpsilonType, &[u64], u64)> {
        let mut out: Vec<_> = self
            .table
            .iter()
            .flat_map(|(ty, m)| m.iter().map(move |(args, v)| (ty, args.as_slice(), *v)))
            .collect();
        out.sort_by_key(|(ty, args, _)| (ty.to_string(), args.to_vec()));
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ty, args, v) in self.entries() {
            write!(f, "{ty} at (")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            writeln!(f, ") -> {v}")?;
        }
        Ok(())
    }
}

fn to_entry(v: BigUint) -> Result<u64, EsubstError> {
    u64::try_from(v).map_err(|_| EsubstError::ValueTooLarge)
}

/// The value of a closed term under a substitution: epsilon subterms are
/// evaluated innermost-first by type lookup, everything else finitarily.
pub fn value_under(s: &Substitution, t: &Term) -> Result<BigUint, EsubstError> {
    match t {
        Term::Zero => Ok(BigUint::from(0u32)),
        Term::Succ(a) => Ok(value_under(s, a)? + 1u32),
        Term::Add(a, b) => Ok(value_under(s, a)? + value_under(s, b)?),
        Term::Mul(a, b) => Ok(value_under(s, a)? * value_under(s, b)?),
        Term::Var(x) => Err(EsubstError::FreeVariable(x.clone())),
        Term::Eps(..) => {
            let (ty, arg_terms) = type_of(t)?;
            let mut args = Vec::with_capacity(arg_terms.len());
            for at in &arg_terms {
                args.push(to_entry(value_under(s, at)?)?);
            }
            Ok(BigUint::from(s.lookup(&ty, &args)))
        }
    }
}

/// The truth value of a closed quantifier-free formula under a substitution.
pub fn truth_under(s: &Substitution, f: &Formula) -> Result<bool, EsubstError> {
    match f {
        Formula::Eq(a, b) => Ok(value_under(s, a)? == value_under(s, b)?),
        Formula::Lt(a, b) => Ok(value_under(s, a)? < value_under(s, b)?),
        Formula::Not(g) => Ok(!truth_under(s, g)?),
        Formula::Or(a, b) => Ok(truth_under(s, a)? | truth_under(s, b)?),
        Formula::And(a, b) => Ok(truth_under(s, a)? & truth_under(s, b)?),
        Formula::Imp(a, b) => Ok(!truth_under(s, a)? | truth_under(s, b)?),
        Formula::Exists(..) | Formula::Forall(..) => {
            Err(EsubstError::Quantifier(f.to_string()))
        }
    }
}

fn critical_lines(d: &Derivation) -> Vec<(usize, CriticalFormula)> {
    d.lines
        .iter()
        .enumerate()
        .filter(|(_, line)| matches!(line.justification, Justification::Axiom(_)))
        .filter_map(|(i, line)| decompose_critical(&line.formula).map(|c| (i, c)))
        .collect()
}

/// The smallest (0-based) index of a critical axiom line that evaluates to
/// false under the substitution, or `None` if all are true.
pub fn find_false_critical(
    s: &Substitution,
    d: &Derivation,
) -> Result<Option<usize>, EsubstError> {
    for (i, _) in critical_lines(d) {
        if !truth_under(s, &d.lines[i].formula)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// The result of one update step.
#[derive(Clone, Debug)]
pub struct UpdateOutcome {
    pub substitution: Substitution,
    pub ty: EpsilonType,
    pub args: Vec<u64>,
    pub old: u64,
    pub new: u64,
    pub resets: Vec<EpsilonType>,
}

/// Repairs the false critical formula at (0-based) line `idx`: assigns the
/// least witness `m <= value(t)` making the matrix true to the epsilon
/// term's type at its current argument values, then resets every type of
/// strictly greater rank to the default zero function.
pub fn update(s: &Substitution, d: &Derivation, idx: usize) -> Result<UpdateOutcome, EsubstError> {
    let line = &d.lines[idx];
    let crit = match &line.justification {
        Justification::Axiom(_) => decompose_critical(&line.formula),
        _ => None,
    }
    .ok_or(EsubstError::NotCritical { line: idx + 1 })?;
    if truth_under(s, &line.formula)? {
        return Err(EsubstError::NotFalse { line: idx + 1 });
    }
    let bound = to_entry(value_under(s, &crit.instance)?)?;
    let mut witness = None;
    for m in 0..=bound {
        if truth_under(s, &crit.matrix.substitute(&crit.var, &numeral(m)))? {
            witness = Some(m);
            break;
        }
    }
    let new = witness.ok_or(EsubstError::NoWitness { line: idx + 1 })?;
    let (ty, arg_terms) = type_of(&crit.eps_term)?;
    let mut args = Vec::with_capacity(arg_terms.len());
    for at in &arg_terms {
        args.push(to_entry(value_under(s, at)?)?);
    }
    let old = s.lookup(&ty, &args);
    let mut substitution = s.clone();
    substitution.set(ty.clone(), args.clone(), new);
    let resets = substitution.reset_above(ty.rank());
    Ok(UpdateOutcome { substitution, ty, args, old, new, resets })
}

/// One solver step: which critical line was repaired and how.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub step: usize,
    /// 1-based line number of the repaired critical formula.
    pub line: usize,
    pub ty: EpsilonType,
    pub args: Vec<u64>,
    pub old: u64,
    pub new: u64,
    pub resets: Vec<EpsilonType>,
    /// State weight after the step, present on the rank-1 fragment.
    pub ordinal: Option<Cnf>,
}

#[derive(Clone, Debug, Default)]
pub struct SolverTrace {
    pub steps: Vec<TraceStep>,
}

impl SolverTrace {
    /// The per-step ordinal tags, if every step carries one.
    pub fn ordinal_tags(&self) -> Option<Vec<Cnf>> {
        self.steps.iter().map(|s| s.ordinal.clone()).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("step\tline\ttype\targs\told\tnew\tresets\tordinal\n");
        for s in &self.steps {
            let args = format!(
                "({})",
                s.args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            );
            let resets = if s.resets.is_empty() {
                "-".to_string()
            } else {
                s.resets.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("; ")
            };
            let ordinal = match &s.ordinal {
                Some(o) => o.to_string(),
                None => "-".to_string(),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                s.step, s.line, s.ty, args, s.old, s.new, resets, ordinal
            ));
        }
        out
    }
}

/// The epsilon types of all critical lines, in line order, when every
/// epsilon term of the derivation has a rank-1 type (no embedded closed
/// subterms and no nested binding); `None` otherwise. On this fragment the
/// solver state carries a strictly decreasing sequence weight.
pub fn rank_le1_types(d: &Derivation) -> Option<Vec<EpsilonType>> {
    for line in &d.lines {
        for e in closed_eps_subterms(&line.formula) {
            let (ty, _) = type_of(&e).ok()?;
            if ty.rank() > 1 {
                return None;
            }
        }
    }
    let mut out = Vec::new();
    for (_, crit) in critical_lines(d) {
        let (ty, _) = type_of(&crit.eps_term).ok()?;
        if !out.contains(&ty) {
            out.push(ty);
        }
    }
    Some(out)
}

fn fragment_weight(types: &[EpsilonType], s: &Substitution) -> Cnf {
    let bits: Vec<u64> =
        types.iter().map(|ty| if s.has_entries(ty) { 0 } else { 1 }).collect();
    embed_seq(&SeqWeight::from_raw(bits))
}

/// Runs the substitution procedure: starting from the empty substitution,
/// repeatedly repair the first false critical formula until none remains.
/// Returns the solving substitution and the full trace, or reports budget
/// exhaustion after `budget` update steps.
pub fn solve(d: &Derivation, budget: u64) -> Result<(Substitution, SolverTrace), SolveError> {
    check(d, Regime::IdealFull)?;
    match d.end_formula() {
        Some(f) if f.is_real() => {}
        _ => return Err(SolveError::EndFormulaNotReal),
    }
    let crits = critical_lines(d);
    let weight_types = rank_le1_types(d);
    let mut s = Substitution::empty();
    let mut trace = SolverTrace::default();
    loop {
        let mut false_idx = None;
        for (i, _) in &crits {
            if !truth_under(&s, &d.lines[*i].formula).map_err(SolveError::Esubst)? {
                false_idx = Some(*i);
                break;
            }
        }
        let Some(idx) = false_idx else {
            return Ok((s, trace));
        };
        if trace.steps.len() as u64 >= budget {
            return Err(SolveError::BudgetExhausted { steps: trace.steps.len() });
        }
        let outcome = update(&s, d, idx)?;
        s = outcome.substitution;
        let ordinal = weight_types.as_deref().map(|tys| fragment_weight(tys, &s));
        trace.steps.push(TraceStep {
            step: trace.steps.len() + 1,
            line: idx + 1,
            ty: outcome.ty,
            args: outcome.args,
            old: outcome.old,
            new: outcome.new,
            resets: outcome.resets,
            ordinal,
        });
    }
}

fn numeralize_term(s: &Substitution, t: &Term) -> Result<Term, EsubstError> {
    match t {
        Term::Zero => Ok(Term::Zero),
        Term::Succ(a) => Ok(Term::succ(numeralize_term(s, a)?)),
        Term::Add(a, b) => Ok(Term::add(numeralize_term(s, a)?, numeralize_term(s, b)?)),
        Term::Mul(a, b) => Ok(Term::mul(numeralize_term(s, a)?, numeralize_term(s, b)?)),
        Term::Var(x) => Err(EsubstError::FreeVariable(x.clone())),
        Term::Eps(..) => Ok(numeral(to_entry(value_under(s, t)?)?)),
    }
}

fn numeralize_formula(s: &Substitution, f: &Formula) -> Result<Formula, EsubstError> {
    match f {
        Formula::Eq(a, b) => Ok(Formula::Eq(numeralize_term(s, a)?, numeralize_term(s, b)?)),
        Formula::Lt(a, b) => Ok(Formula::Lt(numeralize_term(s, a)?, numeralize_term(s, b)?)),
        Formula::Not(g) => Ok(Formula::not(numeralize_formula(s, g)?)),
        Formula::Or(a, b) => Ok(Formula::or(numeralize_formula(s, a)?, numeralize_formula(s, b)?)),
        Formula::And(a, b) => {
            Ok(Formula::and(numeralize_formula(s, a)?, numeralize_formula(s, b)?))
        }
        Formula::Imp(a, b) => {
            Ok(Formula::imp(numeralize_formula(s, a)?, numeralize_formula(s, b)?))
        }
        Formula::Exists(..) | Formula::Forall(..) => {
            Err(EsubstError::Quantifier(f.to_string()))
        }
    }
}

/// Replaces every epsilon term in every line by the numeral of its value
/// under a solving substitution, re-justifying changed axiom lines either
/// directly or through inserted true-literal and tautology steps. The
/// result checks in the extended real regime with the same end-formula.
pub fn extract_real(d: &Derivation, s: &Substitution) -> Result<Derivation, SolveError> {
    let mut out: Vec<DerivationLine> = Vec::new();
    let mut map = Vec::with_capacity(d.lines.len());
    for (i, line) in d.lines.iter().enumerate() {
        let real = numeralize_formula(s, &line.formula).map_err(SolveError::Esubst)?;
        match &line.justification {
            Justification::ModusPonens { antecedent, implication } => {
                out.push(DerivationLine {
                    formula: real,
                    justification: Justification::ModusPonens {
                        antecedent: map[*antecedent],
                        implication: map[*implication],
                    },
                });
            }
            Justification::Axiom(_) => {
                if real == line.formula {
                    out.push(line.clone());
                } else if let Some(tag) = classify_axiom(&real, Regime::RealExtended) {
                    out.push(DerivationLine {
                        formula: real,
                        justification: Justification::Axiom(tag),
                    });
                } else {
                    if eval::truth(&real) != Ok(true) {
                        return Err(SolveError::NotSolving { line: i + 1 });
                    }
                    insert_real_proof(&mut out, &real);
                }
            }
        }
        map.push(out.len() - 1);
    }
    Ok(Derivation { lines: out })
}

/// Derives a true real formula from true-literal axioms: each distinct atom
/// contributes its true literal, a tautology chains them to the target, and
/// modus ponens peels the chain.
fn insert_real_proof(out: &mut Vec<DerivationLine>, target: &Formula) {
    use crate::proofs::AxiomTag;
    let mut atoms = Vec::new();
    collect_atoms(target, &mut atoms);
    let mut literal_indices = Vec::new();
    let mut literals = Vec::new();
    for atom in &atoms {
        let lit = if eval::truth(atom) == Ok(true) {
            atom.clone()
        } else {
            Formula::not(atom.clone())
        };
        out.push(DerivationLine {
            formula: lit.clone(),
            justification: Justification::Axiom(AxiomTag::TrueLiteral),
        });
        literal_indices.push(out.len() - 1);
        literals.push(lit);
    }
    let mut chain = target.clone();
    for lit in literals.iter().rev() {
        chain = Formula::imp(lit.clone(), chain);
    }
    out.push(DerivationLine {
        formula: chain.clone(),
        justification: Justification::Axiom(AxiomTag::Taut),
    });
    let mut rest = chain;
    for &lit_idx in &literal_indices {
        let implication = out.len() - 1;
        rest = match rest {
            Formula::Imp(_, b) => *b,
            _ => unreachable!("chain has one implication per literal"),
        };
        out.push(DerivationLine {
            formula: rest.clone(),
            justification: Justification::ModusPonens { antecedent: lit_idx, implication },
        });
    }
}

fn collect_atoms(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Eq(..) | Formula::Lt(..) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        Formula::Not(g) => collect_atoms(g, out),
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        Formula::Exists(..) | Formula::Forall(..) => {}
    }
}

/// Truth of a closed quantifier-free formula under the least-witness
/// reading of epsilon terms: `eps x A(x)` denotes the least `m <= cap` with
/// `A(m)` true, or 0 if there is none.
pub fn least_witness_truth(f: &Formula, cap: u64) -> Result<bool, EsubstError> {
    match f {
        Formula::Eq(a, b) => Ok(least_witness_value(a, cap)? == least_witness_value(b, cap)?),
        Formula::Lt(a, b) => Ok(least_witness_value(a, cap)? < least_witness_value(b, cap)?),
        Formula::Not(g) => Ok(!least_witness_truth(g, cap)?),
        Formula::Or(a, b) => Ok(least_witness_truth(a, cap)? | least_witness_truth(b, cap)?),
        Formula::And(a, b) => Ok(least_witness_truth(a, cap)? & least_witness_truth(b, cap)?),
        Formula::Imp(a, b) => Ok(!least_witness_truth(a, cap)? | least_witness_truth(b, cap)?),
        Formula::Exists(..) | Formula::Forall(..) => {
            Err(EsubstError::Quantifier(f.to_string()))
        }
    }
}

/// See [`least_witness_truth`].
pub fn least_witness_value(t: &Term, cap: u64) -> Result<BigUint, EsubstError> {
    match t {
        Term::Zero => Ok(BigUint::from(0u32)),
        Term::Succ(a) => Ok(least_witness_value(a, cap)? + 1u32),
        Term::Add(a, b) => Ok(least_witness_value(a, cap)? + least_witness_value(b, cap)?),
        Term::Mul(a, b) => Ok(least_witness_value(a, cap)? * least_witness_value(b, cap)?),
        Term::Var(x) => Err(EsubstError::FreeVariable(x.clone())),
        Term::Eps(x, body) => {
            for m in 0..=cap {
                if least_witness_truth(&body.substitute(x, &numeral(m)), cap)? {
                    return Ok(BigUint::from(m));
                }
            }
            Ok(BigUint::from(0u32))
        }
    }
}
