//! Axiom-schema recognition and derivation checking.
//!
//! Recognizers are decidable throughout: propositional axioms are exactly the
//! quantifier-free tautologies (checked by truth table over the distinct
//! atoms), arithmetic and identity schemas are matched structurally, and the
//! two kinds of critical formulas are found by solving for the instantiating
//! term against the schema shape. A formula may instantiate several schemas;
//! the first match in precedence order wins and tags are advisory.

use std::fmt;
use std::str::FromStr;

use crate::eval;
use crate::syntax::{alpha_eq, alpha_eq_term, Derivation, Formula, Justification, Term};

/// Schema tags for axiom lines. `TrueLiteral` is only admitted by the
/// extended real regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomTag {
    Taut,
    IdRefl,
    IdSubstTerm,
    IdSubstFormula,
    Arith1,
    Arith2,
    Arith3,
    Arith4,
    Arith5,
    Arith6,
    Crit1,
    Crit2,
    TrueLiteral,
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomTag::Taut => "taut",
            AxiomTag::IdRefl => "id-refl",
            AxiomTag::IdSubstTerm => "id-subst-term",
            AxiomTag::IdSubstFormula => "id-subst-formula",
            AxiomTag::Arith1 => "arith1",
            AxiomTag::Arith2 => "arith2",
            AxiomTag::Arith3 => "arith3",
            AxiomTag::Arith4 => "arith4",
            AxiomTag::Arith5 => "arith5",
            AxiomTag::Arith6 => "arith6",
            AxiomTag::Crit1 => "crit1",
            AxiomTag::Crit2 => "crit2",
            AxiomTag::TrueLiteral => "true-literal",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown axiom tag '{}'", self.0)
    }
}

impl std::error::Error for UnknownTag {}

impl FromStr for AxiomTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "taut" => AxiomTag::Taut,
            "id-refl" => AxiomTag::IdRefl,
            "id-subst-term" => AxiomTag::IdSubstTerm,
            "id-subst-formula" => AxiomTag::IdSubstFormula,
            "arith1" => AxiomTag::Arith1,
            "arith2" => AxiomTag::Arith2,
            "arith3" => AxiomTag::Arith3,
            "arith4" => AxiomTag::Arith4,
            "arith5" => AxiomTag::Arith5,
            "arith6" => AxiomTag::Arith6,
            "crit1" => AxiomTag::Crit1,
            "crit2" => AxiomTag::Crit2,
            "true-literal" => AxiomTag::TrueLiteral,
            other => return Err(UnknownTag(other.to_string())),
        })
    }
}

/// Which axioms a derivation may use.
///
/// * `RealStrict`: tautologies, identity, and the arithmetic schemas, with
///   epsilon-free instances only.
/// * `RealExtended`: `RealStrict` plus `TrueLiteral` (any true closed atomic
///   sentence, or the negation of a false one).
/// * `IdealFull`: adds the critical formulas and epsilon-containing schema
///   instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    RealStrict,
    RealExtended,
    IdealFull,
}

impl Regime {
    fn requires_eps_free(self) -> bool {
        !matches!(self, Regime::IdealFull)
    }

    fn allows_critical(self) -> bool {
        matches!(self, Regime::IdealFull)
    }

    fn allows_true_literal(self) -> bool {
        matches!(self, Regime::RealExtended)
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Regime::RealStrict),
            "extended" => Ok(Regime::RealExtended),
            "ideal" => Ok(Regime::IdealFull),
            other => Err(format!("unknown regime '{other}' (expected strict, extended, or ideal)")),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::RealStrict => "strict",
            Regime::RealExtended => "extended",
            Regime::IdealFull => "ideal",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TautologyError {
    #[error("too many distinct atoms ({0} > 24)")]
    TooManyAtoms(usize),
    #[error("quantifier in propositional context")]
    Quantified,
}

/// True iff the quantifier-free formula is true under every assignment to
/// its distinct atomic subformulas (epsilon terms are opaque). Refuses
/// formulas with more than 24 distinct atoms.
pub fn is_tautology(f: &Formula) -> Result<bool, TautologyError> {
    if !f.is_quantifier_free() {
        return Err(TautologyError::Quantified);
    }
    let canon = f.canonical();
    let mut atoms = Vec::new();
    let prop = compile_prop(&canon, &mut atoms);
    if atoms.len() > 24 {
        return Err(TautologyError::TooManyAtoms(atoms.len()));
    }
    for mask in 0..(1u32 << atoms.len()) {
        if !eval_prop(&prop, mask) {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Prop {
    Atom(usize),
    Not(Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
}

fn compile_prop(f: &Formula, atoms: &mut Vec<Formula>) -> Prop {
    match f {
        Formula::Eq(..) | Formula::Lt(..) => {
            let idx = match atoms.iter().position(|a| a == f) {
                Some(i) => i,
                None => {
                    atoms.push(f.clone());
                    atoms.len() - 1
                }
            };
            Prop::Atom(idx)
        }
        Formula::Not(g) => Prop::Not(Box::new(compile_prop(g, atoms))),
        Formula::Or(a, b) => {
            Prop::Or(Box::new(compile_prop(a, atoms)), Box::new(compile_prop(b, atoms)))
        }
        Formula::And(a, b) => {
            Prop::And(Box::new(compile_prop(a, atoms)), Box::new(compile_prop(b, atoms)))
        }
        Formula::Imp(a, b) => {
            Prop::Imp(Box::new(compile_prop(a, atoms)), Box::new(compile_prop(b, atoms)))
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("quantifier-free checked"),
    }
}

fn eval_prop(p: &Prop, mask: u32) -> bool {
    match p {
        Prop::Atom(i) => mask & (1 << i) != 0,
        Prop::Not(q) => !eval_prop(q, mask),
        Prop::Or(a, b) => eval_prop(a, mask) | eval_prop(b, mask),
        Prop::And(a, b) => eval_prop(a, mask) & eval_prop(b, mask),
        Prop::Imp(a, b) => !eval_prop(a, mask) | eval_prop(b, mask),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    FirstKind,
    SecondKind,
}

/// A critical formula decomposed against its schema: `A(t) -> A(eps x A(x))`
/// for the first kind, `A(t) -> eps x A(x) < t'` for the second.
#[derive(Clone, Debug)]
pub struct CriticalFormula {
    pub kind: CriticalKind,
    /// The epsilon term `eps x A(x)`.
    pub eps_term: Term,
    /// Its bound variable `x`.
    pub var: String,
    /// The matrix `A(x)`, the body of the epsilon term.
    pub matrix: Formula,
    /// The instantiating term `t`.
    pub instance: Term,
}

/// Decomposes a closed formula as a critical formula, second kind before
/// first; candidate epsilon terms are tried leftmost-outermost, first match
/// wins.
pub fn decompose_critical(f: &Formula) -> Option<CriticalFormula> {
    if !f.is_quantifier_free() || !f.is_closed() {
        return None;
    }
    let Formula::Imp(lhs, rhs) = f else {
        return None;
    };
    // Second kind: A(t) -> eps x A(x) < t'
    if let Formula::Lt(e @ Term::Eps(x, body), Term::Succ(t)) = rhs.as_ref() {
        if t.is_closed() && alpha_eq(lhs, &body.substitute(x, t)) {
            return Some(CriticalFormula {
                kind: CriticalKind::SecondKind,
                eps_term: e.clone(),
                var: x.clone(),
                matrix: (**body).clone(),
                instance: (**t).clone(),
            });
        }
    }
    // First kind: A(t) -> A(eps x A(x))
    for e in closed_eps_subterms(rhs) {
        let Term::Eps(x, body) = &e else { unreachable!() };
        if !alpha_eq(rhs, &body.substitute(x, &e)) {
            continue;
        }
        if let Some(t) = solve_instance(body, lhs, x) {
            return Some(CriticalFormula {
                kind: CriticalKind::FirstKind,
                eps_term: e.clone(),
                var: x.clone(),
                matrix: (**body).clone(),
                instance: t,
            });
        }
    }
    None
}

/// All closed epsilon subterms, leftmost-outermost first, structurally
/// deduplicated.
pub(crate) fn closed_eps_subterms(f: &Formula) -> Vec<Term> {
    let mut out = Vec::new();
    collect_eps_formula(f, &mut out);
    out
}

fn collect_eps_formula(f: &Formula, out: &mut Vec<Term>) {
    match f {
        Formula::Eq(a, b) | Formula::Lt(a, b) => {
            collect_eps_term(a, out);
            collect_eps_term(b, out);
        }
        Formula::Not(g) => collect_eps_formula(g, out),
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
            collect_eps_formula(a, out);
            collect_eps_formula(b, out);
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => collect_eps_formula(g, out),
    }
}

fn collect_eps_term(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::Zero | Term::Var(_) => {}
        Term::Succ(inner) => collect_eps_term(inner, out),
        Term::Add(a, b) | Term::Mul(a, b) => {
            collect_eps_term(a, out);
            collect_eps_term(b, out);
        }
        Term::Eps(_, body) => {
            if t.is_closed() && !out.contains(t) {
                out.push(t.clone());
            }
            collect_eps_formula(body, out);
        }
    }
}

/// Solves `pattern[var := ?] = target` for a closed term: every free
/// occurrence of `var` in the pattern must face the same (alpha-equal)
/// closed term in the target, and everything else must agree.
fn solve_instance(pattern: &Formula, target: &Formula, var: &str) -> Option<Term> {
    let mut found = None;
    if inst_formula(pattern, target, var, &mut Vec::new(), &mut found) {
        found
    } else {
        None
    }
}

fn inst_term(
    pat: &Term,
    tgt: &Term,
    var: &str,
    env: &mut Vec<(String, String)>,
    found: &mut Option<Term>,
) -> bool {
    if let Term::Var(x) = pat {
        if x == var && !env.iter().any(|(l, _)| l == x) {
            if !tgt.is_closed() {
                return false;
            }
            return match found {
                Some(prev) => alpha_eq_term(prev, tgt),
                None => {
                    *found = Some(tgt.clone());
                    true
                }
            };
        }
    }
    match (pat, tgt) {
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(a), Term::Succ(b)) => inst_term(a, b, var, env, found),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            inst_term(a1, b1, var, env, found) && inst_term(a2, b2, var, env, found)
        }
        (Term::Var(x), Term::Var(y)) => match env.iter().rev().find(|(l, r)| l == x || r == y) {
            Some((l, r)) => l == x && r == y,
            None => x == y,
        },
        (Term::Eps(x, f), Term::Eps(y, g)) => {
            env.push((x.clone(), y.clone()));
            let r = inst_formula(f, g, var, env, found);
            env.pop();
            r
        }
        _ => false,
    }
}

fn inst_formula(
    pat: &Formula,
    tgt: &Formula,
    var: &str,
    env: &mut Vec<(String, String)>,
    found: &mut Option<Term>,
) -> bool {
    match (pat, tgt) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) | (Formula::Lt(a1, a2), Formula::Lt(b1, b2)) => {
            inst_term(a1, b1, var, env, found) && inst_term(a2, b2, var, env, found)
        }
        (Formula::Not(a), Formula::Not(b)) => inst_formula(a, b, var, env, found),
        (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            inst_formula(a1, b1, var, env, found) && inst_formula(a2, b2, var, env, found)
        }
        (Formula::Exists(x, a), Formula::Exists(y, b))
        | (Formula::Forall(x, a), Formula::Forall(y, b)) => {
            env.push((x.clone(), y.clone()));
            let r = inst_formula(a, b, var, env, found);
            env.pop();
            r
        }
        _ => false,
    }
}

/// Context matching for the identity schemas: holds iff there is a term
/// context `s` with `s(t1) = u1` and `s(t2) = u2`.
fn ctx_term(u1: &Term, u2: &Term, t1: &Term, t2: &Term, env: &mut Vec<(String, String)>) -> bool {
    if u1.is_closed() && u2.is_closed() && alpha_eq_term(u1, t1) && alpha_eq_term(u2, t2) {
        return true;
    }
    match (u1, u2) {
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(a), Term::Succ(b)) => ctx_term(a, b, t1, t2, env),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            ctx_term(a1, b1, t1, t2, env) && ctx_term(a2, b2, t1, t2, env)
        }
        (Term::Var(x), Term::Var(y)) => match env.iter().rev().find(|(l, r)| l == x || r == y) {
            Some((l, r)) => l == x && r == y,
            None => x == y,
        },
        (Term::Eps(x, f), Term::Eps(y, g)) => {
            env.push((x.clone(), y.clone()));
            let r = ctx_formula(f, g, t1, t2, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn ctx_formula(
    u1: &Formula,
    u2: &Formula,
    t1: &Term,
    t2: &Term,
    env: &mut Vec<(String, String)>,
) -> bool {
    match (u1, u2) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) | (Formula::Lt(a1, a2), Formula::Lt(b1, b2)) => {
            ctx_term(a1, b1, t1, t2, env) && ctx_term(a2, b2, t1, t2, env)
        }
        (Formula::Not(a), Formula::Not(b)) => ctx_formula(a, b, t1, t2, env),
        (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            ctx_formula(a1, b1, t1, t2, env) && ctx_formula(a2, b2, t1, t2, env)
        }
        (Formula::Exists(x, a), Formula::Exists(y, b))
        | (Formula::Forall(x, a), Formula::Forall(y, b)) => {
            env.push((x.clone(), y.clone()));
            let r = ctx_formula(a, b, t1, t2, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn match_arith(f: &Formula) -> Option<AxiomTag> {
    match f {
        // ~ 0 = t'
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Eq(Term::Zero, Term::Succ(_)) => Some(AxiomTag::Arith1),
            _ => None,
        },
        // t1' = t2' -> t1 = t2
        Formula::Imp(lhs, rhs) => match (lhs.as_ref(), rhs.as_ref()) {
            (Formula::Eq(Term::Succ(a), Term::Succ(b)), Formula::Eq(c, d))
                if alpha_eq_term(a, c) && alpha_eq_term(b, d) =>
            {
                Some(AxiomTag::Arith2)
            }
            _ => None,
        },
        Formula::Eq(lhs, rhs) => match (lhs, rhs) {
            // (t + 0) = t
            (Term::Add(a, z), b) if **z == Term::Zero && alpha_eq_term(a, b) => {
                Some(AxiomTag::Arith3)
            }
            // (t1 + t2') = (t1 + t2)'
            (Term::Add(a, s), Term::Succ(inner)) => match (s.as_ref(), inner.as_ref()) {
                (Term::Succ(b), Term::Add(c, d))
                    if alpha_eq_term(a, c) && alpha_eq_term(b, d) =>
                {
                    Some(AxiomTag::Arith4)
                }
                _ => None,
            },
            // (t * 0) = 0
            (Term::Mul(_, z), Term::Zero) if **z == Term::Zero => Some(AxiomTag::Arith5),
            // (t1 * t2') = (t1 + (t1 * t2))
            (Term::Mul(a, s), Term::Add(c, m)) => match (s.as_ref(), m.as_ref()) {
                (Term::Succ(b), Term::Mul(d, e))
                    if alpha_eq_term(a, c) && alpha_eq_term(a, d) && alpha_eq_term(b, e) =>
                {
                    Some(AxiomTag::Arith6)
                }
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn match_id_refl(f: &Formula) -> bool {
    matches!(f, Formula::Eq(a, b) if alpha_eq_term(a, b))
}

fn match_id_subst_term(f: &Formula) -> bool {
    let Formula::Imp(lhs, rhs) = f else { return false };
    let (Formula::Eq(t1, t2), Formula::Eq(u1, u2)) = (lhs.as_ref(), rhs.as_ref()) else {
        return false;
    };
    ctx_term(u1, u2, t1, t2, &mut Vec::new())
}

fn match_id_subst_formula(f: &Formula) -> bool {
    let Formula::Imp(lhs, rhs) = f else { return false };
    let (Formula::Eq(t1, t2), Formula::Imp(a1, a2)) = (lhs.as_ref(), rhs.as_ref()) else {
        return false;
    };
    ctx_formula(a1, a2, t1, t2, &mut Vec::new())
}

fn match_true_literal(f: &Formula) -> bool {
    let atomic_true = |g: &Formula| {
        matches!(g, Formula::Eq(..) | Formula::Lt(..)) && eval::truth(g) == Ok(true)
    };
    match f {
        Formula::Not(inner) => {
            matches!(inner.as_ref(), Formula::Eq(..) | Formula::Lt(..))
                && eval::truth(inner) == Ok(false)
        }
        _ => atomic_true(f),
    }
}

/// Returns the first axiom schema the closed formula instantiates under the
/// given regime, in precedence order Crit2, Crit1, Arith1-6, identity
/// schemas, tautologies, true literals; or `None`.
pub fn classify_axiom(f: &Formula, regime: Regime) -> Option<AxiomTag> {
    if !f.is_closed() || !f.is_quantifier_free() {
        return None;
    }
    if regime.requires_eps_free() && !f.is_eps_free() {
        return None;
    }
    if regime.allows_critical() {
        if let Some(c) = decompose_critical(f) {
            return Some(match c.kind {
                CriticalKind::SecondKind => AxiomTag::Crit2,
                CriticalKind::FirstKind => AxiomTag::Crit1,
            });
        }
    }
    if let Some(tag) = match_arith(f) {
        return Some(tag);
    }
    if match_id_subst_term(f) {
        return Some(AxiomTag::IdSubstTerm);
    }
    if match_id_subst_formula(f) {
        return Some(AxiomTag::IdSubstFormula);
    }
    if match_id_refl(f) {
        return Some(AxiomTag::IdRefl);
    }
    if is_tautology(f) == Ok(true) {
        return Some(AxiomTag::Taut);
    }
    if regime.allows_true_literal() && match_true_literal(f) {
        return Some(AxiomTag::TrueLiteral);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckReason {
    BadAxiom,
    BadMpShape,
    BadMpIndex,
}

impl fmt::Display for CheckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckReason::BadAxiom => "bad-axiom",
            CheckReason::BadMpShape => "bad-mp-shape",
            CheckReason::BadMpIndex => "bad-mp-index",
        };
        write!(f, "{s}")
    }
}

/// A failed derivation check: the first offending line (1-based) and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckError {
    pub line: usize,
    pub reason: CheckReason,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

impl std::error::Error for CheckError {}

/// Checks every line of a derivation: axiom lines must classify under the
/// regime (declared tags are advisory), and `mp:i,j` lines need `i, j`
/// earlier with line `j` being `line i -> current`.
pub fn check(d: &Derivation, regime: Regime) -> Result<(), CheckError> {
    for (k, line) in d.lines.iter().enumerate() {
        match &line.justification {
            Justification::Axiom(_) => {
                if classify_axiom(&line.formula, regime).is_none() {
                    return Err(CheckError { line: k + 1, reason: CheckReason::BadAxiom });
                }
            }
            Justification::ModusPonens { antecedent, implication } => {
                if *antecedent >= k || *implication >= k {
                    return Err(CheckError { line: k + 1, reason: CheckReason::BadMpIndex });
                }
                let expected =
                    Formula::imp(d.lines[*antecedent].formula.clone(), line.formula.clone());
                if !alpha_eq(&d.lines[*implication].formula, &expected) {
                    return Err(CheckError { line: k + 1, reason: CheckReason::BadMpShape });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditError {
    /// A line evaluated to false (unreachable when the derivation checks in
    /// a real regime; this is the executable soundness theorem).
    Counterexample { line: usize },
    /// A line is not a real formula and cannot be evaluated.
    NotReal { line: usize },
}

impl fmt::Display for AuditError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditError::Counterexample { line } => write!(f, "counterexample at line {line}"),
            AuditError::NotReal { line } => write!(f, "line {line} is not a real formula"),
        }
    }
}

impl std::error::Error for AuditError {}

/// Evaluates every line of an all-real derivation; `Ok` iff all are true.
pub fn soundness_audit(d: &Derivation) -> Result<(), AuditError> {
    for (k, line) in d.lines.iter().enumerate() {
        match eval::truth(&line.formula) {
            Ok(true) => {}
            Ok(false) => return Err(AuditError::Counterexample { line: k + 1 }),
            Err(_) => return Err(AuditError::NotReal { line: k + 1 }),
        }
    }
    Ok(())
}
