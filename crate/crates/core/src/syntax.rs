//! Syntax trees for arithmetic terms and formulas with epsilon terms, and
//! derivations (sequences of formulas justified by axioms or modus ponens).
//!
//! Terms are built from `0`, successor `'`, `+`, `*`, variables, and epsilon
//! terms `eps x (A)`. Formulas are built from `=` and `<` atoms with the
//! connectives `~ | & ->` and (input-only) quantifiers `Ex` / `All`.
//!
//! Values are immutable and compared structurally; [`alpha_eq`] and
//! [`Term::canonical`] / [`Formula::canonical`] give equality modulo renaming
//! of bound variables.

use std::collections::HashSet;
use std::fmt;

use crate::proofs::AxiomTag;

/// A term of the arithmetic language, possibly containing epsilon terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Var(String),
    /// `Eps(x, A)` binds `x` in `A`; `x` must occur free in `A`.
    Eps(String, Box<Formula>),
}

/// A formula of the arithmetic language. Quantifiers are permitted only in
/// the input language; everything downstream of translation rejects them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(t1: Term, t2: Term) -> Term {
        Term::Add(Box::new(t1), Box::new(t2))
    }

    pub fn mul(t1: Term, t2: Term) -> Term {
        Term::Mul(Box::new(t1), Box::new(t2))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Builds `eps var (body)`. The bound variable must occur free in the
    /// body; the parser reports a syntax error for violations, so reaching
    /// this assertion means a caller constructed an ill-formed binder.
    pub fn eps(var: &str, body: Formula) -> Term {
        assert!(
            body.free_vars().contains(var),
            "epsilon binder {var} does not occur free in its body"
        );
        Term::Eps(var.to_string(), Box::new(body))
    }

    /// True iff the term has no free variables.
    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True iff the term contains no epsilon subterm.
    pub fn is_eps_free(&self) -> bool {
        match self.strip_succ().0 {
            Term::Zero | Term::Var(_) => true,
            Term::Add(a, b) | Term::Mul(a, b) => a.is_eps_free() && b.is_eps_free(),
            Term::Eps(..) => false,
            Term::Succ(..) => unreachable!(),
        }
    }

    /// Walks a successor spine iteratively; numerals can be deep.
    fn strip_succ(&self) -> (&Term, u64) {
        let mut primes = 0;
        let mut cur = self;
        while let Term::Succ(inner) = cur {
            primes += 1;
            cur = inner;
        }
        (cur, primes)
    }

    fn wrap_succ(t: Term, primes: u64) -> Term {
        let mut t = t;
        for _ in 0..primes {
            t = Term::succ(t);
        }
        t
    }

    /// True iff the term is `0` under some number of successors.
    pub fn is_numeral(&self) -> bool {
        numeral_value(self).is_some()
    }

    pub fn free_vars(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut HashSet<String>) {
        match self.strip_succ().0 {
            Term::Zero => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            Term::Eps(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Succ(..) => unreachable!(),
        }
    }

    /// Replaces every free occurrence of `var` by `replacement`,
    /// capture-avoidingly: binders that would capture a free variable of the
    /// replacement are renamed to the first unused canonical name.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Term {
        let (base, primes) = self.strip_succ();
        if primes > 0 {
            return Term::wrap_succ(base.substitute(var, replacement), primes);
        }
        match self {
            Term::Zero => Term::Zero,
            Term::Succ(..) => unreachable!(),
            Term::Add(a, b) => {
                Term::add(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Term::Mul(a, b) => {
                Term::mul(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Term::Var(x) => {
                if x == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Term::Eps(x, body) => {
                if x == var || !body.free_vars().contains(var) {
                    self.clone()
                } else if replacement.free_vars().contains(x) {
                    let fresh = fresh_name(&[&body.free_vars(), &replacement.free_vars()], var);
                    let renamed = body.substitute(x, &Term::var(&fresh));
                    Term::Eps(fresh, Box::new(renamed.substitute(var, replacement)))
                } else {
                    Term::Eps(x.clone(), Box::new(body.substitute(var, replacement)))
                }
            }
        }
    }

    /// Renames bound variables to canonical names (`x1`, `x2`, ... by binder
    /// depth, skipping names that occur free), so that alpha-equivalent terms
    /// become structurally equal.
    pub fn canonical(&self) -> Term {
        let names = CanonicalNames::for_free(&self.free_vars());
        self.canon(&mut Vec::new(), &names)
    }

    fn canon(&self, env: &mut Vec<(String, String)>, names: &CanonicalNames) -> Term {
        let (base, primes) = self.strip_succ();
        if primes > 0 {
            return Term::wrap_succ(base.canon(env, names), primes);
        }
        match self {
            Term::Zero => Term::Zero,
            Term::Succ(..) => unreachable!(),
            Term::Add(a, b) => Term::add(a.canon(env, names), b.canon(env, names)),
            Term::Mul(a, b) => Term::mul(a.canon(env, names), b.canon(env, names)),
            Term::Var(x) => match env.iter().rev().find(|(old, _)| old == x) {
                Some((_, new)) => Term::var(new),
                None => self.clone(),
            },
            Term::Eps(x, body) => {
                let new = names.at_depth(env.len());
                env.push((x.clone(), new.clone()));
                let body = body.canon(env, names);
                env.pop();
                Term::Eps(new, Box::new(body))
            }
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, f: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(f))
    }

    pub fn forall(var: &str, f: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(f))
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_eps_free(&self) -> bool {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => a.is_eps_free() && b.is_eps_free(),
            Formula::Not(f) => f.is_eps_free(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.is_eps_free() && b.is_eps_free()
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.is_eps_free(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Lt(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// A real formula is closed, epsilon-free, and quantifier-free; its truth
    /// is finitarily decidable.
    pub fn is_real(&self) -> bool {
        self.is_quantifier_free() && self.is_eps_free() && self.is_closed()
    }

    pub fn free_vars(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut HashSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn substitute(&self, var: &str, replacement: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => {
                Formula::Eq(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Lt(a, b) => {
                Formula::Lt(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Not(f) => Formula::not(f.substitute(var, replacement)),
            Formula::Or(a, b) => {
                Formula::or(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::And(a, b) => {
                Formula::and(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Imp(a, b) => {
                Formula::imp(a.substitute(var, replacement), b.substitute(var, replacement))
            }
            Formula::Exists(x, f) => {
                let (name, body) = Self::subst_under(x, f, var, replacement);
                Formula::Exists(name, Box::new(body))
            }
            Formula::Forall(x, f) => {
                let (name, body) = Self::subst_under(x, f, var, replacement);
                Formula::Forall(name, Box::new(body))
            }
        }
    }

    fn subst_under(x: &str, body: &Formula, var: &str, replacement: &Term) -> (String, Formula) {
        if x == var || !body.free_vars().contains(var) {
            (x.to_string(), body.clone())
        } else if replacement.free_vars().contains(x) {
            let fresh = fresh_name(&[&body.free_vars(), &replacement.free_vars()], var);
            let renamed = body.substitute(x, &Term::var(&fresh));
            (fresh, renamed.substitute(var, replacement))
        } else {
            (x.to_string(), body.substitute(var, replacement))
        }
    }

    /// See [`Term::canonical`].
    pub fn canonical(&self) -> Formula {
        let names = CanonicalNames::for_free(&self.free_vars());
        self.canon(&mut Vec::new(), &names)
    }

    fn canon(&self, env: &mut Vec<(String, String)>, names: &CanonicalNames) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.canon(env, names), b.canon(env, names)),
            Formula::Lt(a, b) => Formula::Lt(a.canon(env, names), b.canon(env, names)),
            Formula::Not(f) => Formula::not(f.canon(env, names)),
            Formula::Or(a, b) => Formula::or(a.canon(env, names), b.canon(env, names)),
            Formula::And(a, b) => Formula::and(a.canon(env, names), b.canon(env, names)),
            Formula::Imp(a, b) => Formula::imp(a.canon(env, names), b.canon(env, names)),
            Formula::Exists(x, f) => {
                let new = names.at_depth(env.len());
                env.push((x.clone(), new.clone()));
                let f = f.canon(env, names);
                env.pop();
                Formula::Exists(new, Box::new(f))
            }
            Formula::Forall(x, f) => {
                let new = names.at_depth(env.len());
                env.push((x.clone(), new.clone()));
                let f = f.canon(env, names);
                env.pop();
                Formula::Forall(new, Box::new(f))
            }
        }
    }
}

/// The standard numeral for `n`: `0` under exactly `n` successor symbols.
pub fn numeral(n: u64) -> Term {
    let mut t = Term::Zero;
    for _ in 0..n {
        t = Term::succ(t);
    }
    t
}

/// The value of a numeral, or `None` if the term is anything else.
pub fn numeral_value(t: &Term) -> Option<u64> {
    let mut n = 0u64;
    let mut cur = t;
    loop {
        match cur {
            Term::Zero => return Some(n),
            Term::Succ(inner) => {
                n += 1;
                cur = inner;
            }
            _ => return None,
        }
    }
}

/// The first name `x1`, `x2`, ... that is neither in any avoid set nor equal
/// to `extra`.
pub fn fresh_name(avoid: &[&HashSet<String>], extra: &str) -> String {
    for i in 1.. {
        let cand = format!("x{i}");
        if cand != extra && !avoid.iter().any(|s| s.contains(&cand)) {
            return cand;
        }
    }
    unreachable!()
}

/// Canonical bound-variable names indexed by binder depth, skipping any name
/// that occurs free in the expression being renamed.
struct CanonicalNames {
    free: HashSet<String>,
}

impl CanonicalNames {
    fn for_free(free: &HashSet<String>) -> Self {
        CanonicalNames { free: free.clone() }
    }

    fn at_depth(&self, depth: usize) -> String {
        let mut seen = 0;
        for i in 1.. {
            let cand = format!("x{i}");
            if !self.free.contains(&cand) {
                if seen == depth {
                    return cand;
                }
                seen += 1;
            }
        }
        unreachable!()
    }
}

/// Alpha-equivalence of terms: structural equality modulo renaming of bound
/// variables.
pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    alpha_term(a, b, &mut Vec::new())
}

/// Alpha-equivalence of formulas.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_formula(a, b, &mut Vec::new())
}

fn alpha_term(a: &Term, b: &Term, env: &mut Vec<(String, String)>) -> bool {
    let (a_base, a_primes) = a.strip_succ();
    let (b_base, b_primes) = b.strip_succ();
    if a_primes != b_primes {
        return false;
    }
    match (a_base, b_base) {
        (Term::Zero, Term::Zero) => true,
        (Term::Add(x1, x2), Term::Add(y1, y2)) | (Term::Mul(x1, x2), Term::Mul(y1, y2)) => {
            alpha_term(x1, y1, env) && alpha_term(x2, y2, env)
        }
        (Term::Var(x), Term::Var(y)) => match env.iter().rev().find(|(l, r)| l == x || r == y) {
            Some((l, r)) => l == x && r == y,
            None => x == y,
        },
        (Term::Eps(x, f), Term::Eps(y, g)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_formula(f, g, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn alpha_formula(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Formula::Eq(x1, x2), Formula::Eq(y1, y2)) | (Formula::Lt(x1, x2), Formula::Lt(y1, y2)) => {
            alpha_term(x1, y1, env) && alpha_term(x2, y2, env)
        }
        (Formula::Not(x), Formula::Not(y)) => alpha_formula(x, y, env),
        (Formula::Or(x1, x2), Formula::Or(y1, y2))
        | (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Imp(x1, x2), Formula::Imp(y1, y2)) => {
            alpha_formula(x1, y1, env) && alpha_formula(x2, y2, env)
        }
        (Formula::Exists(x, f), Formula::Exists(y, g))
        | (Formula::Forall(x, f), Formula::Forall(y, g)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha_formula(f, g, env);
            env.pop();
            r
        }
        _ => false,
    }
}

/// How a derivation line is justified: as an instance of an axiom schema, or
/// by modus ponens from two earlier lines (0-based indices; `implication`
/// must be `antecedent -> current`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomTag),
    ModusPonens { antecedent: usize, implication: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A derivation: a sequence of formulas, each an axiom-schema instance or a
/// modus ponens from earlier lines. The end-formula is the last line.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Derivation {
    pub lines: Vec<DerivationLine>,
}

impl Derivation {
    pub fn end_formula(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, primes) = self.strip_succ();
        match base {
            Term::Zero => write!(f, "0")?,
            Term::Add(a, b) => write!(f, "({a} + {b})")?,
            Term::Mul(a, b) => write!(f, "({a} * {b})")?,
            Term::Var(x) => write!(f, "{x}")?,
            Term::Eps(x, body) => write!(f, "eps {x} ({body})")?,
            Term::Succ(..) => unreachable!(),
        }
        for _ in 0..primes {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Lt(a, b) => write!(f, "{a} < {b}"),
            Formula::Not(g) => write!(f, "~ {g}"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Imp(a, b) => write!(f, "({a} -> {b})"),
            Formula::Exists(x, g) => write!(f, "Ex {x} {g}"),
            Formula::Forall(x, g) => write!(f, "All {x} {g}"),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(tag) => write!(f, "ax:{tag}"),
            Justification::ModusPonens { antecedent, implication } => {
                write!(f, "mp:{},{}", antecedent + 1, implication + 1)
            }
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{} {}", line.justification, line.formula)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals_have_exactly_n_successors() {
        assert_eq!(numeral(0), Term::Zero);
        assert_eq!(numeral(3), Term::succ(Term::succ(Term::succ(Term::Zero))));
        assert_eq!(numeral_value(&numeral(3)), Some(3));
        for n in [0, 1, 17, 10_000] {
            let t = numeral(n);
            assert!(t.is_closed() && t.is_eps_free());
            assert_eq!(numeral_value(&t), Some(n));
        }
    }

    #[test]
    fn non_numeral_is_rejected() {
        assert_eq!(numeral_value(&Term::add(numeral(1), numeral(1))), None);
        assert_eq!(numeral_value(&Term::var("x")), None);
        assert_eq!(numeral_value(&Term::succ(Term::var("x"))), None);
    }

    #[test]
    fn substitute_replaces_free_occurrences() {
        let f = Formula::Lt(Term::var("x"), numeral(3));
        assert_eq!(f.substitute("x", &numeral(1)), Formula::Lt(numeral(1), numeral(3)));
    }

    #[test]
    fn substitute_under_binder_leaves_bound_untouched() {
        let e = Term::eps("x", Formula::Lt(Term::var("x"), Term::var("x")));
        assert_eq!(e.substitute("x", &numeral(5)), e);
    }

    #[test]
    fn substitute_into_epsilon_body() {
        let e = Term::eps("x", Formula::Lt(Term::var("x"), Term::var("y")));
        let expected = Term::eps("x", Formula::Lt(Term::var("x"), numeral(2)));
        assert_eq!(e.substitute("y", &numeral(2)), expected);
    }

    #[test]
    fn substitute_avoids_capture() {
        // eps x (x < y) with y := x' must not capture the free x.
        let e = Term::eps("x", Formula::Lt(Term::var("x"), Term::var("y")));
        let replaced = e.substitute("y", &Term::succ(Term::var("x")));
        let expected = Term::eps("x1", Formula::Lt(Term::var("x1"), Term::succ(Term::var("x"))));
        assert!(alpha_eq_term(&replaced, &expected));
        assert_eq!(replaced.free_vars(), HashSet::from(["x".to_string()]));
    }

    #[test]
    fn substitute_idempotent_for_closed_replacement() {
        let f = Formula::Lt(Term::var("x"), Term::var("y"));
        let once = f.substitute("x", &numeral(4));
        assert_eq!(once.substitute("x", &numeral(4)), once);
    }

    #[test]
    fn canonical_identifies_alpha_variants() {
        let a = Term::eps("u", Formula::Eq(Term::var("u"), Term::var("q")));
        let b = Term::eps("v", Formula::Eq(Term::var("v"), Term::var("q")));
        assert_eq!(a.canonical(), b.canonical());
        assert!(alpha_eq_term(&a, &b));
        let c = Term::eps("v", Formula::Eq(Term::var("v"), Term::var("r")));
        assert!(!alpha_eq_term(&a, &c));
    }

    #[test]
    fn canonical_skips_free_names() {
        // The free variable x1 must not be captured by canonical renaming.
        let a = Term::eps("y", Formula::Lt(Term::var("y"), Term::var("x1")));
        let canon = a.canonical();
        assert_eq!(
            canon,
            Term::Eps("x2".into(), Box::new(Formula::Lt(Term::var("x2"), Term::var("x1"))))
        );
    }

    #[test]
    fn shadowed_binders_rename_by_depth() {
        let inner = Term::eps("x", Formula::Eq(Term::var("x"), Term::var("x")));
        let outer = Term::eps("x", Formula::Lt(Term::var("x"), inner));
        let canon = outer.canonical();
        let expect = Term::Eps(
            "x1".into(),
            Box::new(Formula::Lt(
                Term::var("x1"),
                Term::Eps("x2".into(), Box::new(Formula::Eq(Term::var("x2"), Term::var("x2")))),
            )),
        );
        assert_eq!(canon, expect);
    }
}
