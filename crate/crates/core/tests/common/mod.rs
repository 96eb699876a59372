//! Shared random generators for the integration test suites. Everything is
//! seeded, so failures reproduce.

use rand::rngs::StdRng;
use rand::Rng;

use epsilon_core::proofs::AxiomTag;
use epsilon_core::syntax::{numeral, Derivation, DerivationLine, Formula, Justification, Term};

/// A random closed epsilon-free term of the given depth with numerals <= 9.
pub fn random_real_term(rng: &mut StdRng, depth: u32) -> Term {
    if depth == 0 {
        return numeral(rng.gen_range(0..=9));
    }
    match rng.gen_range(0..4) {
        0 => numeral(rng.gen_range(0..=9)),
        1 => Term::succ(random_real_term(rng, depth - 1)),
        2 => Term::add(random_real_term(rng, depth - 1), random_real_term(rng, depth - 1)),
        _ => Term::mul(random_real_term(rng, depth - 1), random_real_term(rng, depth - 1)),
    }
}

/// A random real formula over small terms.
pub fn random_real_formula(rng: &mut StdRng, depth: u32) -> Formula {
    if depth == 0 {
        return random_real_atom(rng);
    }
    match rng.gen_range(0..5) {
        0 => random_real_atom(rng),
        1 => Formula::not(random_real_formula(rng, depth - 1)),
        2 => Formula::or(
            random_real_formula(rng, depth - 1),
            random_real_formula(rng, depth - 1),
        ),
        3 => Formula::and(
            random_real_formula(rng, depth - 1),
            random_real_formula(rng, depth - 1),
        ),
        _ => Formula::imp(
            random_real_formula(rng, depth - 1),
            random_real_formula(rng, depth - 1),
        ),
    }
}

pub fn random_real_atom(rng: &mut StdRng) -> Formula {
    let a = random_real_term(rng, 2);
    let b = random_real_term(rng, 2);
    if rng.gen_bool(0.5) {
        Formula::Eq(a, b)
    } else {
        Formula::Lt(a, b)
    }
}

/// A random term that may mention scope variables and epsilon binders.
pub fn random_term(rng: &mut StdRng, depth: u32, scope: &mut Vec<String>) -> Term {
    if depth == 0 || (scope.is_empty() && rng.gen_bool(0.3)) {
        return if !scope.is_empty() && rng.gen_bool(0.5) {
            Term::var(&scope[rng.gen_range(0..scope.len())].clone())
        } else {
            numeral(rng.gen_range(0..=4))
        };
    }
    match rng.gen_range(0..6) {
        0 => numeral(rng.gen_range(0..=4)),
        1 if !scope.is_empty() => Term::var(&scope[rng.gen_range(0..scope.len())].clone()),
        2 => Term::succ(random_term(rng, depth - 1, scope)),
        3 => Term::add(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope)),
        4 => Term::mul(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope)),
        _ => {
            let var = format!("v{}", scope.len());
            scope.push(var.clone());
            let body = binder_body(rng, depth - 1, scope, &var);
            scope.pop();
            Term::eps(&var, body)
        }
    }
}

/// A random formula (quantifiers allowed) over the given scope.
pub fn random_formula(rng: &mut StdRng, depth: u32, scope: &mut Vec<String>) -> Formula {
    if depth == 0 {
        return random_atom(rng, scope);
    }
    match rng.gen_range(0..7) {
        0 => random_atom(rng, scope),
        1 => Formula::not(random_formula(rng, depth - 1, scope)),
        2 => Formula::or(
            random_formula(rng, depth - 1, scope),
            random_formula(rng, depth - 1, scope),
        ),
        3 => Formula::and(
            random_formula(rng, depth - 1, scope),
            random_formula(rng, depth - 1, scope),
        ),
        4 => Formula::imp(
            random_formula(rng, depth - 1, scope),
            random_formula(rng, depth - 1, scope),
        ),
        _ => {
            let var = format!("v{}", scope.len());
            scope.push(var.clone());
            let body = binder_body(rng, depth - 1, scope, &var);
            scope.pop();
            if rng.gen_bool(0.5) {
                Formula::exists(&var, body)
            } else {
                Formula::forall(&var, body)
            }
        }
    }
}

/// A binder body guaranteed to mention the bound variable.
fn binder_body(rng: &mut StdRng, depth: u32, scope: &mut Vec<String>, var: &str) -> Formula {
    let body = random_formula(rng, depth, scope);
    if body.free_vars().contains(var) {
        body
    } else {
        let anchor = Formula::Lt(Term::var(var), random_term(rng, 1, scope));
        if rng.gen_bool(0.5) {
            Formula::and(anchor, body)
        } else {
            Formula::or(anchor, body)
        }
    }
}

fn random_atom(rng: &mut StdRng, scope: &mut Vec<String>) -> Formula {
    let a = random_term(rng, 1, scope);
    let b = random_term(rng, 1, scope);
    if rng.gen_bool(0.5) {
        Formula::Eq(a, b)
    } else {
        Formula::Lt(a, b)
    }
}

/// A random derivation in the strict real regime built by forward chaining:
/// a pool of axiom-schema instances extended by tautology-plus-modus-ponens
/// steps. By construction every line is true.
pub fn random_strict_derivation(rng: &mut StdRng) -> Derivation {
    let mut lines: Vec<DerivationLine> = Vec::new();
    let axioms = rng.gen_range(2..=4);
    for _ in 0..axioms {
        lines.push(random_axiom_line(rng));
    }
    let chain_steps = rng.gen_range(1..=5);
    for _ in 0..chain_steps {
        let i = rng.gen_range(0..lines.len());
        let a = lines[i].formula.clone();
        let extra = random_real_atom(rng);
        // A -> (A | R) is a tautology whatever R is; modus ponens then
        // yields A | R.
        let disjunction = Formula::or(a.clone(), extra);
        let taut = Formula::imp(a, disjunction.clone());
        lines.push(DerivationLine {
            formula: taut,
            justification: Justification::Axiom(AxiomTag::Taut),
        });
        lines.push(DerivationLine {
            formula: disjunction,
            justification: Justification::ModusPonens {
                antecedent: i,
                implication: lines.len() - 1,
            },
        });
    }
    Derivation { lines }
}

fn random_axiom_line(rng: &mut StdRng) -> DerivationLine {
    let (formula, tag) = match rng.gen_range(0..9) {
        0 => {
            let t = random_real_term(rng, 2);
            (Formula::Eq(t.clone(), t), AxiomTag::IdRefl)
        }
        1 => (
            Formula::not(Formula::Eq(Term::Zero, Term::succ(random_real_term(rng, 2)))),
            AxiomTag::Arith1,
        ),
        2 => {
            let a = random_real_term(rng, 2);
            let b = random_real_term(rng, 2);
            (
                Formula::imp(
                    Formula::Eq(Term::succ(a.clone()), Term::succ(b.clone())),
                    Formula::Eq(a, b),
                ),
                AxiomTag::Arith2,
            )
        }
        3 => {
            let t = random_real_term(rng, 2);
            (Formula::Eq(Term::add(t.clone(), Term::Zero), t), AxiomTag::Arith3)
        }
        4 => {
            let a = random_real_term(rng, 2);
            let b = random_real_term(rng, 2);
            (
                Formula::Eq(
                    Term::add(a.clone(), Term::succ(b.clone())),
                    Term::succ(Term::add(a, b)),
                ),
                AxiomTag::Arith4,
            )
        }
        5 => (
            Formula::Eq(Term::mul(random_real_term(rng, 2), Term::Zero), Term::Zero),
            AxiomTag::Arith5,
        ),
        6 => {
            let a = random_real_term(rng, 2);
            let b = random_real_term(rng, 2);
            (
                Formula::Eq(
                    Term::mul(a.clone(), Term::succ(b.clone())),
                    Term::add(a.clone(), Term::mul(a, b)),
                ),
                AxiomTag::Arith6,
            )
        }
        7 => {
            // t1 = t2 -> s(t1) = s(t2) for a random one-hole context s.
            let t1 = random_real_term(rng, 1);
            let t2 = random_real_term(rng, 1);
            let shape = rng.gen_range(0..3);
            let s = |hole: &Term| match shape {
                0 => Term::succ(hole.clone()),
                1 => Term::add(hole.clone(), numeral(3)),
                _ => Term::mul(numeral(2), hole.clone()),
            };
            (
                Formula::imp(
                    Formula::Eq(t1.clone(), t2.clone()),
                    Formula::Eq(s(&t1), s(&t2)),
                ),
                AxiomTag::IdSubstTerm,
            )
        }
        _ => {
            // (A & B) -> A over random real atoms.
            let a = random_real_atom(rng);
            let b = random_real_atom(rng);
            (Formula::imp(Formula::and(a.clone(), b), a), AxiomTag::Taut)
        }
    };
    DerivationLine { formula, justification: Justification::Axiom(tag) }
}
