//! Finitary evaluator: values of closed epsilon-free terms and truth of real
//! formulas.
//!
//! Evaluation performs no search: a term's value and a real formula's truth
//! are computed by structural recursion with arbitrary-precision naturals,
//! memoizing repeated `+`/`*` subterms within a single call.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    /// The term contains an epsilon term or a free variable and so has no
    /// finitary value.
    #[error("ideal term: {0}")]
    IdealTerm(String),
    /// The formula is not real: it contains a quantifier, an epsilon term,
    /// or a free variable.
    #[error("not a real formula: {0}")]
    NotReal(String),
}

/// The value of a closed epsilon-free term.
pub fn term_value(t: &Term) -> Result<BigUint, EvalError> {
    let mut memo = HashMap::new();
    value_rec(t, &mut memo)
}

fn value_rec(t: &Term, memo: &mut HashMap<Term, BigUint>) -> Result<BigUint, EvalError> {
    // Successor spines (numerals in particular) are walked iteratively.
    let mut primes = 0u64;
    let mut cur = t;
    while let Term::Succ(inner) = cur {
        primes += 1;
        cur = inner;
    }
    let base = match cur {
        Term::Zero => BigUint::ZERO,
        Term::Var(x) => return Err(EvalError::IdealTerm(format!("free variable '{x}'"))),
        Term::Eps(..) => return Err(EvalError::IdealTerm(format!("epsilon term {cur}"))),
        Term::Add(..) | Term::Mul(..) => {
            if let Some(v) = memo.get(cur) {
                v.clone()
            } else {
                let v = match cur {
                    Term::Add(a, b) => value_rec(a, memo)? + value_rec(b, memo)?,
                    Term::Mul(a, b) => value_rec(a, memo)? * value_rec(b, memo)?,
                    _ => unreachable!(),
                };
                memo.insert(cur.clone(), v.clone());
                v
            }
        }
        Term::Succ(..) => unreachable!(),
    };
    Ok(base + primes)
}

/// The truth value of a real formula.
pub fn truth(f: &Formula) -> Result<bool, EvalError> {
    let mut memo = HashMap::new();
    truth_rec(f, &mut memo)
}

fn truth_rec(f: &Formula, memo: &mut HashMap<Term, BigUint>) -> Result<bool, EvalError> {
    let atom = |a: &Term, b: &Term, memo: &mut HashMap<Term, BigUint>| {
        let va = value_rec(a, memo).map_err(not_real)?;
        let vb = value_rec(b, memo).map_err(not_real)?;
        Ok::<_, EvalError>((va, vb))
    };
    match f {
        Formula::Eq(a, b) => {
            let (va, vb) = atom(a, b, memo)?;
            Ok(va == vb)
        }
        Formula::Lt(a, b) => {
            let (va, vb) = atom(a, b, memo)?;
            Ok(va < vb)
        }
        Formula::Not(g) => Ok(!truth_rec(g, memo)?),
        Formula::Or(a, b) => Ok(truth_rec(a, memo)? | truth_rec(b, memo)?),
        Formula::And(a, b) => Ok(truth_rec(a, memo)? & truth_rec(b, memo)?),
        Formula::Imp(a, b) => Ok(!truth_rec(a, memo)? | truth_rec(b, memo)?),
        Formula::Exists(..) | Formula::Forall(..) => {
            Err(EvalError::NotReal(format!("quantifier in {f}")))
        }
    }
}

fn not_real(e: EvalError) -> EvalError {
    match e {
        EvalError::IdealTerm(msg) => EvalError::NotReal(msg),
        other => other,
    }
}
