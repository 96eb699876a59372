//! Derivation-construction procedures instrumented with weight descent.
//!
//! Each builder maintains a partial derivation, a line list with a single
//! unjustified head formula, and repeatedly prepends a block of axioms and
//! modus ponens steps that justifies the head from a new, smaller head. The
//! weight of each successive partial derivation strictly decreases, which is
//! what certifies that the construction terminates.

use crate::eval;
use crate::ordinals::{PairWeight, TripleWeight};
use crate::proofs::AxiomTag;
use crate::syntax::{numeral, Derivation, DerivationLine, Formula, Justification, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("cannot derive an inequation from equal arguments ({0} and {0})")]
    EqualArguments(u64),
    #[error("unsupported term for this construction: {0}")]
    Unsupported(String),
    #[error("term value too large to build a numeral")]
    ValueTooLarge,
}

/// A derivation under construction with a single unjustified line, its
/// head. Each step prepends a block that justifies the previous head from a
/// new, smaller one; blocks are assembled into absolute line numbers once,
/// when the construction finishes.
#[derive(Clone, Debug)]
pub struct PartialDerivation {
    target: Formula,
    blocks: Vec<Block>,
}

#[derive(Clone, Debug)]
struct Block {
    /// Line 0 is the block's new head (justified by the following step or
    /// the closing axiom); modus ponens indices are block-local.
    lines: Vec<(Formula, Option<Justification>)>,
    /// Block-local indices justifying the previous head.
    head_refs: (usize, usize),
}

impl PartialDerivation {
    pub fn new(target: Formula) -> Self {
        PartialDerivation { target, blocks: Vec::new() }
    }

    /// The single unjustified line.
    pub fn head(&self) -> &Formula {
        self.blocks.last().map(|b| &b.lines[0].0).unwrap_or(&self.target)
    }

    /// Prepends a block of lines (block-local 0-based modus ponens indices)
    /// and justifies the current head by modus ponens from the block lines
    /// at `head_refs`. The block's first line becomes the new unjustified
    /// head.
    fn prepend(&mut self, lines: Vec<(Formula, Option<Justification>)>, head_refs: (usize, usize)) {
        debug_assert!(lines[0].1.is_none());
        self.blocks.push(Block { lines, head_refs });
    }

    /// Justifies the head as an axiom instance, completing the derivation.
    /// Textually, later blocks come first; the original target is last.
    fn finish(self, head_tag: AxiomTag) -> Derivation {
        let mut lines = Vec::new();
        let mut pending = Justification::Axiom(head_tag);
        for block in self.blocks.iter().rev() {
            let base = lines.len();
            for (i, (formula, local)) in block.lines.iter().enumerate() {
                let justification = match (i, local) {
                    (0, None) => pending.clone(),
                    (_, Some(Justification::Axiom(tag))) => Justification::Axiom(*tag),
                    (_, Some(Justification::ModusPonens { antecedent, implication })) => {
                        Justification::ModusPonens {
                            antecedent: base + antecedent,
                            implication: base + implication,
                        }
                    }
                    _ => unreachable!("only the block head is unjustified"),
                };
                lines.push(DerivationLine { formula: formula.clone(), justification });
            }
            pending = Justification::ModusPonens {
                antecedent: base + block.head_refs.0,
                implication: base + block.head_refs.1,
            };
        }
        lines.push(DerivationLine { formula: self.target, justification: pending });
        Derivation { lines }
    }
}

/// Builds a derivation of `~ n = m` (oriented so the smaller argument comes
/// first) by iterating the four-formula prepend step, one iteration per
/// weight decrement. The returned weights are the strictly decreasing head
/// weights `min(n,m), ..., 0`.
pub fn derive_neq(n: u64, m: u64) -> Result<(Derivation, Vec<u64>), TransformError> {
    if n == m {
        return Err(TransformError::EqualArguments(n));
    }
    let (a, b) = if n < m { (n, m) } else { (m, n) };
    let ell = b - a - 1;
    let target = Formula::not(Formula::Eq(numeral(a), numeral(b)));
    let mut pd = PartialDerivation::new(target);
    let mut weights = vec![a];
    for k in (0..a).rev() {
        let small = numeral(k);
        let big = numeral(k + ell + 1);
        let head = pd.head().clone();
        // (1) ~ k = k+ell+1           the new unjustified head
        let f1 = Formula::not(Formula::Eq(small.clone(), big.clone()));
        // (2) k' = (k+ell+1)' -> k = k+ell+1
        let f2 = Formula::imp(
            Formula::Eq(Term::succ(small.clone()), Term::succ(big.clone())),
            Formula::Eq(small, big),
        );
        // (3) (2) -> ((1) -> head)    contraposition
        let f3 = Formula::imp(f2.clone(), Formula::imp(f1.clone(), head.clone()));
        // (4) (1) -> head             by modus ponens from (2), (3)
        let f4 = Formula::imp(f1.clone(), head);
        pd.prepend(
            vec![
                (f1, None),
                (f2, Some(Justification::Axiom(AxiomTag::Arith2))),
                (f3, Some(Justification::Axiom(AxiomTag::Taut))),
                (f4, Some(Justification::ModusPonens { antecedent: 1, implication: 2 })),
            ],
            (0, 3),
        );
        weights.push(k);
    }
    Ok((pd.finish(AxiomTag::Arith1), weights))
}

fn check_value_term(t: &Term, allow_mul: bool) -> Result<(), TransformError> {
    match t {
        Term::Zero => Ok(()),
        Term::Succ(a) => check_value_term(a, allow_mul),
        Term::Add(a, b) => {
            check_value_term(a, allow_mul)?;
            check_value_term(b, allow_mul)
        }
        Term::Mul(a, b) if allow_mul => {
            check_value_term(a, allow_mul)?;
            check_value_term(b, allow_mul)
        }
        _ => Err(TransformError::Unsupported(t.to_string())),
    }
}

fn term_value_u64(t: &Term) -> Result<u64, TransformError> {
    let v = eval::term_value(t).map_err(|_| TransformError::Unsupported(t.to_string()))?;
    u64::try_from(v).map_err(|_| TransformError::ValueTooLarge)
}

fn subterm_at<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    let Some((&step, rest)) = path.split_first() else {
        return t;
    };
    match (t, step) {
        (Term::Succ(a), 0) => subterm_at(a, rest),
        (Term::Add(a, _), 0) | (Term::Mul(a, _), 0) => subterm_at(a, rest),
        (Term::Add(_, b), 1) | (Term::Mul(_, b), 1) => subterm_at(b, rest),
        _ => panic!("bad path"),
    }
}

fn replace_at(t: &Term, path: &[usize], new: Term) -> Term {
    let Some((&step, rest)) = path.split_first() else {
        return new;
    };
    match (t, step) {
        (Term::Succ(a), 0) => Term::succ(replace_at(a, rest, new)),
        (Term::Add(a, b), 0) => Term::add(replace_at(a, rest, new), (**b).clone()),
        (Term::Add(a, b), 1) => Term::add((**a).clone(), replace_at(b, rest, new)),
        (Term::Mul(a, b), 0) => Term::mul(replace_at(a, rest, new), (**b).clone()),
        (Term::Mul(a, b), 1) => Term::mul((**a).clone(), replace_at(b, rest, new)),
        _ => panic!("bad path"),
    }
}

/// Path to the leftmost innermost `+` or `*` whose arguments are both
/// numerals.
fn find_redex(t: &Term) -> Option<Vec<usize>> {
    match t {
        Term::Add(a, b) | Term::Mul(a, b) => {
            if let Some(mut p) = find_redex(a) {
                p.insert(0, 0);
                return Some(p);
            }
            if let Some(mut p) = find_redex(b) {
                p.insert(0, 1);
                return Some(p);
            }
            if a.is_numeral() && b.is_numeral() {
                Some(Vec::new())
            } else {
                None
            }
        }
        Term::Succ(a) => find_redex(a).map(|mut p| {
            p.insert(0, 0);
            p
        }),
        _ => None,
    }
}

/// One rewrite of the redex at `path` by the matching arithmetic axiom,
/// with the identity plumbing that carries `t_old = value` over to
/// `t_new = value`. Returns the rewritten term.
fn rewrite_step(
    pd: &mut PartialDerivation,
    current: &Term,
    path: &[usize],
    value_numeral: &Term,
) -> Term {
    let u_old = subterm_at(current, path).clone();
    let (tag, u_new) = match &u_old {
        Term::Add(a, z) if **z == Term::Zero => (AxiomTag::Arith3, (**a).clone()),
        Term::Add(a, s) => match s.as_ref() {
            Term::Succ(b) => (
                AxiomTag::Arith4,
                Term::succ(Term::add((**a).clone(), (**b).clone())),
            ),
            _ => unreachable!("redex right argument is a numeral"),
        },
        Term::Mul(_, z) if **z == Term::Zero => (AxiomTag::Arith5, Term::Zero),
        Term::Mul(a, s) => match s.as_ref() {
            Term::Succ(b) => (
                AxiomTag::Arith6,
                Term::add((**a).clone(), Term::mul((**a).clone(), (**b).clone())),
            ),
            _ => unreachable!("redex right argument is a numeral"),
        },
        _ => unreachable!("redex is + or *"),
    };
    let t_new = replace_at(current, path, u_new.clone());
    let old_eq = Formula::Eq(current.clone(), value_numeral.clone());
    let new_eq = Formula::Eq(t_new.clone(), value_numeral.clone());
    let u_eq = Formula::Eq(u_old.clone(), u_new.clone());
    let u_eq_flipped = Formula::Eq(u_new.clone(), u_old.clone());
    let u_refl = Formula::Eq(u_old.clone(), u_old.clone());
    // Symmetry of the axiom equation, then substitution into the head.
    let f2 = Formula::imp(u_eq.clone(), Formula::imp(u_refl.clone(), u_eq_flipped.clone()));
    let f3 = Formula::imp(u_refl.clone(), u_eq_flipped.clone());
    let f6 = Formula::imp(u_eq_flipped.clone(), Formula::imp(new_eq.clone(), old_eq));
    let f7 = Formula::imp(new_eq.clone(), pd.head().clone());
    pd.prepend(
        vec![
            (new_eq, None),
            (u_eq, Some(Justification::Axiom(tag))),
            (f2, Some(Justification::Axiom(AxiomTag::IdSubstFormula))),
            (f3, Some(Justification::ModusPonens { antecedent: 1, implication: 2 })),
            (u_refl, Some(Justification::Axiom(AxiomTag::IdRefl))),
            (u_eq_flipped, Some(Justification::ModusPonens { antecedent: 4, implication: 3 })),
            (f6, Some(Justification::Axiom(AxiomTag::IdSubstFormula))),
            (f7, Some(Justification::ModusPonens { antecedent: 5, implication: 6 })),
        ],
        (0, 7),
    );
    t_new
}

fn pair_measure(t: &Term) -> PairWeight {
    let (_, plus, right_sum) = op_measure(t);
    PairWeight::new(plus, right_sum)
}

fn triple_measure(t: &Term) -> TripleWeight {
    let (muls, plus, right_sum) = op_measure(t);
    TripleWeight::new(muls, plus, right_sum)
}

/// (number of `*`, number of `+`, sum of the values of all numerals that
/// occur as the right argument of a `+`).
fn op_measure(t: &Term) -> (u64, u64, u64) {
    match t {
        Term::Zero | Term::Var(_) | Term::Eps(..) => (0, 0, 0),
        Term::Succ(a) => op_measure(a),
        Term::Add(a, b) => {
            let (ma, pa, ra) = op_measure(a);
            let (mb, pb, rb) = op_measure(b);
            (ma + mb, pa + pb + 1, ra + rb + crate::syntax::numeral_value(b).unwrap_or(0))
        }
        Term::Mul(a, b) => {
            let (ma, pa, ra) = op_measure(a);
            let (mb, pb, rb) = op_measure(b);
            (ma + mb + 1, pa + pb, ra + rb)
        }
    }
}

/// Builds a derivation of `t = value(t)` for a closed term over numerals
/// and `+`, rewriting with the two addition axioms. Weights are the
/// strictly decreasing pair measures of the successive head terms.
pub fn derive_sum_value(t: &Term) -> Result<(Derivation, Vec<PairWeight>), TransformError> {
    check_value_term(t, false)?;
    let value = numeral(term_value_u64(t)?);
    let mut pd = PartialDerivation::new(Formula::Eq(t.clone(), value.clone()));
    let mut weights = vec![pair_measure(t)];
    let mut current = t.clone();
    while !current.is_numeral() {
        let path = find_redex(&current).expect("non-numeral sum term has a redex");
        current = rewrite_step(&mut pd, &current, &path, &value);
        weights.push(pair_measure(&current));
    }
    Ok((pd.finish(AxiomTag::IdRefl), weights))
}

/// Builds a derivation of `t = value(t)` for any closed epsilon-free term,
/// rewriting with the four addition and multiplication axioms. A `*` redex
/// is unfolded completely (one weight entry), so the triple measures are
/// strictly decreasing.
pub fn derive_term_value(t: &Term) -> Result<(Derivation, Vec<TripleWeight>), TransformError> {
    check_value_term(t, true)?;
    let value = numeral(term_value_u64(t)?);
    let mut pd = PartialDerivation::new(Formula::Eq(t.clone(), value.clone()));
    let mut weights = vec![triple_measure(t)];
    let mut current = t.clone();
    while !current.is_numeral() {
        let path = find_redex(&current).expect("non-numeral term has a redex");
        match subterm_at(&current, &path) {
            Term::Add(..) => {
                current = rewrite_step(&mut pd, &current, &path, &value);
            }
            Term::Mul(..) => {
                // Unfold this multiplication completely before recording.
                let mut p = path.clone();
                loop {
                    let is_base = matches!(
                        subterm_at(&current, &p),
                        Term::Mul(_, z) if **z == Term::Zero
                    );
                    current = rewrite_step(&mut pd, &current, &p, &value);
                    if is_base {
                        break;
                    }
                    p.push(1);
                }
            }
            _ => unreachable!("redex is + or *"),
        }
        weights.push(triple_measure(&current));
    }
    Ok((pd.finish(AxiomTag::IdRefl), weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::{check_descent, cmp_pair, cmp_triple, embed_pair, embed_triple};
    use crate::parse::parse_term;
    use crate::proofs::{check, soundness_audit, Regime};
    use std::cmp::Ordering;

    #[test]
    fn base_case_is_a_single_axiom_line() {
        let (d, weights) = derive_neq(0, 4).unwrap();
        assert_eq!(d.lines.len(), 1);
        assert_eq!(d.lines[0].justification, Justification::Axiom(AxiomTag::Arith1));
        assert_eq!(weights, vec![0]);
        assert!(check(&d, Regime::RealStrict).is_ok());
    }

    #[test]
    fn neq_two_four_has_nine_lines() {
        let (d, weights) = derive_neq(2, 4).unwrap();
        assert_eq!(d.lines.len(), 9);
        assert_eq!(weights, vec![2, 1, 0]);
        assert!(check(&d, Regime::RealStrict).is_ok());
        assert_eq!(soundness_audit(&d), Ok(()));
        assert_eq!(d.end_formula().unwrap().to_string(), "~ 0'' = 0''''");
    }

    #[test]
    fn neq_block_instantiates_successor_injectivity_and_contraposition() {
        let (d, _) = derive_neq(1, 2).unwrap();
        assert_eq!(d.lines.len(), 5);
        assert_eq!(d.lines[1].formula.to_string(), "(0' = 0'' -> 0 = 0')");
        assert_eq!(
            d.lines[2].formula.to_string(),
            "((0' = 0'' -> 0 = 0') -> (~ 0 = 0' -> ~ 0' = 0''))"
        );
        assert_eq!(d.lines[1].justification, Justification::Axiom(AxiomTag::Arith2));
        assert_eq!(d.lines[2].justification, Justification::Axiom(AxiomTag::Taut));
    }

    #[test]
    fn neq_arguments_are_oriented() {
        let (d, _) = derive_neq(4, 2).unwrap();
        assert_eq!(d.end_formula().unwrap().to_string(), "~ 0'' = 0''''");
    }

    #[test]
    fn neq_rejects_equal_arguments() {
        assert_eq!(derive_neq(3, 3), Err(TransformError::EqualArguments(3)));
    }

    #[test]
    fn sum_weights_follow_the_worked_example() {
        let t = parse_term("(0''' + (0'''''''''' + 0'))").unwrap();
        let (d, weights) = derive_sum_value(&t).unwrap();
        assert_eq!(weights[0], PairWeight::new(2, 1));
        assert_eq!(weights[1], PairWeight::new(2, 0));
        assert_eq!(weights[2], PairWeight::new(1, 11));
        for pair in weights.windows(2) {
            assert_eq!(cmp_pair(pair[1], pair[0]), Ordering::Less);
        }
        assert!(check(&d, Regime::RealStrict).is_ok());
        assert_eq!(soundness_audit(&d), Ok(()));
        assert_eq!(
            d.end_formula().unwrap(),
            &Formula::Eq(t, numeral(14))
        );
        let trace: Vec<_> = weights.iter().map(|w| embed_pair(*w)).collect();
        assert_eq!(check_descent(&trace), Ok(()));
    }

    #[test]
    fn sum_of_a_bare_numeral_is_reflexivity() {
        let (d, weights) = derive_sum_value(&numeral(5)).unwrap();
        assert_eq!(d.lines.len(), 1);
        assert_eq!(d.lines[0].justification, Justification::Axiom(AxiomTag::IdRefl));
        assert_eq!(weights, vec![PairWeight::new(0, 0)]);
    }

    #[test]
    fn sum_rejects_multiplication() {
        let t = parse_term("(0' * 0')").unwrap();
        assert!(matches!(derive_sum_value(&t), Err(TransformError::Unsupported(_))));
    }

    #[test]
    fn product_with_zero_unfolds_in_one_step() {
        let t = parse_term("(0'' * 0)").unwrap();
        let (d, weights) = derive_term_value(&t).unwrap();
        assert_eq!(weights, vec![TripleWeight::new(1, 0, 0), TripleWeight::new(0, 0, 0)]);
        assert!(check(&d, Regime::RealStrict).is_ok());
        assert_eq!(d.end_formula().unwrap(), &Formula::Eq(t, Term::Zero));
    }

    #[test]
    fn product_weights_descend_with_first_component() {
        let t = parse_term("(0'' * 0'')").unwrap();
        let (d, weights) = derive_term_value(&t).unwrap();
        assert_eq!(weights[0].n1, 1);
        assert_eq!(weights[1].n1, 0);
        for pair in weights.windows(2) {
            assert_eq!(cmp_triple(pair[1], pair[0]), Ordering::Less);
        }
        assert!(check(&d, Regime::RealStrict).is_ok());
        assert_eq!(soundness_audit(&d), Ok(()));
        assert_eq!(d.end_formula().unwrap(), &Formula::Eq(t, numeral(4)));
        let trace: Vec<_> = weights.iter().map(|w| embed_triple(*w)).collect();
        assert_eq!(check_descent(&trace), Ok(()));
    }

    #[test]
    fn both_builders_agree_on_sums() {
        let t = parse_term("(0''''''' + 0''''')").unwrap();
        let (via_sum, _) = derive_sum_value(&t).unwrap();
        let (via_term, _) = derive_term_value(&t).unwrap();
        assert_eq!(via_sum.end_formula(), via_term.end_formula());
        assert_eq!(via_sum.end_formula().unwrap(), &Formula::Eq(t, numeral(12)));
        assert!(check(&via_term, Regime::RealStrict).is_ok());
    }

    #[test]
    fn mixed_term_derivation_checks() {
        let t = parse_term("((0'' * 0''') + (0' + 0''))").unwrap();
        let (d, weights) = derive_term_value(&t).unwrap();
        assert!(check(&d, Regime::RealStrict).is_ok());
        assert_eq!(soundness_audit(&d), Ok(()));
        assert_eq!(d.end_formula().unwrap(), &Formula::Eq(t, numeral(9)));
        for pair in weights.windows(2) {
            assert_eq!(cmp_triple(pair[1], pair[0]), Ordering::Less);
        }
    }
}
