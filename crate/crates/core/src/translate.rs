//! Quantifier elimination by epsilon translation.
//!
//! `Ex x B` becomes `tr(B)[x := eps x (tr(B))]` and `All x B` becomes
//! `tr(B)[x := eps x (~ tr(B))]`; atoms are unchanged and the translation
//! commutes with the connectives. Vacuous quantifiers are dropped, and
//! bound variables of generated epsilon terms are renamed apart by the
//! capture-avoiding substitution.

use crate::parse::parse_formula;
use crate::syntax::{Formula, Term};

/// Eliminates all quantifiers from a formula.
pub fn eps_translate(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Lt(..) => f.clone(),
        Formula::Not(g) => Formula::not(eps_translate(g)),
        Formula::Or(a, b) => Formula::or(eps_translate(a), eps_translate(b)),
        Formula::And(a, b) => Formula::and(eps_translate(a), eps_translate(b)),
        Formula::Imp(a, b) => Formula::imp(eps_translate(a), eps_translate(b)),
        Formula::Exists(x, body) => {
            let tb = eps_translate(body);
            if !tb.free_vars().contains(x) {
                return tb;
            }
            let witness = Term::Eps(x.clone(), Box::new(tb.clone()));
            tb.substitute(x, &witness)
        }
        Formula::Forall(x, body) => {
            let tb = eps_translate(body);
            if !tb.free_vars().contains(x) {
                return tb;
            }
            let counterexample = Term::Eps(x.clone(), Box::new(Formula::not(tb.clone())));
            tb.substitute(x, &counterexample)
        }
    }
}

/// The translation of `Ex x Ex y (x < y)`, whose nested epsilon terms make a
/// convenient golden value:
/// `eps x (x < eps z (x < z)) < eps y (eps x (x < eps z (x < z)) < y)`.
pub fn eps_translate_demo() -> Formula {
    let input = parse_formula("Ex x Ex y (x < y)").expect("demo input parses");
    eps_translate(&input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn tr(src: &str) -> Formula {
        eps_translate(&parse_formula(src).unwrap())
    }

    #[test]
    fn existential_unfolds_to_witness() {
        let got = tr("Ex x x = 0");
        let want = parse_formula("eps x (x = 0) = 0").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn universal_unfolds_to_counterexample() {
        let got = tr("All x x = x");
        let want = parse_formula("eps x (~ x = x) = eps x (~ x = x)").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn nested_existentials_match_golden() {
        let got = eps_translate_demo();
        let want = parse_formula(
            "eps x (x < eps z (x < z)) < eps y (eps x (x < eps z (x < z)) < y)",
        )
        .unwrap();
        assert!(alpha_eq(&got, &want), "got {got}");
    }

    #[test]
    fn quantifier_free_is_fixed() {
        for src in ["0 = 0", "(0 < 0' & ~ 0 = 0')", "eps x (x < 0') = 0"] {
            let f = parse_formula(src).unwrap();
            assert_eq!(eps_translate(&f), f);
        }
    }

    #[test]
    fn vacuous_quantifiers_are_dropped() {
        assert_eq!(tr("Ex x 0 = 0"), parse_formula("0 = 0").unwrap());
        assert_eq!(tr("All x 0 < 0'"), parse_formula("0 < 0'").unwrap());
    }

    #[test]
    fn output_is_quantifier_free() {
        for src in [
            "Ex x All y (x < y -> Ex z (y < z & x < z))",
            "All x Ex y (x < y | Ex z z = x)",
        ] {
            assert!(tr(src).is_quantifier_free(), "{src}");
        }
    }
}
