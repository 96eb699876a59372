//! A proof-theory toolkit for the epsilon calculus over first-order
//! arithmetic.
//!
//! The pieces fit together as a pipeline:
//!
//! * [`syntax`] / [`parse`]: terms, formulas, derivations, and their ASCII
//!   surface grammar;
//! * [`translate`]: quantifier elimination via epsilon terms;
//! * [`eval`]: finitary values and truth for real (closed, epsilon-free,
//!   quantifier-free) formulas;
//! * [`proofs`]: axiom-schema recognition and derivation checking for the
//!   ideal system and its real subsystems;
//! * [`esubst`]: the epsilon substitution method, turning ideal derivations
//!   of real formulas into real derivations;
//! * [`ordinals`]: ordinal notations below epsilon-0 with decidable orders,
//!   used to monitor that the procedures descend;
//! * [`transform`]: derivation builders whose steps carry strictly
//!   decreasing weights.

pub mod esubst;
pub mod eval;
pub mod ordinals;
pub mod parse;
pub mod proofs;
pub mod syntax;
pub mod transform;
pub mod translate;

pub use parse::{parse_derivation, parse_formula, parse_term, ParseError};
pub use syntax::{numeral, numeral_value, Derivation, Formula, Term};
