//! Parser for the ASCII surface grammar of terms, formulas, and derivation
//! files.
//!
//! Grammar (fully parenthesized, following the printed notation):
//!
//! ```text
//! term    := primary '\''*
//! primary := '0' | ident | 'eps' ident '(' formula ')'
//!          | '(' term (('+' | '*') term)? ')'
//! formula := '~' formula
//!          | 'Ex' ident formula | 'All' ident formula
//!          | term ('=' | '<') term
//!          | '(' formula (('|' | '&' | '->') formula)? ')'
//! ```
//!
//! Derivation files carry one line per formula, prefixed with `ax:<tag>` or
//! `mp:<i>,<j>` (1-based indices). Blank lines and lines starting with `#`
//! are ignored.

use std::fmt;
use std::str::FromStr;

use crate::proofs::AxiomTag;
use crate::syntax::{Derivation, DerivationLine, Formula, Justification, Term};

/// A syntax error tagged with a character position (and a line number for
/// multi-line inputs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { line: 1, pos, msg: msg.into() }
    }

    fn on_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

const KEYWORDS: [&str; 3] = ["Ex", "All", "eps"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Zero,
    Prime,
    Plus,
    Star,
    LParen,
    RParen,
    Eq,
    Lt,
    Tilde,
    Bar,
    Amp,
    Arrow,
    Ident(String),
    Keyword(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Zero => "0",
            Tok::Prime => "'",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Eq => "=",
            Tok::Lt => "<",
            Tok::Tilde => "~",
            Tok::Bar => "|",
            Tok::Amp => "&",
            Tok::Arrow => "->",
            Tok::Ident(s) => s,
            Tok::Keyword(s) => s,
        };
        write!(f, "{s}")
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' => out.push((Tok::Zero, pos)),
            '\'' => out.push((Tok::Prime, pos)),
            '+' => out.push((Tok::Plus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            '=' => out.push((Tok::Eq, pos)),
            '<' => out.push((Tok::Lt, pos)),
            '~' => out.push((Tok::Tilde, pos)),
            '|' => out.push((Tok::Bar, pos)),
            '&' => out.push((Tok::Amp, pos)),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push((Tok::Arrow, pos));
                    i += 1;
                } else {
                    return Err(ParseError::new(pos, "expected '->' after '-'"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                match KEYWORDS.iter().find(|k| **k == word) {
                    Some(k) => out.push((Tok::Keyword(k), pos)),
                    None => out.push((Tok::Ident(word), pos)),
                }
            }
            other => {
                return Err(ParseError::new(pos, format!("unexpected character '{other}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        let toks = tokenize(src)?;
        let end = src.chars().count();
        Ok(Parser { toks, i: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{t}'")))
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let mut msg = msg.into();
        match self.peek() {
            Some(t) => msg.push_str(&format!(", found '{t}'")),
            None => msg.push_str(", found end of input"),
        }
        ParseError::new(self.pos(), msg)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.i += 1;
                Ok(name)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Prime) {
            self.i += 1;
            t = Term::succ(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Zero) => {
                self.i += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Ident(_)) => Ok(Term::Var(self.ident()?)),
            Some(Tok::Keyword("eps")) => {
                self.i += 1;
                let var = self.ident()?;
                let open = self.pos();
                self.expect(Tok::LParen)?;
                let body = self.formula()?;
                self.expect(Tok::RParen)?;
                if !body.free_vars().contains(&var) {
                    return Err(ParseError::new(
                        open,
                        format!("epsilon variable '{var}' is unbound: it does not occur free in the body"),
                    ));
                }
                Ok(Term::Eps(var, Box::new(body)))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t1 = self.term()?;
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.i += 1;
                        let t2 = self.term()?;
                        self.expect(Tok::RParen)?;
                        Ok(Term::add(t1, t2))
                    }
                    Some(Tok::Star) => {
                        self.i += 1;
                        let t2 = self.term()?;
                        self.expect(Tok::RParen)?;
                        Ok(Term::mul(t1, t2))
                    }
                    Some(Tok::RParen) => {
                        self.i += 1;
                        Ok(t1)
                    }
                    _ => Err(self.err("expected '+', '*', or ')'")),
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.i += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::Keyword(k @ ("Ex" | "All"))) => {
                let k = *k;
                self.i += 1;
                let var = self.ident()?;
                let body = self.formula()?;
                Ok(match k {
                    "Ex" => Formula::Exists(var, Box::new(body)),
                    _ => Formula::Forall(var, Box::new(body)),
                })
            }
            Some(Tok::LParen) => {
                // Either an atomic formula whose left term is parenthesized,
                // e.g. `(0 + 0) = 0`, or a parenthesized formula. Try the
                // term reading first and fall back.
                let save = self.i;
                if let Ok(t1) = self.term() {
                    match self.peek() {
                        Some(Tok::Eq) => {
                            self.i += 1;
                            return Ok(Formula::Eq(t1, self.term()?));
                        }
                        Some(Tok::Lt) => {
                            self.i += 1;
                            return Ok(Formula::Lt(t1, self.term()?));
                        }
                        _ => {}
                    }
                }
                self.i = save;
                self.i += 1; // consume '('
                let f1 = self.formula()?;
                match self.peek() {
                    Some(Tok::Bar) => {
                        self.i += 1;
                        let f2 = self.formula()?;
                        self.expect(Tok::RParen)?;
                        Ok(Formula::or(f1, f2))
                    }
                    Some(Tok::Amp) => {
                        self.i += 1;
                        let f2 = self.formula()?;
                        self.expect(Tok::RParen)?;
                        Ok(Formula::and(f1, f2))
                    }
                    Some(Tok::Arrow) => {
                        self.i += 1;
                        let f2 = self.formula()?;
                        self.expect(Tok::RParen)?;
                        Ok(Formula::imp(f1, f2))
                    }
                    Some(Tok::RParen) => {
                        self.i += 1;
                        Ok(f1)
                    }
                    _ => Err(self.err("expected '|', '&', '->', or ')'")),
                }
            }
            _ => {
                let t1 = self.term()?;
                match self.peek() {
                    Some(Tok::Eq) => {
                        self.i += 1;
                        Ok(Formula::Eq(t1, self.term()?))
                    }
                    Some(Tok::Lt) => {
                        self.i += 1;
                        Ok(Formula::Lt(t1, self.term()?))
                    }
                    _ => Err(self.err("expected '=' or '<'")),
                }
            }
        }
    }

    fn finish<T>(self, value: T) -> Result<T, ParseError> {
        if self.i == self.toks.len() {
            Ok(value)
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// Parses a single term.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish(t)
}

/// Parses a single formula (quantifiers allowed).
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish(f)
}

/// Parses a derivation file: one justified formula per line.
pub fn parse_derivation(src: &str) -> Result<Derivation, ParseError> {
    let mut lines = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let lineno = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (prefix, rest) = trimmed
            .split_once(char::is_whitespace)
            .ok_or_else(|| ParseError::new(0, "expected 'ax:<tag>' or 'mp:<i>,<j>' prefix").on_line(lineno))?;
        let justification = parse_justification(prefix).map_err(|e| e.on_line(lineno))?;
        let formula = parse_formula(rest).map_err(|e| e.on_line(lineno))?;
        lines.push(DerivationLine { formula, justification });
    }
    Ok(Derivation { lines })
}

fn parse_justification(prefix: &str) -> Result<Justification, ParseError> {
    if let Some(tag) = prefix.strip_prefix("ax:") {
        let tag = AxiomTag::from_str(tag)
            .map_err(|_| ParseError::new(0, format!("unknown axiom tag '{tag}'")))?;
        Ok(Justification::Axiom(tag))
    } else if let Some(refs) = prefix.strip_prefix("mp:") {
        let (i, j) = refs
            .split_once(',')
            .ok_or_else(|| ParseError::new(0, "expected 'mp:<i>,<j>'"))?;
        let i: usize = i.parse().map_err(|_| ParseError::new(0, "bad mp index"))?;
        let j: usize = j.parse().map_err(|_| ParseError::new(0, "bad mp index"))?;
        if i == 0 || j == 0 {
            return Err(ParseError::new(0, "mp indices are 1-based"));
        }
        Ok(Justification::ModusPonens { antecedent: i - 1, implication: j - 1 })
    } else {
        Err(ParseError::new(0, format!("expected 'ax:' or 'mp:' prefix, found '{prefix}'")))
    }
}
