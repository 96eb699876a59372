//! Ordinal notation systems with decidable strict orders: pairs (below
//! omega^2), triples (below omega^3), finite coefficient sequences (below
//! omega^omega), and Cantor normal form below epsilon-0, together with
//! order-embeddings and a descent monitor.
//!
//! Only notations are implemented: comparison and descent checking, no
//! general ordinal arithmetic. Whether the orders are well-founded is not
//! something an executable artifact can certify; the monitors check that
//! concrete traces descend.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("non-canonical sequence: leading coefficient is zero")]
    LeadingZero,
    #[error("non-canonical normal form: {0}")]
    NonCanonical(String),
    #[error("ordinal expression error at position {0}: {1}")]
    Parse(usize, String),
}

/// A pair weight, ordered lexicographically; order type omega^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairWeight {
    pub n1: u64,
    pub n2: u64,
}

impl PairWeight {
    pub fn new(n1: u64, n2: u64) -> Self {
        PairWeight { n1, n2 }
    }
}

/// `<n1, n2> < <k1, k2>` iff (1) `n1 = k1` but `n2 < k2`, or (2) `n1 < k1`.
pub fn cmp_pair(a: PairWeight, b: PairWeight) -> Ordering {
    (a.n1, a.n2).cmp(&(b.n1, b.n2))
}

impl PartialOrd for PairWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_pair(*self, *other))
    }
}

impl Ord for PairWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_pair(*self, *other)
    }
}

impl fmt::Display for PairWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.n1, self.n2)
    }
}

/// A triple weight; order type omega^3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripleWeight {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
}

impl TripleWeight {
    pub fn new(n1: u64, n2: u64, n3: u64) -> Self {
        TripleWeight { n1, n2, n3 }
    }
}

/// `<n1, n2, n3> < <k1, k2, k3>` iff `n1 < k1`, or `n1 = k1` and the pairs
/// `<n2, n3>` compare as pair weights.
pub fn cmp_triple(a: TripleWeight, b: TripleWeight) -> Ordering {
    a.n1.cmp(&b.n1)
        .then_with(|| cmp_pair(PairWeight::new(a.n2, a.n3), PairWeight::new(b.n2, b.n3)))
}

impl PartialOrd for TripleWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_triple(*self, *other))
    }
}

impl Ord for TripleWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_triple(*self, *other)
    }
}

impl fmt::Display for TripleWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.n1, self.n2, self.n3)
    }
}

/// A finite coefficient sequence, most significant first, with no leading
/// zero (the empty sequence is 0); order type omega^omega.
///
/// Reading `[c_{k-1}, ..., c_0]` as coefficients of descending omega powers
/// makes length-then-lexicographic the matching order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqWeight(Vec<u64>);

impl SeqWeight {
    /// Builds a canonical sequence; rejects a leading zero.
    pub fn new(coefficients: Vec<u64>) -> Result<Self, OrdinalError> {
        if coefficients.first() == Some(&0) {
            return Err(OrdinalError::LeadingZero);
        }
        Ok(SeqWeight(coefficients))
    }

    /// Builds a canonical sequence by stripping leading zeros.
    pub fn from_raw(coefficients: Vec<u64>) -> Self {
        let start = coefficients.iter().position(|c| *c != 0).unwrap_or(coefficients.len());
        SeqWeight(coefficients[start..].to_vec())
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }
}

/// Shorter sequences are smaller; equal lengths compare lexicographically.
pub fn cmp_seq(a: &SeqWeight, b: &SeqWeight) -> Ordering {
    a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0))
}

impl PartialOrd for SeqWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_seq(self, other))
    }
}

impl Ord for SeqWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_seq(self, other)
    }
}

impl fmt::Display for SeqWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Cantor normal form below epsilon-0: a finite sum of `w^e * c` terms with
/// strictly decreasing exponents (themselves normal forms) and positive
/// coefficients. The empty sum is 0. Canonical form is enforced at
/// construction, so structural equality is ordinal equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf {
    terms: Vec<(Cnf, u64)>,
}

impl Cnf {
    pub fn zero() -> Cnf {
        Cnf { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Cnf {
        if n == 0 {
            Cnf::zero()
        } else {
            Cnf { terms: vec![(Cnf::zero(), n)] }
        }
    }

    pub fn omega() -> Cnf {
        Cnf { terms: vec![(Cnf::finite(1), 1)] }
    }

    /// `w^exponent * coefficient` for a positive coefficient.
    pub fn power(exponent: Cnf, coefficient: u64) -> Result<Cnf, OrdinalError> {
        if coefficient == 0 {
            return Err(OrdinalError::NonCanonical("zero coefficient".into()));
        }
        Ok(Cnf { terms: vec![(exponent, coefficient)] })
    }

    /// Validates an already-descending term list.
    pub fn new(terms: Vec<(Cnf, u64)>) -> Result<Cnf, OrdinalError> {
        for (e, c) in &terms {
            if *c == 0 {
                return Err(OrdinalError::NonCanonical("zero coefficient".into()));
            }
            let _ = e;
        }
        for pair in terms.windows(2) {
            if cmp_cnf(&pair[0].0, &pair[1].0) != Ordering::Greater {
                return Err(OrdinalError::NonCanonical(
                    "exponents not strictly decreasing".into(),
                ));
            }
        }
        Ok(Cnf { terms })
    }

    /// Canonicalizes a raw term list: sorts exponents descending, merges
    /// equal exponents by adding coefficients, and drops zero coefficients.
    /// This is what makes `w + w` and `w*2` the same notation.
    pub fn normalize(raw: Vec<(Cnf, u64)>) -> Cnf {
        let mut terms: Vec<(Cnf, u64)> = Vec::new();
        for (e, c) in raw {
            if c == 0 {
                continue;
            }
            match terms.iter_mut().find(|(e2, _)| cmp_cnf(e2, &e) == Ordering::Equal) {
                Some((_, c2)) => *c2 += c,
                None => terms.push((e, c)),
            }
        }
        terms.sort_by(|a, b| cmp_cnf(&b.0, &a.0));
        Cnf { terms }
    }

    pub fn terms(&self) -> &[(Cnf, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Compares normal forms: term lists lexicographically by (exponent,
/// coefficient), a strict prefix being smaller.
pub fn cmp_cnf(a: &Cnf, b: &Cnf) -> Ordering {
    for (ta, tb) in a.terms.iter().zip(b.terms.iter()) {
        match cmp_cnf(&ta.0, &tb.0).then_with(|| ta.1.cmp(&tb.1)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

impl PartialOrd for Cnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_cnf(self, other))
    }
}

impl Ord for Cnf {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_cnf(self, other)
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e.terms.len() == 1 && e.terms[0] == (Cnf::zero(), 1) {
                write!(f, "w")?;
            } else if e.terms.len() == 1 && e.terms[0].0.is_zero() {
                write!(f, "w^{}", e.terms[0].1)?;
            } else if e.terms.len() == 1 && e.terms[0].1 == 1 && e.terms[0].0 == Cnf::finite(1) {
                write!(f, "w^w")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// `<n1, n2>` embeds as `w*n1 + n2`.
pub fn embed_pair(p: PairWeight) -> Cnf {
    Cnf::normalize(vec![(Cnf::finite(1), p.n1), (Cnf::zero(), p.n2)])
}

/// `<n1, n2, n3>` embeds as `w^2*n1 + w*n2 + n3`.
pub fn embed_triple(t: TripleWeight) -> Cnf {
    Cnf::normalize(vec![
        (Cnf::finite(2), t.n1),
        (Cnf::finite(1), t.n2),
        (Cnf::zero(), t.n3),
    ])
}

/// `[c_{k-1}, ..., c_0]` embeds positionally as `w^(k-1)*c_{k-1} + ... + c_0`.
pub fn embed_seq(s: &SeqWeight) -> Cnf {
    let k = s.0.len();
    let raw = s
        .0
        .iter()
        .enumerate()
        .map(|(i, c)| (Cnf::finite((k - 1 - i) as u64), *c))
        .collect();
    Cnf::normalize(raw)
}

/// Checks that a trace of notations is strictly decreasing; on failure
/// reports the 0-based index of the first entry not below its predecessor.
pub fn check_descent(trace: &[Cnf]) -> Result<(), usize> {
    for i in 1..trace.len() {
        if cmp_cnf(&trace[i], &trace[i - 1]) != Ordering::Less {
            return Err(i);
        }
    }
    Ok(())
}

/// Parses the small ordinal expression grammar used by the command line:
/// sums of `w^<exp>*<coeff>` terms, e.g. `w^w*2 + w*3 + 5`. Non-canonical
/// spellings such as `w + w` are normalized.
pub fn parse_cnf(src: &str) -> Result<Cnf, OrdinalError> {
    let mut p = OrdParser { chars: src.chars().collect(), i: 0 };
    let cnf = p.sum()?;
    p.skip_ws();
    if p.i < p.chars.len() {
        return Err(OrdinalError::Parse(p.i, "unexpected trailing input".into()));
    }
    Ok(cnf)
}

struct OrdParser {
    chars: Vec<char>,
    i: usize,
}

impl OrdParser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.i;
        while self.chars.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(OrdinalError::Parse(self.i, "expected a number".into()));
        }
        let s: String = self.chars[start..self.i].iter().collect();
        s.parse().map_err(|_| OrdinalError::Parse(start, "number out of range".into()))
    }

    fn sum(&mut self) -> Result<Cnf, OrdinalError> {
        let mut raw = Vec::new();
        loop {
            let (e, c) = self.product()?;
            raw.push((e, c));
            if !self.eat('+') {
                break;
            }
        }
        Ok(Cnf::normalize(raw))
    }

    // One `w^exp*coeff` (or bare number) summand, as (exponent, coefficient).
    fn product(&mut self) -> Result<(Cnf, u64), OrdinalError> {
        self.skip_ws();
        if self.chars.get(self.i) == Some(&'w') {
            self.i += 1;
            let exponent = if self.eat('^') { self.exponent()? } else { Cnf::finite(1) };
            let coefficient = if self.eat('*') { self.number()? } else { 1 };
            Ok((exponent, coefficient))
        } else {
            Ok((Cnf::zero(), self.number()?))
        }
    }

    fn exponent(&mut self) -> Result<Cnf, OrdinalError> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err(OrdinalError::Parse(self.i, "expected ')'".into()));
            }
            Ok(e)
        } else if self.chars.get(self.i) == Some(&'w') {
            self.i += 1;
            if self.eat('^') {
                let inner = self.exponent()?;
                Cnf::power(inner, 1)
            } else {
                Ok(Cnf::omega())
            }
        } else {
            Ok(Cnf::finite(self.number()?))
        }
    }
}
