//! Exact free associative algebra over the rationals.
//!
//! Generators `G[i,j]` are indexed by the (row, column) positions of a
//! rectangular matrix basis. Words are finite generator sequences compared in
//! deglex order (degree first, then lexicographic on letters); polynomials
//! store their terms canonically, with no zero coefficients, and print with
//! terms in deglex-descending order so that serialized forms are stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`; `d` must be nonzero.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// One generator symbol, identified by the 1-based matrix position it
/// corresponds to. Generators order by (row, col).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId {
    pub row: u8,
    pub col: u8,
}

impl GenId {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(
            (1..=255).contains(&row) && (1..=255).contains(&col),
            "generator index out of range: ({row},{col})"
        );
        GenId {
            row: row as u8,
            col: col as u8,
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{},{}]", self.row, self.col)
    }
}

/// Generator context: `p` rows and `q` columns.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Shape {
    pub p: usize,
    pub q: usize,
}

impl Shape {
    pub fn new(p: usize, q: usize) -> Self {
        assert!(p >= 1 && q >= 1, "shape must have positive dimensions");
        Shape { p, q }
    }

    pub fn gen_count(&self) -> usize {
        self.p * self.q
    }

    /// All generators in row-major ((row, col) ascending) order.
    pub fn gens(&self) -> impl Iterator<Item = GenId> + '_ {
        (1..=self.p).flat_map(move |i| (1..=self.q).map(move |j| GenId::new(i, j)))
    }

    pub fn contains(&self, g: GenId) -> bool {
        (1..=self.p).contains(&(g.row as usize)) && (1..=self.q).contains(&(g.col as usize))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A word: a finite sequence of generators. The empty word is the
/// multiplicative identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<GenId>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn single(g: GenId) -> Self {
        Word { letters: vec![g] }
    }

    pub fn from_letters(letters: Vec<GenId>) -> Self {
        Word { letters }
    }

    pub fn from_slice(letters: &[GenId]) -> Self {
        Word {
            letters: letters.to_vec(),
        }
    }

    pub fn letters(&self) -> &[GenId] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `prefix · self · suffix` where prefix/suffix are letter slices.
    pub fn surround(&self, prefix: &[GenId], suffix: &[GenId]) -> Word {
        let mut letters = Vec::with_capacity(prefix.len() + self.letters.len() + suffix.len());
        letters.extend_from_slice(prefix);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(suffix);
        Word { letters }
    }

    /// True when `factor` occurs as a contiguous subword.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        let n = factor.letters.len();
        if n == 0 {
            return true;
        }
        if n > self.letters.len() {
            return false;
        }
        self.letters.windows(n).any(|w| w == factor.letters)
    }
}

/// Deglex: degree first, then lexicographic on the letter sequence.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Noncommutative polynomial: a finite map from words to nonzero rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::empty())
    }

    pub fn gen(g: GenId) -> Self {
        NcPoly::from_word(Word::single(g))
    }

    pub fn from_word(w: Word) -> Self {
        NcPoly::from_term(w, Scalar::one())
    }

    pub fn from_term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub(crate) fn from_map(terms: BTreeMap<Word, Scalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Degree of the leading word, if any.
    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.degree())
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Deglex-greatest term.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Terms in deglex-ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in deglex-descending order (the canonical display order).
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }
}

impl std::ops::AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        for (w, c) in rhs.terms.iter() {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl std::ops::Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (wa, ca) in self.terms.iter() {
            for (wb, cb) in rhs.terms.iter() {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.iter_desc().enumerate() {
            if i == 0 {
                write!(f, "{c} * {w}")?;
            } else if c.is_negative() {
                write!(f, " - {} * {w}", -c)?;
            } else {
                write!(f, " + {c} * {w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
    #[error("malformed generator `{0}` (expected G[row,col])")]
    BadGenerator(String),
    #[error("malformed term `{0}`")]
    BadTerm(String),
}

fn parse_scalar(s: &str) -> Result<Scalar, ParseError> {
    let bad = || ParseError::BadCoefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn parse_gen(s: &str) -> Result<GenId, ParseError> {
    let bad = || ParseError::BadGenerator(s.to_string());
    let inner = s
        .strip_prefix("G[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (r, c) = inner.split_once(',').ok_or_else(bad)?;
    let row: usize = r.trim().parse().map_err(|_| bad())?;
    let col: usize = c.trim().parse().map_err(|_| bad())?;
    if row == 0 || col == 0 || row > 255 || col > 255 {
        return Err(bad());
    }
    Ok(GenId::new(row, col))
}

/// Parses the word part of a term: `1` or whitespace-separated generators.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::BadTerm(s.to_string()));
    }
    if s == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        letters.push(parse_gen(tok)?);
    }
    Ok(Word::from_letters(letters))
}

impl FromStr for NcPoly {
    type Err = ParseError;

    /// Accepts the canonical text format `c * G[i,j] G[k,l] ... - c * ...`;
    /// the coefficient part is optional when it is 1.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        if s == "0" {
            return Ok(NcPoly::zero());
        }
        let mut out = NcPoly::zero();
        // Terms are separated by " + " / " - "; only the first term may carry
        // its own sign.
        let mut rest = s;
        let mut sign = Scalar::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(a), Some(b)) if a < b => (&rest[..a], Some((&rest[a + 3..], false))),
                (Some(_), Some(b)) => (&rest[..b], Some((&rest[b + 3..], true))),
                (Some(a), None) => (&rest[..a], Some((&rest[a + 3..], false))),
                (None, Some(b)) => (&rest[..b], Some((&rest[b + 3..], true))),
                (None, None) => (rest, None),
            };
            let term = term.trim();
            if term.is_empty() {
                return Err(ParseError::BadTerm(rest.to_string()));
            }
            let (coeff, word) = match term.split_once('*') {
                Some((c, w)) => (parse_scalar(c.trim())?, parse_word(w)?),
                None => {
                    if term.starts_with('G') {
                        (Scalar::one(), parse_word(term)?)
                    } else {
                        (parse_scalar(term)?, Word::empty())
                    }
                }
            };
            out.add_term(word, &sign * coeff);
            match next {
                None => break,
                Some((r, neg)) => {
                    rest = r;
                    sign = if neg { -Scalar::one() } else { Scalar::one() };
                }
            }
        }
        Ok(out)
    }
}
