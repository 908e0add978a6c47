//! Reduced words in the free group on two generators `a1`, `a2`.
//!
//! A [`FreeWord`] is always stored in reduced form: a product of nonzero
//! powers `a_j^n` in which consecutive terms use different generators. The
//! empty word is the identity.
//!
//! The text grammar is whitespace separated tokens `a1` or `a2`, each
//! optionally followed by `^` and a signed integer:
//!
//! ```
//! use slalom::word::{FreeWord, Generator};
//!
//! let w: FreeWord = "a1^2 a2^-3 a2 a1^0".parse().unwrap();
//! assert_eq!(w.to_string(), "a1^2 a2^-2");
//! assert_eq!(w.terms()[1].generator(), Generator::A2);
//! ```

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// Loop around `-1`, counterclockwise, in the left half-plane.
    A1,
    /// Loop around `+1`, counterclockwise, in the right half-plane.
    A2,
}

impl Generator {
    pub fn other(self) -> Generator {
        match self {
            Generator::A1 => Generator::A2,
            Generator::A2 => Generator::A1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Generator::A1 => "a1",
            Generator::A2 => "a2",
        }
    }
}

/// A nonzero power of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    generator: Generator,
    exponent: i64,
}

impl Term {
    /// Returns `None` for a zero exponent.
    pub fn new(generator: Generator, exponent: i64) -> Option<Term> {
        (exponent != 0).then_some(Term { generator, exponent })
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn inverse(&self) -> Option<Term> {
        self.exponent.checked_neg().map(|exponent| Term {
            generator: self.generator,
            exponent,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator.label())
        } else {
            write!(f, "{}^{}", self.generator.label(), self.exponent)
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("exponent overflow while merging powers of {0}")]
    ExponentOverflow(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column of the offending token.
    pub column: usize,
    pub message: String,
}

/// Reduced word in the free group on `a1`, `a2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    terms: Vec<Term>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord { terms: Vec::new() }
    }

    pub fn generator(generator: Generator) -> FreeWord {
        FreeWord::power(generator, 1)
    }

    /// `generator^exponent`; the identity when `exponent` is zero.
    pub fn power(generator: Generator, exponent: i64) -> FreeWord {
        FreeWord {
            terms: Term::new(generator, exponent).into_iter().collect(),
        }
    }

    /// Builds the reduced word of a sequence of `(generator, exponent)`
    /// pairs. Zero exponents are dropped.
    pub fn from_powers<I>(powers: I) -> Result<FreeWord, WordError>
    where
        I: IntoIterator<Item = (Generator, i64)>,
    {
        reduce(powers.into_iter().filter_map(|(g, n)| Term::new(g, n)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_identity(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms (syllable length) of the reduced word.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Word length in letters, the sum of absolute exponents.
    pub fn letter_length(&self) -> u128 {
        self.terms.iter().map(|t| t.exponent.unsigned_abs() as u128).sum()
    }

    pub fn concat(&self, other: &FreeWord) -> Result<FreeWord, WordError> {
        let mut out = self.terms.clone();
        for term in &other.terms {
            push_reduced(&mut out, *term)?;
        }
        Ok(FreeWord { terms: out })
    }

    pub fn invert(&self) -> Result<FreeWord, WordError> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|t| t.inverse().ok_or(WordError::ExponentOverflow(t.generator.label())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeWord { terms })
    }

    /// Exponent sum of each generator, `(sum for a1, sum for a2)`.
    pub fn exponent_sums(&self) -> (i128, i128) {
        self.terms.iter().fold((0, 0), |(s1, s2), t| match t.generator {
            Generator::A1 => (s1 + t.exponent as i128, s2),
            Generator::A2 => (s1, s2 + t.exponent as i128),
        })
    }

    /// Canonical text form, parsed back by [`parse_word`].
    pub fn format(&self) -> String {
        self.to_string()
    }

    /// Uniformly random reduced word with `len` terms and exponents in
    /// `[-max_abs_exponent, max_abs_exponent] \ {0}`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize, max_abs_exponent: i64) -> FreeWord {
        assert!(max_abs_exponent >= 1);
        let mut generator = if rng.gen_bool(0.5) {
            Generator::A1
        } else {
            Generator::A2
        };
        let mut terms = Vec::with_capacity(len);
        for _ in 0..len {
            let magnitude = rng.gen_range(1..=max_abs_exponent);
            let exponent = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
            terms.push(Term { generator, exponent });
            generator = generator.other();
        }
        FreeWord { terms }
    }
}

fn push_reduced(out: &mut Vec<Term>, term: Term) -> Result<(), WordError> {
    match out.last_mut() {
        Some(last) if last.generator == term.generator => {
            let merged = last
                .exponent
                .checked_add(term.exponent)
                .ok_or(WordError::ExponentOverflow(term.generator.label()))?;
            if merged == 0 {
                out.pop();
            } else {
                last.exponent = merged;
            }
        }
        _ => out.push(term),
    }
    Ok(())
}

/// Free reduction: merges adjacent powers of the same generator and drops
/// cancelled terms until no two neighbours share a generator.
///
/// A single stack pass reaches the fixed point, since a cancellation only
/// ever exposes the previous surviving term to the next incoming one.
pub fn reduce<I>(raw: I) -> Result<FreeWord, WordError>
where
    I: IntoIterator<Item = Term>,
{
    let mut out = Vec::new();
    for term in raw {
        push_reduced(&mut out, term)?;
    }
    Ok(FreeWord { terms: out })
}

pub fn parse_word(text: &str) -> Result<FreeWord, ParseError> {
    let mut terms = Vec::new();
    for (column, token) in tokens(text) {
        let (head, exponent) = split_power(token, column)?;
        let generator = match head {
            "a1" => Generator::A1,
            "a2" => Generator::A2,
            _ => {
                return Err(ParseError {
                    column,
                    message: format!("unknown token `{token}`, expected a1 or a2"),
                })
            }
        };
        if let Some(term) = Term::new(generator, exponent) {
            terms.push(term);
        }
    }
    reduce(terms).map_err(|e| ParseError {
        column: text.chars().count().max(1),
        message: e.to_string(),
    })
}

/// Whitespace separated tokens with their 1-based starting column.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in text.char_indices() {
        column += 1;
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                out.push((c, &text[b..byte]));
                start = None;
            }
            (false, None) => start = Some((byte, column)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push((c, &text[b..]));
    }
    out.into_iter()
}

/// Splits `head^exp` into its head and exponent (default 1).
pub(crate) fn split_power(token: &str, column: usize) -> Result<(&str, i64), ParseError> {
    match token.split_once('^') {
        None => Ok((token, 1)),
        Some((head, exp)) => {
            let digits = exp.strip_prefix(['+', '-']).unwrap_or(exp);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseError {
                    column: column + head.chars().count() + 1,
                    message: format!("malformed exponent `{exp}`"),
                });
            }
            let value = exp.parse::<i64>().map_err(|_| ParseError {
                column: column + head.chars().count() + 1,
                message: format!("exponent `{exp}` out of 64-bit range"),
            })?;
            Ok((head, value))
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}
