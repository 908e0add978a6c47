//! Syllable decomposition of reduced words and the invariant `Λ(w)`.
//!
//! A reduced word splits uniquely into syllables:
//!
//! * a single term `a_j^n` with `|n| >= 2` ([`SyllableKind::BigPower`]),
//! * a maximal run of at least two consecutive terms that all have exponent
//!   `+1`, or all have exponent `-1` ([`SyllableKind::AlternatingRun`]),
//! * any remaining `±1` term ([`SyllableKind::Singleton`]).
//!
//! The degree of a syllable is the sum of the absolute exponents of its
//! terms, and `Λ(w) = Σ log(1 + deg)` over all syllables (natural log).
//! `Λ` is comparable, up to absolute multiplicative constants, to the
//! extremal length of `w` with totally real or perpendicular bisector
//! boundary values, away from a small set of exceptional words where the
//! extremal length vanishes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{FreeWord, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SyllableKind {
    BigPower,
    AlternatingRun,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Syllable {
    pub kind: SyllableKind,
    pub terms: Vec<Term>,
    pub degree: u64,
}

impl Syllable {
    fn new(kind: SyllableKind, terms: &[Term]) -> Syllable {
        let degree = terms.iter().map(|t| t.exponent().unsigned_abs()).sum();
        Syllable {
            kind,
            terms: terms.to_vec(),
            degree,
        }
    }

    /// `log(1 + degree)`.
    pub fn weight(&self) -> f64 {
        (self.degree as f64).ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyllableDecomposition {
    pub source: FreeWord,
    pub syllables: Vec<Syllable>,
}

impl SyllableDecomposition {
    pub fn lambda(&self) -> f64 {
        self.syllables.iter().map(Syllable::weight).sum()
    }

    pub fn kinds(&self) -> Vec<SyllableKind> {
        self.syllables.iter().map(|s| s.kind).collect()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.syllables.iter().map(|s| s.degree).collect()
    }
}

pub fn decompose(word: &FreeWord) -> SyllableDecomposition {
    let terms = word.terms();
    let mut syllables = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let e = terms[i].exponent();
        if e.abs() >= 2 {
            syllables.push(Syllable::new(SyllableKind::BigPower, &terms[i..=i]));
            i += 1;
            continue;
        }
        let run = terms[i..].iter().take_while(|t| t.exponent() == e).count();
        let kind = if run >= 2 {
            SyllableKind::AlternatingRun
        } else {
            SyllableKind::Singleton
        };
        syllables.push(Syllable::new(kind, &terms[i..i + run]));
        i += run;
    }
    SyllableDecomposition {
        source: word.clone(),
        syllables,
    }
}

/// `Λ(w)`; zero for the identity.
pub fn lambda_invariant(word: &FreeWord) -> f64 {
    decompose(word).lambda()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCondition {
    /// Curve endpoints on the interval `(-1, 1)`.
    #[serde(rename = "tr")]
    TotallyReal,
    /// Curve endpoints on the imaginary axis.
    #[serde(rename = "pb")]
    PerpendicularBisector,
}

impl BoundaryCondition {
    pub fn short_name(self) -> &'static str {
        match self {
            BoundaryCondition::TotallyReal => "tr",
            BoundaryCondition::PerpendicularBisector => "pb",
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tr" => Ok(BoundaryCondition::TotallyReal),
            "pb" => Ok(BoundaryCondition::PerpendicularBisector),
            other => Err(format!("unknown boundary condition `{other}`, expected tr or pb")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Generic,
    Exceptional,
}

/// Words whose extremal length vanishes for the given boundary condition.
///
/// Totally real: powers of a single generator (the identity included).
/// Perpendicular bisector: words whose terms all have exponent `+1`, or all
/// have exponent `-1` (the identity included).
pub fn classify_exceptional(word: &FreeWord, bc: BoundaryCondition) -> Classification {
    let exceptional = match bc {
        BoundaryCondition::TotallyReal => word.len() <= 1,
        BoundaryCondition::PerpendicularBisector => {
            let terms = word.terms();
            terms.iter().all(|t| t.exponent() == 1) || terms.iter().all(|t| t.exponent() == -1)
        }
    };
    if exceptional {
        Classification::Exceptional
    } else {
        Classification::Generic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("bound constants must satisfy 0 < c_minus <= c_plus, got c_minus = {c_minus}, c_plus = {c_plus}")]
pub struct InvalidConstants {
    pub c_minus: f64,
    pub c_plus: f64,
}

/// Multiplicative constants bracketing the extremal length by `Λ`.
///
/// Only their existence is known; the defaults `(0.1, 10)` are
/// placeholders meant to be overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    c_minus: f64,
    c_plus: f64,
}

impl BoundConstants {
    pub fn new(c_minus: f64, c_plus: f64) -> Result<BoundConstants, InvalidConstants> {
        if c_minus.is_finite() && c_plus.is_finite() && 0.0 < c_minus && c_minus <= c_plus {
            Ok(BoundConstants { c_minus, c_plus })
        } else {
            Err(InvalidConstants { c_minus, c_plus })
        }
    }

    pub fn c_minus(&self) -> f64 {
        self.c_minus
    }

    pub fn c_plus(&self) -> f64 {
        self.c_plus
    }
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c_minus: 0.1,
            c_plus: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaBounds {
    /// `Λ(w)`.
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub exceptional: bool,
    /// The extremal length itself where it is known exactly: `Some(0.0)` for
    /// exceptional words, `None` otherwise.
    pub extremal_length: Option<f64>,
}

pub fn lambda_bounds(word: &FreeWord, bc: BoundaryCondition, k: &BoundConstants) -> LambdaBounds {
    let lambda = lambda_invariant(word);
    match classify_exceptional(word, bc) {
        Classification::Exceptional => LambdaBounds {
            lambda,
            lower: 0.0,
            upper: 0.0,
            exceptional: true,
            extremal_length: Some(0.0),
        },
        Classification::Generic => LambdaBounds {
            lambda,
            lower: k.c_minus * lambda,
            upper: k.c_plus * lambda,
            exceptional: false,
            extremal_length: None,
        },
    }
}

/// Full per-word report: decomposition plus bounds for one boundary
/// condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaReport {
    pub word: FreeWord,
    pub boundary: BoundaryCondition,
    pub syllables: Vec<Syllable>,
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub exceptional: bool,
    pub extremal_length: Option<f64>,
}

pub fn lambda_report(word: &FreeWord, bc: BoundaryCondition, k: &BoundConstants) -> LambdaReport {
    let bounds = lambda_bounds(word, bc, k);
    LambdaReport {
        word: word.clone(),
        boundary: bc,
        syllables: decompose(word).syllables,
        lambda: bounds.lambda,
        lower: bounds.lower,
        upper: bounds.upper,
        exceptional: bounds.exceptional,
        extremal_length: bounds.extremal_length,
    }
}
