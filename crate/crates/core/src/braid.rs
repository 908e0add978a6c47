//! Pure 3-braids and the cross-ratio homomorphism onto the free group.
//!
//! A loop `γ = (γ1, γ2, γ3)` in the configuration space of three distinct
//! points, based at `(-1, 0, 1)`, gives the loop
//!
//! ```text
//! c(γ)(t) = 2 (γ2(t) - γ1(t)) / (γ3(t) - γ1(t)) - 1
//! ```
//!
//! in `C \ {-1, 1}` based at `0`. On homotopy classes this is a surjective
//! homomorphism from the pure braid group `P3` onto the free group on
//! `a1`, `a2`, whose kernel is generated by the full twist
//! `Δ² = (σ1 σ2 σ1)²`. [`cstar`] realises it numerically: the braid word
//! is turned into explicit strand motions, pushed through the cross-ratio
//! and read back with [`crate::covering::curve_to_word`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::covering::{self, CoveringError, LiftOptions, Plane, PolyPath};
use crate::syllables::{lambda_bounds, BoundConstants, BoundaryCondition, LambdaBounds};
use crate::word::{split_power, tokens, FreeWord, ParseError};

/// Strand start positions.
pub const BASE_POINT: [f64; 3] = [-1.0, 0.0, 1.0];
/// Radius of the moving pair at the middle of a half-turn, as a fraction of
/// the slot distance.
const MID_TURN_RADIUS: f64 = 0.35;
const DENOMINATOR_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES_PER_CROSSING: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("braid {0} is not pure: strands end permuted as {1}")]
    NotPure(BraidWord, Permutation),
    #[error("samples per crossing must be at least 16, got {0}")]
    TooFewSamples(usize),
    #[error("strands 1 and 3 collide at sample {0}")]
    Collision(usize),
    #[error("strand paths have different lengths")]
    RaggedStrands,
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sigma {
    Sigma1,
    Sigma2,
}

impl Sigma {
    /// Index of the left slot of the exchanged pair.
    fn slot(self) -> usize {
        match self {
            Sigma::Sigma1 => 0,
            Sigma::Sigma2 => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Sigma::Sigma1 => "s1",
            Sigma::Sigma2 => "s2",
        }
    }
}

/// `σ1^{±1}` or `σ2^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub sigma: Sigma,
    /// `+1` for a counterclockwise exchange, `-1` for clockwise.
    pub sign: i8,
}

impl Letter {
    pub fn new(sigma: Sigma, positive: bool) -> Letter {
        Letter {
            sigma,
            sign: if positive { 1 } else { -1 },
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            sigma: self.sigma,
            sign: -self.sign,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> BraidWord {
        BraidWord { letters }
    }

    pub fn identity() -> BraidWord {
        BraidWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `Δ = σ1 σ2 σ1`.
    pub fn half_twist() -> BraidWord {
        let (s1, s2) = (Letter::new(Sigma::Sigma1, true), Letter::new(Sigma::Sigma2, true));
        BraidWord::new(vec![s1, s2, s1])
    }

    /// `Δ² = (σ1 σ2 σ1)²`, generator of the centre of the braid group.
    pub fn full_twist() -> BraidWord {
        BraidWord::half_twist().pow(2)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^n`; negative powers repeat the inverse.
    pub fn pow(&self, n: i64) -> BraidWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { letters }
    }

    /// Cancels adjacent inverse letters.
    pub fn free_reduce(&self) -> BraidWord {
        let mut letters: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if letters.last() == Some(&l.inverse()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        BraidWord { letters }
    }

    pub fn is_pure(&self) -> bool {
        permutation(self).is_identity()
    }

    /// Uniformly random word of exactly `len` letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> BraidWord {
        let letters = (0..len)
            .map(|_| {
                let sigma = if rng.gen_bool(0.5) {
                    Sigma::Sigma1
                } else {
                    Sigma::Sigma2
                };
                Letter::new(sigma, rng.gen_bool(0.5))
            })
            .collect();
        BraidWord { letters }
    }

    /// Random pure braid with at most `max_len` letters, by rejection.
    pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> BraidWord {
        loop {
            let len = rng.gen_range(0..=max_len);
            let b = BraidWord::random(rng, len);
            if b.is_pure() {
                return b;
            }
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * l.sign as i64;
            if exp == 1 {
                write!(f, "{}", l.sigma.label())?;
            } else {
                write!(f, "{}^{}", l.sigma.label(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Largest exponent accepted in braid text; exponents expand to letters.
const MAX_BRAID_EXPONENT: i64 = 1 << 20;

pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let mut letters = Vec::new();
    for (column, token) in tokens(text) {
        let (head, exp) = split_power(token, column)?;
        let sigma = match head {
            "s1" => Sigma::Sigma1,
            "s2" => Sigma::Sigma2,
            _ => {
                return Err(ParseError {
                    column,
                    message: format!("unknown token `{token}`, expected s1 or s2"),
                })
            }
        };
        if exp.abs() > MAX_BRAID_EXPONENT {
            return Err(ParseError {
                column,
                message: format!("exponent {exp} exceeds {MAX_BRAID_EXPONENT}"),
            });
        }
        let letter = Letter::new(sigma, exp > 0);
        letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(BraidWord { letters })
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_braid(&text).map_err(serde::de::Error::custom)
    }
}

/// Permutation of the three strands: `slots[i]` is the strand (0-based)
/// that ends in slot `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    pub slots: [usize; 3],
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation { slots: [0, 1, 2] };

    pub fn is_identity(&self) -> bool {
        *self == Permutation::IDENTITY
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.slots;
        write!(f, "[{} {} {}]", a + 1, b + 1, c + 1)
    }
}

/// Image of the braid in the symmetric group; `σi` swaps slots `i`, `i+1`.
pub fn permutation(b: &BraidWord) -> Permutation {
    let mut p = Permutation::IDENTITY;
    for l in &b.letters {
        let i = l.sigma.slot();
        p.slots.swap(i, i + 1);
    }
    p
}

/// Three strand positions sampled on a common parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StrandPaths {
    strands: [Vec<Complex64>; 3],
}

impl StrandPaths {
    pub fn new(strands: [Vec<Complex64>; 3]) -> Result<StrandPaths, BraidError> {
        let n = strands[0].len();
        if n == 0 || strands.iter().any(|s| s.len() != n) {
            return Err(BraidError::RaggedStrands);
        }
        Ok(StrandPaths { strands })
    }

    pub fn strand(&self, i: usize) -> &[Complex64] {
        &self.strands[i]
    }

    pub fn samples(&self) -> usize {
        self.strands[0].len()
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        (0..self.samples())
            .flat_map(|t| {
                let [a, b, c] = [self.strands[0][t], self.strands[1][t], self.strands[2][t]];
                [(a - b).norm(), (b - c).norm(), (a - c).norm()]
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies `z -> scale z + shift` to every strand.
    pub fn affine(&self, scale: Complex64, shift: Complex64) -> StrandPaths {
        StrandPaths {
            strands: self
                .strands
                .clone()
                .map(|s| s.into_iter().map(|z| scale * z + shift).collect()),
        }
    }
}

/// Geometric pure braid realising `b`.
///
/// Each letter exchanges the strands in the two affected slots by a
/// half-turn about their midpoint, counterclockwise for positive letters.
/// The pair's radius dips from half the slot distance to
/// `0.35 × slot distance` mid-turn; the third strand stays put.
pub fn braid_to_strands(b: &BraidWord, samples_per_crossing: usize) -> Result<StrandPaths, BraidError> {
    if samples_per_crossing < 16 {
        return Err(BraidError::TooFewSamples(samples_per_crossing));
    }
    let perm = permutation(b);
    if !perm.is_identity() {
        return Err(BraidError::NotPure(b.clone(), perm));
    }
    let slot_pos = BASE_POINT.map(|x| Complex64::new(x, 0.0));
    let mut occupant = [0usize, 1, 2];
    let mut pos = slot_pos;
    let mut strands: [Vec<Complex64>; 3] = pos.map(|p| vec![p]);
    for letter in &b.letters {
        let i = letter.sigma.slot();
        let (left, right) = (occupant[i], occupant[i + 1]);
        let center = 0.5 * (slot_pos[i] + slot_pos[i + 1]);
        let gap = (slot_pos[i + 1] - slot_pos[i]).norm();
        for j in 1..=samples_per_crossing {
            let s = j as f64 / samples_per_crossing as f64;
            let theta = letter.sign as f64 * std::f64::consts::PI * s;
            let radius = gap * (0.5 - (0.5 - MID_TURN_RADIUS) * (std::f64::consts::PI * s).sin());
            let arm = Complex64::from_polar(radius, theta);
            pos[left] = center - arm;
            pos[right] = center + arm;
            if j == samples_per_crossing {
                pos[left] = slot_pos[i + 1];
                pos[right] = slot_pos[i];
            }
            for (strand, p) in strands.iter_mut().zip(pos) {
                strand.push(p);
            }
        }
        occupant.swap(i, i + 1);
    }
    StrandPaths::new(strands)
}

/// Pointwise `2 (γ2 - γ1)/(γ3 - γ1) - 1`, with repeated samples dropped.
pub fn cross_ratio_curve(s: &StrandPaths) -> Result<PolyPath, BraidError> {
    let mut points: Vec<Complex64> = Vec::with_capacity(s.samples());
    for t in 0..s.samples() {
        let [g1, g2, g3] = [s.strands[0][t], s.strands[1][t], s.strands[2][t]];
        let denominator = g3 - g1;
        if denominator.norm() < DENOMINATOR_TOLERANCE {
            return Err(BraidError::Collision(t));
        }
        let c = 2.0 * (g2 - g1) / denominator - 1.0;
        if points.last() != Some(&c) {
            points.push(c);
        }
    }
    Ok(PolyPath::new(points, Plane::PuncturedPlane)?)
}

/// Options for running the braid pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraidOptions {
    pub samples_per_crossing: usize,
    pub lift: LiftOptions,
}

impl Default for BraidOptions {
    fn default() -> Self {
        BraidOptions {
            samples_per_crossing: DEFAULT_SAMPLES_PER_CROSSING,
            lift: LiftOptions::default(),
        }
    }
}

pub fn cstar(b: &BraidWord) -> Result<FreeWord, BraidError> {
    cstar_with(b, &BraidOptions::default())
}

/// Image of a pure braid in the free group on `a1`, `a2`.
pub fn cstar_with(b: &BraidWord, opts: &BraidOptions) -> Result<FreeWord, BraidError> {
    let curve = cross_ratio_curve(&braid_to_strands(b, opts.samples_per_crossing)?)?;
    Ok(covering::curve_to_word_with(&curve, &opts.lift)?)
}

/// Bounds on the extremal length of a pure braid, via its image word.
pub fn braid_invariant(b: &BraidWord, bc: BoundaryCondition, k: &BoundConstants) -> Result<LambdaBounds, BraidError> {
    Ok(lambda_bounds(&cstar(b)?, bc, k))
}
