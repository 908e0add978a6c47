//! The logarithmic covering `C \ iZ -> C \ {-1, 1}` and slalom curves.
//!
//! The covering map is `f1 ∘ f2` with `f2(z) = (e^{πz} - 1)/(e^{πz} + 1)`
//! and `f1(w) = (w + 1/w)/2`. It is invariant under `z -> z + i`, maps the
//! imaginary axis minus `iZ` onto the imaginary axis and each open
//! half-plane onto the open half-plane on the same side. The fibre over the
//! base point `0` is `i(Z + 1/2)`.
//!
//! Lifting a loop based at `0` from `-i/2` produces a curve in `C \ iZ`
//! whose pieces between crossings of the imaginary axis are (homotopic to)
//! elementary slalom curves. Reading the vertical displacement of each
//! piece recovers the word: a left piece moving `n` components up is
//! `a1^n`, a right piece moving `n` components down is `a2^n`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::word::{FreeWord, Generator, Term, WordError};

/// Points closer than this to a puncture (or to `iZ` in the cover) are
/// rejected.
pub const PUNCTURE_TOLERANCE: f64 = 1e-9;
/// Tolerance for a lift start point to lie in the fibre.
pub const FIBRE_TOLERANCE: f64 = 1e-8;
/// Crossings of the imaginary axis must stay this far from `iZ`.
pub const CROSSING_TOLERANCE: f64 = 1e-6;
/// Samples with `|Re z|` below this lie on the imaginary axis.
pub const AXIS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoveringError {
    #[error("point {0} is within tolerance of iZ")]
    NearLattice(Complex64),
    #[error("point {0} is within tolerance of a puncture ±1")]
    NearPuncture(Complex64),
    #[error("path needs at least one point")]
    EmptyPath,
    #[error("consecutive points {0} and {1} coincide")]
    ZeroLengthSegment(usize, usize),
    #[error("path lives in the {0:?} plane, expected {1:?}")]
    WrongPlane(Plane, Plane),
    #[error("start point {start} maps to {image}, not to the path's first point {target}")]
    NotInFibre {
        start: Complex64,
        image: Complex64,
        target: Complex64,
    },
    #[error("lift refinement limit exceeded near {0}")]
    RefinementLimit(Complex64),
    #[error("path endpoint {0} is neither on the imaginary axis nor on a half-integer line")]
    BadEndpoint(Complex64),
    #[error("a crossing of the imaginary axis at {0} is too close to iZ")]
    CrossingNearLattice(Complex64),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("samples per turn must be at least 16, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Plane {
    /// `C \ {-1, 1}`.
    PuncturedPlane,
    /// `C \ iZ`.
    CoverPlane,
}

/// Discretised curve. A single point is a constant path; otherwise
/// consecutive points are distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPath {
    points: Vec<Complex64>,
    plane: Plane,
}

fn distance_to_lattice(z: Complex64) -> f64 {
    (z - Complex64::new(0.0, z.im.round())).norm()
}

fn distance_to_punctures(p: Complex64) -> f64 {
    (p - 1.0).norm().min((p + 1.0).norm())
}

impl PolyPath {
    pub fn new(points: Vec<Complex64>, plane: Plane) -> Result<PolyPath, CoveringError> {
        if points.is_empty() {
            return Err(CoveringError::EmptyPath);
        }
        for &p in &points {
            match plane {
                Plane::PuncturedPlane if distance_to_punctures(p) < PUNCTURE_TOLERANCE => {
                    return Err(CoveringError::NearPuncture(p))
                }
                Plane::CoverPlane if distance_to_lattice(p) < PUNCTURE_TOLERANCE => {
                    return Err(CoveringError::NearLattice(p))
                }
                _ => {}
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(CoveringError::ZeroLengthSegment(i, i + 1));
        }
        Ok(PolyPath { points, plane })
    }

    pub fn constant(point: Complex64, plane: Plane) -> Result<PolyPath, CoveringError> {
        PolyPath::new(vec![point], plane)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn start(&self) -> Complex64 {
        self.points[0]
    }

    pub fn end(&self) -> Complex64 {
        self.points[self.points.len() - 1]
    }

    /// This path followed by `other`; `other` must start where `self` ends.
    pub fn join(&self, other: &PolyPath) -> Result<PolyPath, CoveringError> {
        if other.plane != self.plane {
            return Err(CoveringError::WrongPlane(other.plane, self.plane));
        }
        let mut points = self.points.clone();
        let skip = usize::from(other.start() == self.end());
        points.extend_from_slice(&other.points[skip..]);
        PolyPath::new(points, self.plane)
    }

    pub fn translated(&self, shift: Complex64) -> Result<PolyPath, CoveringError> {
        PolyPath::new(self.points.iter().map(|p| p + shift).collect(), self.plane)
    }

    /// Winding number about `center`, rounded to the nearest integer.
    pub fn winding_number(&self, center: Complex64) -> i64 {
        let total: f64 = self
            .points
            .windows(2)
            .map(|w| ((w[1] - center) / (w[0] - center)).arg())
            .sum();
        (total / std::f64::consts::TAU).round() as i64
    }
}

fn check_cover_point(z: Complex64) -> Result<(), CoveringError> {
    if distance_to_lattice(z) < PUNCTURE_TOLERANCE || !z.is_finite() {
        Err(CoveringError::NearLattice(z))
    } else {
        Ok(())
    }
}

fn half_tanh(z: Complex64) -> Complex64 {
    (z * (std::f64::consts::PI / 2.0)).tanh()
}

/// `f1(f2(z))`.
pub fn cover_map(z: Complex64) -> Result<Complex64, CoveringError> {
    check_cover_point(z)?;
    let w = half_tanh(z);
    Ok(0.5 * (w + w.inv()))
}

/// Complex derivative of [`cover_map`]: `-(π/4) (1 - w²)² / w²` with
/// `w = f2(z)`. Never zero on `C \ iZ`.
pub fn cover_derivative(z: Complex64) -> Result<Complex64, CoveringError> {
    check_cover_point(z)?;
    let w = half_tanh(z);
    let one_minus = 1.0 - w * w;
    Ok(-(std::f64::consts::PI / 4.0) * one_minus * one_minus / (w * w))
}

/// The point of `i(-1, 0)` lying over a point `p` of the imaginary axis.
pub fn base_lift(p: Complex64) -> Result<Complex64, CoveringError> {
    if p.re.abs() > AXIS_TOLERANCE {
        return Err(CoveringError::BadEndpoint(p));
    }
    // cover_map(iy) = -i cot(πy), so we need cot(πy) = -Im p with y in (-1, 0).
    let phi = 1f64.atan2(-p.im);
    Ok(Complex64::new(0.0, (phi - std::f64::consts::PI) / std::f64::consts::PI))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftOptions {
    /// Largest accepted residual `|cover_map(lift) - point|`.
    pub tolerance: f64,
    /// A base step may be at most this fraction of its distance to `±1`.
    pub safety: f64,
    pub max_depth: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            tolerance: 1e-6,
            safety: 0.25,
            max_depth: 48,
        }
    }
}

struct Lifter<'a> {
    opts: &'a LiftOptions,
}

impl Lifter<'_> {
    fn newton(&self, mut z: Complex64, target: Complex64) -> Option<Complex64> {
        let goal = 1e-13 * (1.0 + target.norm());
        for _ in 0..40 {
            let f = cover_map(z).ok()?;
            let residual = f - target;
            if residual.norm() <= goal {
                return Some(z);
            }
            z -= residual / cover_derivative(z).ok()?;
            if !z.is_finite() {
                return None;
            }
        }
        let residual = (cover_map(z).ok()? - target).norm();
        (residual <= self.opts.tolerance).then_some(z)
    }

    /// Lifts the straight segment `a -> b` starting from `z` over `a`.
    fn segment(&self, z: Complex64, a: Complex64, b: Complex64, depth: usize) -> Result<Complex64, CoveringError> {
        if depth > self.opts.max_depth {
            return Err(CoveringError::RefinementLimit(a));
        }
        let split = |this: &Self| -> Result<Complex64, CoveringError> {
            let mid = 0.5 * (a + b);
            let zm = this.segment(z, a, mid, depth + 1)?;
            this.segment(zm, mid, b, depth + 1)
        };
        if (b - a).norm() > self.opts.safety * distance_to_punctures(a) {
            return split(self);
        }
        let predictor = z + (b - a) / cover_derivative(z)?;
        match self.newton(predictor, b) {
            Some(next)
                if (next - z).norm() <= self.opts.safety * distance_to_lattice(z)
                    && (next - predictor).norm() <= 0.5 * (predictor - z).norm() + 1e-12 =>
            {
                Ok(next)
            }
            _ => split(self),
        }
    }
}

pub fn lift_path(path: &PolyPath, start: Complex64) -> Result<PolyPath, CoveringError> {
    lift_path_with(path, start, &LiftOptions::default())
}

/// Continuous lift of `path` through [`cover_map`] starting at `start`.
///
/// The returned path has one point over each input point. Each segment is
/// followed by a first-order predictor and a Newton corrector, and
/// subdivided whenever the step is large compared with the distance to a
/// puncture or the corrector wanders.
pub fn lift_path_with(path: &PolyPath, start: Complex64, opts: &LiftOptions) -> Result<PolyPath, CoveringError> {
    if path.plane != Plane::PuncturedPlane {
        return Err(CoveringError::WrongPlane(path.plane, Plane::PuncturedPlane));
    }
    let image = cover_map(start)?;
    let target = path.start();
    if (image - target).norm() > FIBRE_TOLERANCE {
        return Err(CoveringError::NotInFibre { start, image, target });
    }
    let lifter = Lifter { opts };
    let mut out = Vec::with_capacity(path.len());
    out.push(start);
    let mut z = start;
    for w in path.points.windows(2) {
        z = lifter.segment(z, w[0], w[1], 0)?;
        out.push(z);
    }
    PolyPath::new(out, Plane::CoverPlane)
}

/// Standard representative of `g^n` based at `0`: `|n|` turns around the
/// circle of radius one about `-1` (for `a1`) or `+1` (for `a2`),
/// counterclockwise for `n > 0`.
pub fn standard_loop(g: Generator, n: i64, samples_per_turn: usize) -> Result<PolyPath, CoveringError> {
    if n == 0 {
        return Err(CoveringError::ZeroExponent);
    }
    if samples_per_turn < 16 {
        return Err(CoveringError::TooFewSamples(samples_per_turn));
    }
    let turns = n.unsigned_abs() as usize;
    let total = turns * samples_per_turn;
    let point = |j: usize| {
        let t = std::f64::consts::TAU * (j % samples_per_turn) as f64 / samples_per_turn as f64;
        if j.is_multiple_of(samples_per_turn) {
            return Complex64::new(0.0, 0.0);
        }
        let e = Complex64::from_polar(1.0, t);
        match g {
            Generator::A1 => e - 1.0,
            Generator::A2 => 1.0 - e,
        }
    };
    let mut points: Vec<Complex64> = (0..=total).map(point).collect();
    if n < 0 {
        points.reverse();
    }
    PolyPath::new(points, Plane::PuncturedPlane)
}

/// Concatenation of standard loops, one per term; the identity word gives
/// the constant path at `0`.
pub fn word_to_curve(word: &FreeWord, samples_per_turn: usize) -> Result<PolyPath, CoveringError> {
    if samples_per_turn < 16 {
        return Err(CoveringError::TooFewSamples(samples_per_turn));
    }
    let mut curve = PolyPath::constant(Complex64::new(0.0, 0.0), Plane::PuncturedPlane)?;
    for term in word.terms() {
        curve = curve.join(&standard_loop(term.generator(), term.exponent(), samples_per_turn)?)?;
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HalfPlane {
    Left,
    Right,
}

impl HalfPlane {
    fn of(z: Complex64) -> Option<HalfPlane> {
        if z.re < -AXIS_TOLERANCE {
            Some(HalfPlane::Left)
        } else if z.re > AXIS_TOLERANCE {
            Some(HalfPlane::Right)
        } else {
            None
        }
    }
}

/// Component index `k` of a point with imaginary part in `(k, k+1)`.
fn component(z: Complex64) -> i64 {
    z.im.floor() as i64
}

fn on_half_line(z: Complex64) -> bool {
    (z.im - z.im.floor() - 0.5).abs() <= AXIS_TOLERANCE
}

/// Piece of a lifted curve lying in one closed half-plane between two
/// points of the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElementaryPiece {
    pub half_plane: HalfPlane,
    pub start_component: i64,
    pub end_component: i64,
    #[serde(skip)]
    pub start: Complex64,
    #[serde(skip)]
    pub end: Complex64,
    /// Adjacent components: the corresponding rectangle degenerates and the
    /// extremal length is zero.
    pub trivial: bool,
    /// An endpoint lies off the axis on a line `Im z = k + 1/2`.
    pub half_slalom: bool,
}

impl ElementaryPiece {
    fn new(half_plane: HalfPlane, start: Complex64, end: Complex64) -> ElementaryPiece {
        let (start_component, end_component) = (component(start), component(end));
        ElementaryPiece {
            half_plane,
            start_component,
            end_component,
            start,
            end,
            trivial: start_component.abs_diff(end_component) == 1,
            half_slalom: [start, end].iter().any(|p| p.re.abs() > AXIS_TOLERANCE),
        }
    }

    pub fn displacement(&self) -> i64 {
        self.end_component - self.start_component
    }

    pub fn generator(&self) -> Generator {
        match self.half_plane {
            HalfPlane::Left => Generator::A1,
            HalfPlane::Right => Generator::A2,
        }
    }

    /// Exponent of the generator this piece represents.
    pub fn exponent(&self) -> i64 {
        match self.half_plane {
            HalfPlane::Left => self.displacement(),
            HalfPlane::Right => -self.displacement(),
        }
    }

    fn merged(&self, next: &ElementaryPiece) -> ElementaryPiece {
        let mut piece = ElementaryPiece::new(self.half_plane, self.start, next.end);
        piece.half_slalom = self.half_slalom || next.half_slalom;
        piece
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlalomDecomposition {
    pub pieces: Vec<ElementaryPiece>,
}

impl SlalomDecomposition {
    pub fn exponents(&self) -> Vec<i64> {
        self.pieces.iter().map(ElementaryPiece::exponent).collect()
    }

    /// The word read off the pieces.
    pub fn to_word(&self) -> Result<FreeWord, WordError> {
        crate::word::reduce(
            self.pieces
                .iter()
                .filter_map(|p| Term::new(p.generator(), p.exponent())),
        )
    }
}

fn check_endpoint(z: Complex64) -> Result<(), CoveringError> {
    if distance_to_lattice(z) < CROSSING_TOLERANCE {
        return Err(CoveringError::CrossingNearLattice(z));
    }
    if z.re.abs() <= AXIS_TOLERANCE || on_half_line(z) {
        Ok(())
    } else {
        Err(CoveringError::BadEndpoint(z))
    }
}

/// Splits a lifted curve at its crossings of the imaginary axis.
///
/// Consecutive samples on opposite sides are joined by a straight segment
/// whose intersection with the axis is the crossing. Touching the axis and
/// returning to the same side does not end a piece. Pieces that return to
/// their starting component are homotopically trivial; they are dropped and
/// their neighbours, now in the same half-plane, merged. The resulting
/// pieces alternate between the half-planes.
pub fn slalom_decompose(lifted: &PolyPath) -> Result<SlalomDecomposition, CoveringError> {
    if lifted.plane != Plane::CoverPlane {
        return Err(CoveringError::WrongPlane(lifted.plane, Plane::CoverPlane));
    }
    let points = lifted.points();
    check_endpoint(lifted.start())?;
    check_endpoint(lifted.end())?;

    let mut raw = Vec::new();
    let mut piece_start = lifted.start();
    let mut side: Option<HalfPlane> = None;
    for w in points.windows(2) {
        let (p, q) = (w[0], w[1]);
        let Some(next) = HalfPlane::of(q) else {
            continue;
        };
        match side {
            None => side = Some(next),
            Some(current) if current == next => {}
            Some(current) => {
                let crossing = if HalfPlane::of(p).is_none() {
                    Complex64::new(0.0, p.im)
                } else {
                    let t = p.re / (p.re - q.re);
                    Complex64::new(0.0, p.im + t * (q.im - p.im))
                };
                if distance_to_lattice(crossing) < CROSSING_TOLERANCE {
                    return Err(CoveringError::CrossingNearLattice(crossing));
                }
                raw.push(ElementaryPiece::new(current, piece_start, crossing));
                piece_start = crossing;
                side = Some(next);
            }
        }
    }
    if let Some(current) = side {
        raw.push(ElementaryPiece::new(current, piece_start, lifted.end()));
    }

    let mut pieces: Vec<ElementaryPiece> = Vec::new();
    for piece in raw {
        if piece.displacement() == 0 && !piece.half_slalom {
            continue;
        }
        match pieces.last() {
            Some(top) if top.half_plane == piece.half_plane => {
                let merged = top.merged(&piece);
                pieces.pop();
                if merged.displacement() != 0 || merged.half_slalom {
                    pieces.push(merged);
                }
            }
            _ => pieces.push(piece),
        }
    }
    Ok(SlalomDecomposition { pieces })
}

/// Samples per turn used when a curve is synthesised from a word.
pub const DEFAULT_SAMPLES_PER_TURN: usize = 128;

/// Lift of a curve with endpoints on the imaginary axis, started in the
/// component `i(-1, 0)`; for loops based at `0` this is the point `-i/2`.
pub fn lift_from_axis(path: &PolyPath, opts: &LiftOptions) -> Result<PolyPath, CoveringError> {
    lift_path_with(path, base_lift(path.start())?, opts)
}

/// The word represented by a curve whose endpoints lie on the imaginary
/// axis.
pub fn curve_to_word(path: &PolyPath) -> Result<FreeWord, CoveringError> {
    curve_to_word_with(path, &LiftOptions::default())
}

pub fn curve_to_word_with(path: &PolyPath, opts: &LiftOptions) -> Result<FreeWord, CoveringError> {
    let lifted = lift_from_axis(path, opts)?;
    Ok(slalom_decompose(&lifted)?.to_word()?)
}

/// Lift of the standard curve of `word` from `-i/2`.
pub fn lift_word(word: &FreeWord, samples_per_turn: usize) -> Result<PolyPath, CoveringError> {
    lift_from_axis(&word_to_curve(word, samples_per_turn)?, &LiftOptions::default())
}
