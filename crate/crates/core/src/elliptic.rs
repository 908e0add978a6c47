//! Extremal length of the rectangle `R^M` through complete elliptic
//! integrals, with an independent quadrature route.
//!
//! `R^M` is the rectangle that the map
//!
//! ```text
//! F_M(z) = ∫_0^z dζ / sqrt((ζ² + M²)(ζ² + (M+1)²))
//! ```
//!
//! produces from the closed left half-plane. The boundary points `±iM`,
//! `±i(M+1)` go to its vertices; the segments `[iM, i(M+1)]` and
//! `[-i(M+1), -iM]` become the horizontal sides (length `b`) and
//! `[-iM, iM]` one vertical side (length `a`). The extremal length is
//! `λ(R^M) = a / b` and the conformal module its reciprocal.
//!
//! Along the imaginary axis both sides reduce to real integrals:
//!
//! ```text
//! a = 2 ∫_0^M     dt / sqrt((M² - t²)((M+1)² - t²))  = 2 K(k)  / (M+1)
//! b =   ∫_M^{M+1} dt / sqrt((t² - M²)((M+1)² - t²))  =   K(k') / (M+1)
//! ```
//!
//! with `k = M/(M+1)` and `k' = sqrt(1 - k²)`. [`Method::ClosedForm`]
//! obtains `k` from the cross-ratio of the four marked boundary points and
//! evaluates `K` by the arithmetic–geometric mean; [`Method::Quadrature`]
//! integrates the two side lengths directly after substitutions that remove
//! the inverse square root endpoint singularities.

use std::f64::consts::FRAC_PI_2;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quadrature::{self, QuadratureError};

const AGM_TOLERANCE: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;
const QUAD_REL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EllipticError {
    #[error("arithmetic-geometric mean needs positive finite arguments, got ({0}, {1})")]
    NonPositiveMean(f64, f64),
    #[error("modulus k = {0} outside [0, 1)")]
    ModulusOutOfRange(f64),
    #[error("rectangle parameter M = {0} must be nonnegative and finite")]
    NegativeParameter(f64),
    #[error("log-bound sweep needs M >= 1/2, got {0}")]
    BelowHalf(f64),
    #[error("log-bound sweep needs at least one sample")]
    EmptySweep,
    #[error("elementary slalom needs |k - l| >= 2, got k = {0}, l = {1}")]
    TrivialSlalom(i64, i64),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub fn agm(a: f64, b: f64) -> Result<f64, EllipticError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(EllipticError::NonPositiveMean(a, b));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOLERANCE * a.max(b) {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    Ok(0.5 * (a + b))
}

/// Complete elliptic integral of the first kind in modulus form,
/// `K(k) = ∫_0^{π/2} dθ / sqrt(1 - k² sin²θ)`.
pub fn complete_k(k: f64) -> Result<f64, EllipticError> {
    if !(0.0..1.0).contains(&k) {
        return Err(EllipticError::ModulusOutOfRange(k));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    complete_k_from_complement(kp)
}

/// `K` as a function of the complementary modulus `k' = sqrt(1 - k²)`,
/// accurate when `k` is close to one.
fn complete_k_from_complement(kp: f64) -> Result<f64, EllipticError> {
    if !(kp > 0.0 && kp <= 1.0) {
        return Err(EllipticError::ModulusOutOfRange(((1.0 - kp) * (1.0 + kp)).sqrt()));
    }
    Ok(FRAC_PI_2 / agm(1.0, kp)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closed" | "closed_form" => Ok(Method::ClosedForm),
            "quad" | "quadrature" => Ok(Method::Quadrature),
            other => Err(format!("unknown method `{other}`, expected closed or quad")),
        }
    }
}

/// Side lengths of `R^M` in the normalisation fixed by `F_M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangleSides {
    /// Image of one of the segments `[±iM, ±i(M+1)]`.
    pub horizontal: f64,
    /// Image of `[-iM, iM]`.
    pub vertical: f64,
}

impl RectangleSides {
    pub fn extremal_length(&self) -> f64 {
        self.vertical / self.horizontal
    }

    /// The same rectangle with the roles of the sides exchanged.
    pub fn transposed(&self) -> RectangleSides {
        RectangleSides {
            horizontal: self.vertical,
            vertical: self.horizontal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadModulus {
    #[serde(rename = "M")]
    pub m_param: f64,
    pub extremal_length: f64,
    /// `+∞` at `M = 0`; serialised as `null`.
    #[serde(serialize_with = "finite_or_null")]
    pub conformal_module: f64,
    pub method: Method,
}

fn finite_or_null<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

/// Cross-ratio `(z2 - z1)(z4 - z3) / ((z3 - z1)(z4 - z2))` of four collinear
/// points.
fn cross_ratio(z1: f64, z2: f64, z3: f64, z4: f64) -> f64 {
    ((z2 - z1) * (z4 - z3)) / ((z3 - z1) * (z4 - z2))
}

/// Moduli `(k, k')` of `R^M`.
///
/// The marked points `-(M+1), -M, M, M+1` (the imaginary axis turned onto
/// the real line) and the normal form `-1, -k, k, 1` share the cross-ratio
/// `((1-k)/(1+k))²`, which for the marked points equals `1/(2M+1)²`.
fn moduli(m: f64) -> (f64, f64) {
    let rho = cross_ratio(-(m + 1.0), -m, m, m + 1.0);
    let s = rho.sqrt();
    let k = (1.0 - s) / (1.0 + s);
    let kp = 2.0 * s.sqrt() / (1.0 + s);
    (k, kp)
}

fn closed_form_sides(m: f64) -> Result<RectangleSides, EllipticError> {
    let (k, kp) = moduli(m);
    let k_big = complete_k_from_complement(kp)?;
    let k_small = complete_k_from_complement(k)?;
    Ok(RectangleSides {
        horizontal: k_small / (m + 1.0),
        vertical: 2.0 * k_big / (m + 1.0),
    })
}

fn quadrature_sides(m: f64) -> Result<RectangleSides, EllipticError> {
    let abs_tol = 0.0;
    // a/2: t = M - s², s in [0, sqrt(M)]
    let half_vertical = quadrature::integrate(
        |s| {
            let s2 = s * s;
            2.0 / ((2.0 * m - s2) * (1.0 + s2) * (2.0 * m + 1.0 - s2)).sqrt()
        },
        0.0,
        m.sqrt(),
        abs_tol,
        QUAD_REL_TOL,
    )?;
    let root_half = std::f64::consts::FRAC_1_SQRT_2;
    // b on [M, M + 1/2]: t = M + s²
    let lower = quadrature::integrate(
        |s| {
            let s2 = s * s;
            2.0 / ((2.0 * m + s2) * (1.0 - s2) * (2.0 * m + 1.0 + s2)).sqrt()
        },
        0.0,
        root_half,
        abs_tol,
        QUAD_REL_TOL,
    )?;
    // b on [M + 1/2, M + 1]: t = M + 1 - s²
    let upper = quadrature::integrate(
        |s| {
            let s2 = s * s;
            2.0 / ((2.0 * m + 2.0 - s2) * (1.0 - s2) * (2.0 * m + 1.0 - s2)).sqrt()
        },
        0.0,
        root_half,
        abs_tol,
        QUAD_REL_TOL,
    )?;
    Ok(RectangleSides {
        horizontal: lower + upper,
        vertical: 2.0 * half_vertical,
    })
}

/// Side lengths of `R^M` for `M > 0`.
pub fn rect_sides(m_param: f64, method: Method) -> Result<RectangleSides, EllipticError> {
    if !(m_param > 0.0 && m_param.is_finite()) {
        return Err(EllipticError::NegativeParameter(m_param));
    }
    match method {
        Method::ClosedForm => closed_form_sides(m_param),
        Method::Quadrature => quadrature_sides(m_param),
    }
}

pub fn rect_extremal_length(m_param: f64, method: Method) -> Result<QuadModulus, EllipticError> {
    if !(m_param >= 0.0 && m_param.is_finite()) {
        return Err(EllipticError::NegativeParameter(m_param));
    }
    if m_param == 0.0 {
        // the two horizontal sides touch at 0
        return Ok(QuadModulus {
            m_param,
            extremal_length: 0.0,
            conformal_module: f64::INFINITY,
            method,
        });
    }
    let sides = rect_sides(m_param, method)?;
    let extremal_length = sides.extremal_length();
    Ok(QuadModulus {
        m_param,
        extremal_length,
        conformal_module: sides.transposed().extremal_length(),
        method,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckReport {
    pub m_range: Vec<f64>,
    /// Minimum over the samples of `λ(R^M) / log(1 + M)`.
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub argmin: f64,
    pub argmax: f64,
}

impl BoundCheckReport {
    pub fn spread(&self) -> f64 {
        self.ratio_max / self.ratio_min
    }
}

/// Extrema of `λ(R^M) / log(1 + M)` over the given samples, all `M >= 1/2`.
pub fn verify_log_bounds(m_values: &[f64]) -> Result<BoundCheckReport, EllipticError> {
    if m_values.is_empty() {
        return Err(EllipticError::EmptySweep);
    }
    let mut ratio_min = (f64::INFINITY, 0.0);
    let mut ratio_max = (f64::NEG_INFINITY, 0.0);
    for &m in m_values {
        if !(m >= 0.5 && m.is_finite()) {
            return Err(EllipticError::BelowHalf(m));
        }
        let ratio = rect_extremal_length(m, Method::ClosedForm)?.extremal_length / m.ln_1p();
        if ratio < ratio_min.0 {
            ratio_min = (ratio, m);
        }
        if ratio > ratio_max.0 {
            ratio_max = (ratio, m);
        }
    }
    Ok(BoundCheckReport {
        m_range: m_values.to_vec(),
        ratio_min: ratio_min.0,
        ratio_max: ratio_max.0,
        argmin: ratio_min.1,
        argmax: ratio_max.1,
    })
}

/// `samples` geometrically spaced points from `from` to `to` inclusive.
pub fn log_sweep(from: f64, to: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![from],
        n => {
            let step = (to / from).ln() / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { to } else { from * (step * i as f64).exp() })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlalomBound {
    pub m_param: f64,
    /// `λ(R^M)`, an upper bound for the extremal length of the elementary
    /// slalom curve.
    pub rect_upper: f64,
    /// `log(1 + M)`.
    pub log_term: f64,
}

/// Rectangle bound for an elementary slalom curve between the components
/// `(ik, i(k+1))` and `(il, i(l+1))` of the punctured imaginary axis.
pub fn elementary_slalom_bounds(k: i64, l: i64) -> Result<SlalomBound, EllipticError> {
    let gap = k.abs_diff(l);
    if gap < 2 {
        return Err(EllipticError::TrivialSlalom(k, l));
    }
    let m_param = (gap - 1) as f64 / 2.0;
    Ok(SlalomBound {
        m_param,
        rect_upper: rect_extremal_length(m_param, Method::ClosedForm)?.extremal_length,
        log_term: m_param.ln_1p(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agm_fixed_points_and_errors() {
        assert_eq!(agm(1.0, 1.0).unwrap(), 1.0);
        assert!((agm(3.5, 3.5).unwrap() - 3.5).abs() < 1e-15);
        assert!((agm(1.0, 0.5).unwrap() - agm(0.5, 1.0).unwrap()).abs() < 1e-16);
        assert!(agm(0.0, 1.0).is_err());
        assert!(agm(-1.0, 1.0).is_err());
        assert!(agm(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn complete_k_basics() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!(complete_k(0.9).unwrap() > complete_k(0.5).unwrap());
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.1).is_err());
        // K(1/sqrt 2) = Γ(1/4)² / (4 sqrt π)
        let lemniscate = 1.854_074_677_301_372;
        assert!((complete_k(std::f64::consts::FRAC_1_SQRT_2).unwrap() - lemniscate).abs() < 1e-14);
    }

    #[test]
    fn moduli_from_cross_ratio() {
        for m in [0.1, 1.0, 7.0, 1e4] {
            let (k, kp) = moduli(m);
            assert!((k - m / (m + 1.0)).abs() < 1e-15);
            assert!((k * k + kp * kp - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_parameter_is_degenerate() {
        for method in [Method::ClosedForm, Method::Quadrature] {
            let q = rect_extremal_length(0.0, method).unwrap();
            assert_eq!(q.extremal_length, 0.0);
            assert!(q.conformal_module.is_infinite());
        }
        assert!(rect_extremal_length(-1.0, Method::ClosedForm).is_err());
        assert!(rect_extremal_length(f64::NAN, Method::Quadrature).is_err());
    }

    #[test]
    fn methods_agree_on_sides() {
        for m in [0.1, 1.0, 10.0, 1e4] {
            let c = rect_sides(m, Method::ClosedForm).unwrap();
            let q = rect_sides(m, Method::Quadrature).unwrap();
            assert!((c.horizontal - q.horizontal).abs() <= 1e-10 * c.horizontal, "M = {m}");
            assert!((c.vertical - q.vertical).abs() <= 1e-10 * c.vertical, "M = {m}");
        }
    }

    #[test]
    fn json_uses_null_for_infinite_module() {
        let q = rect_extremal_length(0.0, Method::ClosedForm).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"M":0.0,"extremal_length":0.0,"conformal_module":null,"method":"closed_form"}"#
        );
    }

    #[test]
    fn log_bound_errors() {
        assert_eq!(verify_log_bounds(&[]), Err(EllipticError::EmptySweep));
        assert_eq!(verify_log_bounds(&[0.25]), Err(EllipticError::BelowHalf(0.25)));
    }

    #[test]
    fn log_sweep_endpoints() {
        let s = log_sweep(0.5, 1e4, 9);
        assert_eq!(s.len(), 9);
        assert_eq!(s[0], 0.5);
        assert_eq!(s[8], 1e4);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn slalom_bound_depends_on_gap_only() {
        let b = elementary_slalom_bounds(0, 2).unwrap();
        assert_eq!(b.m_param, 0.5);
        assert!((b.log_term - 1.5f64.ln()).abs() < 1e-16);
        assert_eq!(
            elementary_slalom_bounds(0, 3).unwrap(),
            elementary_slalom_bounds(3, 0).unwrap()
        );
        assert_eq!(elementary_slalom_bounds(5, 4), Err(EllipticError::TrivialSlalom(5, 4)));
        assert!(elementary_slalom_bounds(2, 2).is_err());
    }
}
