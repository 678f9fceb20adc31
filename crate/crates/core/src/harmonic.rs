//! Harmonic reference curve `offset + amplitude · (sin ωk + cos ωk)^p`
//! and residual statistics of a fitted curve against it.
//!
//! The fractional power of a negative base is taken as the signed power
//! `sign(u) |u|^p`, which keeps the curve real and odd through zero.

use std::f64::consts::PI;

use thiserror::Error;

use crate::numerics::{solve_least_squares, LeastSquaresProblem, Matrix, NumericsError};
use crate::spline::{CurveSamples, CurveSource};

/// Index units spanned by the reference window.
pub const REFERENCE_WINDOW: f64 = 192.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarmonicError {
    #[error("angular coefficient must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(f64),
    #[error("index map scale must be finite and nonzero")]
    InvalidIndexMap,
    #[error("curve has no samples")]
    EmptyCurve,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicSpec {
    angular_coeff: f64,
    exponent: f64,
    pub amplitude: f64,
    pub offset: f64,
}

impl HarmonicSpec {
    pub fn new(
        angular_coeff: f64,
        exponent: f64,
        amplitude: f64,
        offset: f64,
    ) -> Result<Self, HarmonicError> {
        if !angular_coeff.is_finite() || angular_coeff <= 0.0 {
            return Err(HarmonicError::NonPositiveFrequency(angular_coeff));
        }
        if !exponent.is_finite() || exponent <= 0.0 {
            return Err(HarmonicError::NonPositiveExponent(exponent));
        }
        Ok(HarmonicSpec {
            angular_coeff,
            exponent,
            amplitude,
            offset,
        })
    }

    /// `ω = 8π/192`, `p = 4/3`, unit amplitude, zero offset.
    pub fn reference() -> Self {
        HarmonicSpec {
            angular_coeff: 8.0 * PI / REFERENCE_WINDOW,
            exponent: 4.0 / 3.0,
            amplitude: 1.0,
            offset: 0.0,
        }
    }

    pub fn angular_coeff(&self) -> f64 {
        self.angular_coeff
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.angular_coeff
    }

    pub fn with_scale(self, amplitude: f64, offset: f64) -> Self {
        HarmonicSpec {
            amplitude,
            offset,
            ..self
        }
    }

    /// The unscaled shape `signed_pow(sin ωk + cos ωk, p)`.
    pub fn shape(&self, k: f64) -> f64 {
        let arg = self.angular_coeff * k;
        signed_pow(arg.sin() + arg.cos(), self.exponent)
    }
}

impl Default for HarmonicSpec {
    fn default() -> Self {
        Self::reference()
    }
}

/// `sign(u) · |u|^p`.
pub fn signed_pow(u: f64, p: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u.signum() * u.abs().powf(p)
    }
}

pub fn harmonic_reference(k: f64, spec: &HarmonicSpec) -> f64 {
    spec.offset + spec.amplitude * spec.shape(k)
}

/// Affine map from days to harmonic index, `k = (t - origin) · scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexMap {
    pub origin: f64,
    pub scale: f64,
}

impl IndexMap {
    pub fn new(origin: f64, scale: f64) -> Result<Self, HarmonicError> {
        if !origin.is_finite() || !scale.is_finite() || scale == 0.0 {
            return Err(HarmonicError::InvalidIndexMap);
        }
        Ok(IndexMap { origin, scale })
    }

    /// Maps `[start, end]` onto `[0, window]`.
    pub fn over_span(start: f64, end: f64, window: f64) -> Result<Self, HarmonicError> {
        Self::new(start, window / (end - start))
    }

    /// Maps `[start, end]` onto the 192-unit reference window.
    pub fn reference(start: f64, end: f64) -> Result<Self, HarmonicError> {
        Self::over_span(start, end, REFERENCE_WINDOW)
    }

    pub fn index(&self, t: f64) -> f64 {
        (t - self.origin) * self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualStats {
    pub rmse: f64,
    pub max_abs_deviation: f64,
    /// Grid time of the largest deviation (first occurrence).
    pub argmax_t: f64,
}

/// Harmonic evaluated on the curve's grid.
pub fn harmonic_curve(
    times: &[f64],
    spec: &HarmonicSpec,
    map: &IndexMap,
) -> Result<CurveSamples, HarmonicError> {
    CurveSamples::tabulate(CurveSource::Harmonic, times, |t| {
        harmonic_reference(map.index(t), spec)
    })
    .map_err(|_| HarmonicError::EmptyCurve)
}

pub fn compare_to_harmonic(
    curve: &CurveSamples,
    spec: &HarmonicSpec,
    map: &IndexMap,
) -> Result<ResidualStats, HarmonicError> {
    if curve.is_empty() {
        return Err(HarmonicError::EmptyCurve);
    }
    let mut sum_sq = 0.0;
    let mut worst = (curve.points()[0].0, -1.0);
    for &(t, y) in curve.points() {
        let dev = (y - harmonic_reference(map.index(t), spec)).abs();
        sum_sq += dev * dev;
        if dev > worst.1 {
            worst = (t, dev);
        }
    }
    Ok(ResidualStats {
        rmse: (sum_sq / curve.len() as f64).sqrt(),
        max_abs_deviation: worst.1,
        argmax_t: worst.0,
    })
}

/// Least-squares amplitude and offset of `spec`'s shape against the curve.
pub fn fit_harmonic_scale(
    curve: &CurveSamples,
    spec: &HarmonicSpec,
    map: &IndexMap,
) -> Result<HarmonicSpec, HarmonicError> {
    if curve.is_empty() {
        return Err(HarmonicError::EmptyCurve);
    }
    let design = Matrix::from_fn(curve.len(), 2, |i, j| {
        if j == 0 {
            spec.shape(map.index(curve.points()[i].0))
        } else {
            1.0
        }
    });
    let problem = LeastSquaresProblem::new(design, curve.values())?;
    let coeffs = solve_least_squares(&problem)?;
    Ok(spec.with_scale(coeffs[0], coeffs[1]))
}
