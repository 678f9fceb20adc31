//! Piecewise-cubic and polynomial interpolants over a [`TimeSeries`].
//!
//! Natural and smoothing splines share one representation, [`SplineModel`],
//! holding per-segment coefficients
//! `f(t) = a + b (t - t_i) + c (t - t_i)^2 + d (t - t_i)^3` on `[t_i, t_{i+1}]`.
//! Outside the knot span the spline continues as a straight line with the
//! boundary slope.
//!
//! [`TimeSeries`]: crate::model::TimeSeries

mod extrema;
mod grid;
mod lagrange;
mod natural;
mod smoothing;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use extrema::{spline_extrema, Extremum, ExtremumKind, FLAT_CURVATURE_TOLERANCE};
pub use grid::{dense_grid, CurveSamples, CurveSource, Interpolant};
pub use lagrange::{eval_lagrange, fit_lagrange, LagrangeModel, KNOT_SNAP};
pub use natural::fit_natural_spline;
pub use smoothing::fit_smoothing_spline;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("need at least {needed} knots, got {got}")]
    TooFewKnots { needed: usize, got: usize },
    #[error("smoothing parameter must be a finite value >= 0, got {0}")]
    NegativeLambda(f64),
    #[error("derivative order {0} is not supported (use 1 or 2)")]
    UnsupportedOrder(u8),
    #[error("knots {0} and {1} coincide")]
    DuplicateKnots(usize, usize),
    #[error("grid resolution must be at least 2, got {0}")]
    ResolutionTooSmall(usize),
    #[error("interpolant spans a single instant; no grid can be built")]
    DegenerateSpan,
    #[error("curve samples must be finite, strictly increasing and uniformly spaced")]
    InvalidCurve,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Zero second derivative at both ends.
    Natural,
}

/// Cubic on one knot interval, in powers of `s = t - t_start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSegment {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CubicSegment {
    #[inline]
    pub fn value(&self, s: f64) -> f64 {
        ((self.d * s + self.c) * s + self.b) * s + self.a
    }

    #[inline]
    pub fn slope(&self, s: f64) -> f64 {
        (3.0 * self.d * s + 2.0 * self.c) * s + self.b
    }

    #[inline]
    pub fn curvature(&self, s: f64) -> f64 {
        6.0 * self.d * s + 2.0 * self.c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplineModel {
    times: Vec<f64>,
    data: Vec<f64>,
    fitted: Vec<f64>,
    segments: Vec<CubicSegment>,
    boundary: Boundary,
    lambda: f64,
}

impl SplineModel {
    /// Builds the segments of the natural cubic through `(times, values)`
    /// whose second derivatives at the knots are `moments`.
    pub(crate) fn from_moments(
        times: Vec<f64>,
        data: Vec<f64>,
        values: Vec<f64>,
        moments: &[f64],
        lambda: f64,
    ) -> Self {
        let segments = times
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let h = w[1] - w[0];
                let (m0, m1) = (moments[i], moments[i + 1]);
                CubicSegment {
                    a: values[i],
                    b: (values[i + 1] - values[i]) / h - h * (2.0 * m0 + m1) / 6.0,
                    c: m0 / 2.0,
                    d: (m1 - m0) / (6.0 * h),
                }
            })
            .collect();
        SplineModel {
            times,
            data,
            fitted: values,
            segments,
            boundary: Boundary::Natural,
            lambda,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Observed values the spline was fitted to.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Spline values at the knots. Equal to [`data`](Self::data) when `lambda == 0`.
    pub fn fitted_values(&self) -> &[f64] {
        &self.fitted
    }

    pub fn segments(&self) -> &[CubicSegment] {
        &self.segments
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn span(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// Index of the segment owning `t` (clamped to the first/last segment).
    pub fn segment_index(&self, t: f64) -> usize {
        let last = self.segments.len() - 1;
        self.times
            .partition_point(|&knot| knot <= t)
            .saturating_sub(1)
            .min(last)
    }

    fn boundary_slopes(&self) -> (f64, f64) {
        let first = self.segments[0];
        let last = self.segments[self.segments.len() - 1];
        let h_last = self.times[self.times.len() - 1] - self.times[self.times.len() - 2];
        (first.slope(0.0), last.slope(h_last))
    }

    /// Evaluates the spline. Outside the knot span the continuation is linear.
    pub fn eval(&self, t: f64) -> f64 {
        let (lo, hi) = self.span();
        if t < lo {
            let (left, _) = self.boundary_slopes();
            return self.fitted[0] + left * (t - lo);
        }
        if t > hi {
            let (_, right) = self.boundary_slopes();
            return self.fitted[self.fitted.len() - 1] + right * (t - hi);
        }
        let i = self.segment_index(t);
        self.segments[i].value(t - self.times[i])
    }

    /// First (`order = 1`) or second (`order = 2`) derivative.
    pub fn derivative(&self, t: f64, order: u8) -> Result<f64, SplineError> {
        let (lo, hi) = self.span();
        let (left, right) = self.boundary_slopes();
        match order {
            1 if t < lo => Ok(left),
            1 if t > hi => Ok(right),
            2 if t < lo || t > hi => Ok(0.0),
            1 | 2 => {
                let i = self.segment_index(t);
                let s = t - self.times[i];
                Ok(if order == 1 {
                    self.segments[i].slope(s)
                } else {
                    self.segments[i].curvature(s)
                })
            }
            other => Err(SplineError::UnsupportedOrder(other)),
        }
    }
}

/// Free-function form of [`SplineModel::eval`].
pub fn eval_spline(model: &SplineModel, t: f64) -> f64 {
    model.eval(t)
}

/// Free-function form of [`SplineModel::derivative`].
pub fn eval_spline_derivative(model: &SplineModel, t: f64, order: u8) -> Result<f64, SplineError> {
    model.derivative(t, order)
}
