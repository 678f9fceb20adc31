//! Polynomial trends, trend reports, Pearson correlation and curve distances.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::TimeSeries;
use crate::numerics::{solve_least_squares, LeastSquaresProblem, Matrix, NumericsError};
use crate::spline::{CurveSamples, CurveSource, Interpolant};

pub const MAX_DEGREE: usize = 10;

/// Below this absolute total change a trend is reported as flat.
pub const DEFAULT_FLAT_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressionError {
    #[error("polynomial degree {0} exceeds the maximum of {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("need at least 3 matched pairs, got {0}")]
    InsufficientPairs(usize),
    #[error("one side of the correlation has zero variance")]
    ZeroVariance,
    #[error("series belong to different stations ({0} vs {1})")]
    StationMismatch(String, String),
    #[error("curves are sampled on different grids")]
    GridMismatch,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Least-squares polynomial in the normalized variable `u = (t - t_mid) / t_scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyModel {
    coefficients: Vec<f64>,
    t_mid: f64,
    t_scale: f64,
    t_span: (f64, f64),
    rmse: f64,
    n_obs: usize,
}

impl PolyModel {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `c_0 ..= c_d`, lowest power first.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn t_mid(&self) -> f64 {
        self.t_mid
    }

    pub fn t_scale(&self) -> f64 {
        self.t_scale
    }

    pub fn rmse(&self) -> f64 {
        self.rmse
    }

    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    pub fn normalize(&self, t: f64) -> f64 {
        (t - self.t_mid) / self.t_scale
    }

    pub fn eval(&self, t: f64) -> f64 {
        let u = self.normalize(t);
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c)
    }

    /// `dy/dt` in physical units.
    pub fn slope(&self, t: f64) -> f64 {
        let u = self.normalize(t);
        let du = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, c)| acc * u + k as f64 * c);
        du / self.t_scale
    }
}

impl Interpolant for PolyModel {
    fn eval(&self, t: f64) -> f64 {
        PolyModel::eval(self, t)
    }

    fn span(&self) -> (f64, f64) {
        self.t_span
    }

    fn source(&self) -> CurveSource {
        CurveSource::Regression
    }
}

pub fn eval_poly(model: &PolyModel, t: f64) -> f64 {
    model.eval(t)
}

pub fn fit_polynomial(series: &TimeSeries, degree: usize) -> Result<PolyModel, RegressionError> {
    if degree > MAX_DEGREE {
        return Err(RegressionError::DegreeTooHigh(degree));
    }
    let n = series.len();
    if n < degree + 1 {
        return Err(RegressionError::InsufficientData {
            needed: degree + 1,
            got: n,
        });
    }
    let (lo, hi) = series.span();
    let t_mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let t_scale = if half > 0.0 { half } else { 1.0 };

    let times = series.times();
    let y = series.values();
    let design = Matrix::from_fn(n, degree + 1, |i, k| {
        ((times[i] - t_mid) / t_scale).powi(k as i32)
    });
    let problem = LeastSquaresProblem::new(design, y)?;
    let coefficients = solve_least_squares(&problem)?;
    let residuals = problem.residuals(&coefficients);
    let rmse = (residuals.iter().map(|r| r * r).sum::<f64>() / n as f64).sqrt();
    Ok(PolyModel {
        coefficients,
        t_mid,
        t_scale,
        t_span: (lo, hi),
        rmse,
        n_obs: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrendDirection {
    Down,
    Up,
    Flat,
}

impl fmt::Display for TrendDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrendDirection::Down => "down",
            TrendDirection::Up => "up",
            TrendDirection::Flat => "flat",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendReport {
    /// y-units per day.
    pub slope: f64,
    /// `slope * span_days`.
    pub total_change: f64,
    pub span_days: f64,
    pub direction: TrendDirection,
}

pub fn trend_report(series: &TimeSeries) -> Result<TrendReport, RegressionError> {
    trend_report_with_threshold(series, DEFAULT_FLAT_THRESHOLD)
}

pub fn trend_report_with_threshold(
    series: &TimeSeries,
    flat_threshold: f64,
) -> Result<TrendReport, RegressionError> {
    if series.len() < 2 {
        return Err(RegressionError::InsufficientData {
            needed: 2,
            got: series.len(),
        });
    }
    let fit = fit_polynomial(series, 1)?;
    let slope = fit.coefficients()[1] / fit.t_scale();
    let (lo, hi) = series.span();
    let span_days = hi - lo;
    let total_change = slope * span_days;
    let direction = if total_change.abs() < flat_threshold {
        TrendDirection::Flat
    } else if total_change < 0.0 {
        TrendDirection::Down
    } else {
        TrendDirection::Up
    };
    Ok(TrendReport {
        slope,
        total_change,
        span_days,
        direction,
    })
}

/// Values of the two series on the dates where both are present.
pub fn matched_pairs(a: &TimeSeries, b: &TimeSeries) -> Vec<(f64, f64)> {
    let by_day: HashMap<u64, f64> = b
        .knots()
        .iter()
        .map(|k| (b.absolute_day(k.t).to_bits(), k.y))
        .collect();
    a.knots()
        .iter()
        .filter_map(|k| {
            by_day
                .get(&a.absolute_day(k.t).to_bits())
                .map(|&yb| (k.y, yb))
        })
        .collect()
}

/// Pearson product-moment correlation over exact-date matches.
pub fn pearson(a: &TimeSeries, b: &TimeSeries) -> Result<f64, RegressionError> {
    Ok(pearson_with_count(a, b)?.0)
}

/// Like [`pearson`], also returning the number of matched pairs used.
pub fn pearson_with_count(a: &TimeSeries, b: &TimeSeries) -> Result<(f64, usize), RegressionError> {
    if a.station() != b.station() {
        return Err(RegressionError::StationMismatch(
            a.station().to_string(),
            b.station().to_string(),
        ));
    }
    let pairs = matched_pairs(a, b);
    let n = pairs.len();
    if n < 3 {
        return Err(RegressionError::InsufficientPairs(n));
    }
    let mean_a = pairs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let mean_b = pairs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for &(x, y) in &pairs {
        let (dx, dy) = (x - mean_a, y - mean_b);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(RegressionError::ZeroVariance);
    }
    let r = sab / (saa.sqrt() * sbb.sqrt());
    Ok((r.clamp(-1.0, 1.0), n))
}

/// Root-mean-square pointwise difference of two curves on the same grid.
pub fn rmse_between(a: &CurveSamples, b: &CurveSamples) -> Result<f64, RegressionError> {
    if a.len() != b.len() || a.points().iter().zip(b.points()).any(|(p, q)| p.0 != q.0) {
        return Err(RegressionError::GridMismatch);
    }
    let sum: f64 = a
        .points()
        .iter()
        .zip(b.points())
        .map(|(p, q)| (p.1 - q.1).powi(2))
        .sum();
    Ok((sum / a.len() as f64).sqrt())
}
