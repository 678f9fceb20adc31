use std::fmt;

use super::{LagrangeModel, SplineError, SplineModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveSource {
    Spline,
    Lagrange,
    Smoothing,
    Harmonic,
    Regression,
}

impl fmt::Display for CurveSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveSource::Spline => "spline",
            CurveSource::Lagrange => "lagrange",
            CurveSource::Smoothing => "smoothing",
            CurveSource::Harmonic => "harmonic",
            CurveSource::Regression => "regression",
        })
    }
}

/// Anything that can be sampled on a dense grid over its knot span.
pub trait Interpolant {
    fn eval(&self, t: f64) -> f64;
    fn span(&self) -> (f64, f64);
    fn source(&self) -> CurveSource;
}

impl Interpolant for SplineModel {
    fn eval(&self, t: f64) -> f64 {
        SplineModel::eval(self, t)
    }

    fn span(&self) -> (f64, f64) {
        SplineModel::span(self)
    }

    fn source(&self) -> CurveSource {
        if self.lambda() > 0.0 {
            CurveSource::Smoothing
        } else {
            CurveSource::Spline
        }
    }
}

impl Interpolant for LagrangeModel {
    fn eval(&self, t: f64) -> f64 {
        LagrangeModel::eval(self, t)
    }

    fn span(&self) -> (f64, f64) {
        LagrangeModel::span(self)
    }

    fn source(&self) -> CurveSource {
        CurveSource::Lagrange
    }
}

/// A curve tabulated on a uniform, strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    source: CurveSource,
    points: Vec<(f64, f64)>,
}

impl CurveSamples {
    pub fn new(source: CurveSource, points: Vec<(f64, f64)>) -> Result<Self, SplineError> {
        if points.is_empty() || points.iter().any(|(t, y)| !t.is_finite() || !y.is_finite()) {
            return Err(SplineError::InvalidCurve);
        }
        if points.len() > 1 {
            let span = points[points.len() - 1].0 - points[0].0;
            let step = span / (points.len() - 1) as f64;
            let uniform = points
                .windows(2)
                .all(|w| w[1].0 > w[0].0 && ((w[1].0 - w[0].0) - step).abs() <= 1e-9 * step);
            if !uniform {
                return Err(SplineError::InvalidCurve);
            }
        }
        Ok(CurveSamples { source, points })
    }

    /// Tabulates `f` on an existing grid.
    pub fn tabulate(
        source: CurveSource,
        times: &[f64],
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, SplineError> {
        Self::new(source, times.iter().map(|&t| (t, f(t))).collect())
    }

    pub fn source(&self) -> CurveSource {
        self.source
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point with the largest value (first one on ties).
    pub fn max(&self) -> (f64, f64) {
        self.points.iter().copied().fold(
            self.points[0],
            |best, p| if p.1 > best.1 { p } else { best },
        )
    }
}

/// Samples `model` at `resolution` evenly spaced points from the first to
/// the last knot, endpoints included.
pub fn dense_grid<M: Interpolant + ?Sized>(
    model: &M,
    resolution: usize,
) -> Result<CurveSamples, SplineError> {
    if resolution < 2 {
        return Err(SplineError::ResolutionTooSmall(resolution));
    }
    let (lo, hi) = model.span();
    if !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return Err(SplineError::DegenerateSpan);
    }
    let last = resolution - 1;
    let step = (hi - lo) / last as f64;
    let points = (0..resolution)
        .map(|i| {
            let t = if i == last { hi } else { lo + step * i as f64 };
            (t, model.eval(t))
        })
        .collect();
    CurveSamples::new(model.source(), points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TimeSeries;
    use crate::spline::{fit_lagrange, fit_natural_spline};

    fn line(span: f64) -> SplineModel {
        fit_natural_spline(&TimeSeries::from_points(&[(0.0, 0.0), (span, span)]).unwrap()).unwrap()
    }

    #[test]
    fn endpoints_only() {
        let g = dense_grid(&line(10.0), 2).unwrap();
        assert_eq!(g.times(), vec![0.0, 10.0]);
        assert_eq!(g.source(), CurveSource::Spline);
    }

    #[test]
    fn quarter_steps() {
        let g = dense_grid(&line(1.0), 5).unwrap();
        assert_eq!(g.times(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn resolution_too_small() {
        assert_eq!(
            dense_grid(&line(1.0), 1),
            Err(SplineError::ResolutionTooSmall(1))
        );
    }

    #[test]
    fn single_knot_lagrange_has_no_grid() {
        let m = fit_lagrange(&TimeSeries::from_points(&[(1.0, 2.0)]).unwrap()).unwrap();
        assert_eq!(dense_grid(&m, 10), Err(SplineError::DegenerateSpan));
    }

    #[test]
    fn curve_validation() {
        assert!(CurveSamples::new(CurveSource::Spline, vec![]).is_err());
        assert!(CurveSamples::new(
            CurveSource::Spline,
            vec![(0.0, 1.0), (1.0, 1.0), (3.0, 1.0)]
        )
        .is_err());
        assert!(CurveSamples::new(CurveSource::Spline, vec![(0.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(CurveSamples::new(CurveSource::Spline, vec![(0.0, f64::NAN)]).is_err());
        assert!(CurveSamples::new(CurveSource::Spline, vec![(0.0, 1.0)]).is_ok());
    }
}
