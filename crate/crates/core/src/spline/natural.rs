use super::{SplineError, SplineModel};
use crate::model::TimeSeries;
use crate::numerics::{solve_tridiagonal, TridiagonalSystem};

/// Interpolating cubic spline with `f'' = 0` at both end knots.
///
/// The interior second derivatives (moments) solve the tridiagonal system
/// `h[i-1] M[i-1] + 2 (h[i-1] + h[i]) M[i] + h[i] M[i+1] = 6 (Δ[i] - Δ[i-1])`
/// where `Δ[i]` is the slope of the chord over segment `i`.
pub fn fit_natural_spline(series: &TimeSeries) -> Result<SplineModel, SplineError> {
    let n = series.len();
    if n < 2 {
        return Err(SplineError::TooFewKnots { needed: 2, got: n });
    }
    let t = series.times();
    let y = series.values();
    let moments = natural_moments(&t, &y)?;
    Ok(SplineModel::from_moments(t, y.clone(), y, &moments, 0.0))
}

pub(super) fn natural_moments(t: &[f64], y: &[f64]) -> Result<Vec<f64>, SplineError> {
    let n = t.len();
    let mut moments = vec![0.0; n];
    if n == 2 {
        return Ok(moments);
    }
    let h: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();
    let chord: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

    let m = n - 2;
    let diag = (0..m).map(|j| 2.0 * (h[j] + h[j + 1])).collect();
    let off: Vec<f64> = (1..m).map(|j| h[j]).collect();
    let rhs = (0..m).map(|j| 6.0 * (chord[j + 1] - chord[j])).collect();
    let system = TridiagonalSystem::new(off.clone(), diag, off, rhs)?;
    let interior = solve_tridiagonal(&system)?;
    moments[1..n - 1].copy_from_slice(&interior);
    Ok(moments)
}
