use super::natural::fit_natural_spline;
use super::{SplineError, SplineModel};
use crate::model::TimeSeries;
use crate::numerics::{solve_symmetric_banded, SymmetricBanded};

/// Natural cubic spline minimizing `Σ (y_i - f(t_i))² + λ ∫ f''²`.
///
/// With `Q` the `n × (n-2)` second-difference matrix and `R` the tridiagonal
/// moment matrix, the interior moments `γ` solve the pentadiagonal SPD system
/// `(R + λ QᵀQ) γ = Qᵀ y`, and the fitted knot values are `g = y - λ Q γ`.
/// `λ = 0` gives the interpolating spline.
pub fn fit_smoothing_spline(series: &TimeSeries, lambda: f64) -> Result<SplineModel, SplineError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(SplineError::NegativeLambda(lambda));
    }
    let n = series.len();
    if lambda == 0.0 && n == 2 {
        return fit_natural_spline(series);
    }
    if n < 3 {
        return Err(SplineError::TooFewKnots { needed: 3, got: n });
    }

    let t = series.times();
    let y = series.values();
    let h: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();
    let m = n - 2;

    // Column j of Q (interior knot j+1) has entries at rows j, j+1, j+2.
    let q_col = |j: usize| -> [(usize, f64); 3] {
        [
            (j, 1.0 / h[j]),
            (j + 1, -1.0 / h[j] - 1.0 / h[j + 1]),
            (j + 2, 1.0 / h[j + 1]),
        ]
    };

    let mut system = SymmetricBanded::zeros(m, 2);
    for j in 0..m {
        system.add(j, j, (h[j] + h[j + 1]) / 3.0);
        if j + 1 < m {
            system.add(j, j + 1, h[j + 1] / 6.0);
        }
    }
    if lambda > 0.0 {
        for j in 0..m {
            for k in j..(j + 3).min(m) {
                let qtq: f64 = q_col(j)
                    .iter()
                    .flat_map(|&(r1, v1)| {
                        q_col(k)
                            .into_iter()
                            .filter(move |&(r2, _)| r2 == r1)
                            .map(move |(_, v2)| v1 * v2)
                    })
                    .sum();
                system.add(j, k, lambda * qtq);
            }
        }
    }

    let qty: Vec<f64> = (0..m)
        .map(|j| q_col(j).iter().map(|&(r, v)| v * y[r]).sum())
        .collect();
    let gamma = solve_symmetric_banded(&system, &qty)?;

    let mut fitted = y.clone();
    if lambda > 0.0 {
        for (j, g) in gamma.iter().enumerate() {
            for (r, v) in q_col(j) {
                fitted[r] -= lambda * v * g;
            }
        }
    }

    let mut moments = vec![0.0; n];
    moments[1..n - 1].copy_from_slice(&gamma);
    Ok(SplineModel::from_moments(t, y, fitted, &moments, lambda))
}
