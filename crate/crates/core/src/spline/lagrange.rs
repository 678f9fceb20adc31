use super::SplineError;
use crate::model::TimeSeries;

/// Evaluation points this close to a knot (in days) return the knot value.
pub const KNOT_SNAP: f64 = 1e-12;

/// Interpolating polynomial of degree `n - 1` in barycentric form.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeModel {
    times: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl LagrangeModel {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `w_i = 1 / ∏_{j≠i} (t_i - t_j)`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degree(&self) -> usize {
        self.times.len() - 1
    }

    pub fn span(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// Second (true) barycentric formula.
    pub fn eval(&self, t: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&ti, &yi), &wi) in self.times.iter().zip(&self.values).zip(&self.weights) {
            let diff = t - ti;
            if diff.abs() <= KNOT_SNAP {
                return yi;
            }
            let term = wi / diff;
            num += term * yi;
            den += term;
        }
        num / den
    }
}

pub fn fit_lagrange(series: &TimeSeries) -> Result<LagrangeModel, SplineError> {
    let times = series.times();
    let n = times.len();
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = 1.0;
        for j in (0..n).filter(|&j| j != i) {
            let diff = times[i] - times[j];
            if diff == 0.0 {
                return Err(SplineError::DuplicateKnots(i.min(j), i.max(j)));
            }
            prod *= diff;
        }
        let w = 1.0 / prod;
        if !w.is_finite() || w == 0.0 {
            // product under/overflowed: knots too close or too many to weight
            return Err(SplineError::DuplicateKnots(i, i));
        }
        weights.push(w);
    }
    Ok(LagrangeModel {
        times,
        values: series.values(),
        weights,
    })
}

pub fn eval_lagrange(model: &LagrangeModel, t: f64) -> f64 {
    model.eval(t)
}
