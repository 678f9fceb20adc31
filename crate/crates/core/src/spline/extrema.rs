use std::fmt;

use super::{CubicSegment, SplineModel};

/// `|f''|` at or below this marks a flat inflection, which is not reported.
pub const FLAT_CURVATURE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Max,
    Min,
}

impl fmt::Display for ExtremumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtremumKind::Max => "max",
            ExtremumKind::Min => "min",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub y: f64,
    pub kind: ExtremumKind,
}

/// Real roots of `a s² + b s + c`, using the cancellation-free pairing
/// `q = -(b + sign(b) √disc) / 2`, roots `q / a` and `c / q`.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn stationary_points(seg: &CubicSegment, h: f64, include_start: bool) -> Vec<f64> {
    let tol = 1e-12 * h;
    let mut out: Vec<f64> = quadratic_roots(3.0 * seg.d, 2.0 * seg.c, seg.b)
        .into_iter()
        .filter(|s| s.is_finite() && *s >= -tol && *s < h - tol)
        .map(|s| {
            let s = s.max(0.0);
            // one Newton step, kept only if it reduces |f'|
            let curv = seg.curvature(s);
            if curv != 0.0 {
                let polished = s - seg.slope(s) / curv;
                if (0.0..h).contains(&polished) && seg.slope(polished).abs() < seg.slope(s).abs() {
                    return polished;
                }
            }
            s
        })
        .filter(|&s| include_start || s > tol)
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Interior local maxima and minima of the spline, sorted by `t`.
///
/// Each segment's derivative is a quadratic, so its zeros come in closed
/// form. Roots are searched on the half-open segment `[t_i, t_{i+1})`; the
/// two end knots of the whole spline are never reported.
pub fn spline_extrema(model: &SplineModel) -> Vec<Extremum> {
    let times = model.times();
    let (lo, hi) = model.span();
    let merge_tol = 1e-9 * (hi - lo).max(1.0);
    let mut found: Vec<Extremum> = Vec::new();
    for (i, seg) in model.segments().iter().enumerate() {
        let h = times[i + 1] - times[i];
        for s in stationary_points(seg, h, i > 0) {
            let curvature = seg.curvature(s);
            if curvature.abs() <= FLAT_CURVATURE_TOLERANCE {
                continue;
            }
            let t = times[i] + s;
            if t <= lo || t >= hi {
                continue;
            }
            if found
                .last()
                .is_some_and(|prev| (t - prev.t).abs() <= merge_tol)
            {
                continue;
            }
            let kind = if curvature < 0.0 {
                ExtremumKind::Max
            } else {
                ExtremumKind::Min
            };
            found.push(Extremum {
                t,
                y: model.eval(t),
                kind,
            });
        }
    }
    found
}
