//! Test-only reference implementations. Nothing here calls into the
//! library's solvers, so agreement with them is an independent check.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Day offsets of the Gropeni table dates from 9/11/2003.
pub const GROPENI_T: [f64; 11] = [
    0.0, 33.0, 61.0, 85.0, 141.0, 147.0, 196.0, 232.0, 263.0, 291.0, 308.0,
];
pub const GROPENI_OD: [f64; 11] = [8.1, 7.5, 7.9, 7.3, 8.3, 8.5, 9.2, 9.8, 8.0, 9.0, 7.6];
/// Temperature column; `None` where the table has `*`.
pub const GROPENI_TEMP: [Option<f64>; 11] = [
    Some(21.0),
    Some(14.0),
    Some(11.0),
    Some(7.0),
    Some(3.0),
    Some(3.0),
    Some(9.0),
    None,
    Some(20.0),
    Some(26.0),
    None,
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian elimination with partial pivoting on a dense copy.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        assert!(a[col][col].abs() > 1e-300, "singular oracle system");
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Natural cubic spline by brute force: all `4(n-1)` coefficients
/// `(a, b, c, d)` per segment from interpolation, C¹/C² matching and the two
/// end conditions, solved as one dense system.
pub fn dense_spline_oracle(t: &[f64], y: &[f64]) -> Vec<[f64; 4]> {
    let n = t.len();
    let segs = n - 1;
    let size = 4 * segs;
    let mut a = vec![vec![0.0; size]; size];
    let mut b = vec![0.0; size];
    let mut row = 0;
    let col = |s: usize, k: usize| 4 * s + k;
    for s in 0..segs {
        let h = t[s + 1] - t[s];
        // f_s(0) = y_s
        a[row][col(s, 0)] = 1.0;
        b[row] = y[s];
        row += 1;
        // f_s(h) = y_{s+1}
        a[row][col(s, 0)] = 1.0;
        a[row][col(s, 1)] = h;
        a[row][col(s, 2)] = h * h;
        a[row][col(s, 3)] = h * h * h;
        b[row] = y[s + 1];
        row += 1;
        if s + 1 < segs {
            // f'_s(h) = f'_{s+1}(0)
            a[row][col(s, 1)] = 1.0;
            a[row][col(s, 2)] = 2.0 * h;
            a[row][col(s, 3)] = 3.0 * h * h;
            a[row][col(s + 1, 1)] = -1.0;
            row += 1;
            // f''_s(h) = f''_{s+1}(0)
            a[row][col(s, 2)] = 2.0;
            a[row][col(s, 3)] = 6.0 * h;
            a[row][col(s + 1, 2)] = -2.0;
            row += 1;
        }
    }
    a[row][col(0, 2)] = 2.0;
    row += 1;
    let h = t[n - 1] - t[n - 2];
    a[row][col(segs - 1, 2)] = 2.0;
    a[row][col(segs - 1, 3)] = 6.0 * h;
    row += 1;
    assert_eq!(row, size);
    let x = dense_solve(a, b);
    x.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect()
}

pub fn eval_oracle_spline(t: &[f64], coeffs: &[[f64; 4]], x: f64) -> f64 {
    let i = t
        .partition_point(|&k| k <= x)
        .saturating_sub(1)
        .min(coeffs.len() - 1);
    let s = x - t[i];
    let c = coeffs[i];
    c[0] + c[1] * s + c[2] * s * s + c[3] * s * s * s
}

/// Closed-form simple linear regression: `(intercept, slope)`.
pub fn ols_line(t: &[f64], y: &[f64]) -> (f64, f64) {
    let n = t.len() as f64;
    let mt = t.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sty: f64 = t.iter().zip(y).map(|(a, b)| (a - mt) * (b - my)).sum();
    let stt: f64 = t.iter().map(|a| (a - mt) * (a - mt)).sum();
    let slope = sty / stt;
    (my - slope * mt, slope)
}

/// Least squares by normal equations `AᵀA x = Aᵀy`, solved densely.
pub fn normal_equations(design: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let k = design[0].len();
    let mut ata = vec![vec![0.0; k]; k];
    let mut aty = vec![0.0; k];
    for (row, &yy) in design.iter().zip(y) {
        for i in 0..k {
            aty[i] += row[i] * yy;
            for j in 0..k {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    dense_solve(ata, aty)
}

/// Pearson r for data with one decimal place, with every sum formed exactly
/// in integer arithmetic (values scaled by 10).
pub fn pearson_exact_tenths(x: &[f64], y: &[f64]) -> f64 {
    let xi: Vec<i128> = x.iter().map(|v| (v * 10.0).round() as i128).collect();
    let yi: Vec<i128> = y.iter().map(|v| (v * 10.0).round() as i128).collect();
    let n = xi.len() as i128;
    let sx: i128 = xi.iter().sum();
    let sy: i128 = yi.iter().sum();
    let sxx: i128 = xi.iter().map(|v| v * v).sum();
    let syy: i128 = yi.iter().map(|v| v * v).sum();
    let sxy: i128 = xi.iter().zip(&yi).map(|(a, b)| a * b).sum();
    let num = n * sxy - sx * sy;
    let dx = n * sxx - sx * sx;
    let dy = n * syy - sy * sy;
    num as f64 / ((dx as f64) * (dy as f64)).sqrt()
}

/// Sorted, well-separated random knot times and values.
pub fn random_series(rng: &mut impl Rng, n: usize) -> Vec<(f64, f64)> {
    let mut t = rng.gen_range(-50.0..50.0);
    (0..n)
        .map(|_| {
            let point = (t, rng.gen_range(-10.0..10.0));
            t += rng.gen_range(0.1..20.0);
            point
        })
        .collect()
}

/// Random diagonally dominant tridiagonal system `(lower, diag, upper, rhs)`.
pub fn random_tridiagonal(
    rng: &mut impl Rng,
    n: usize,
) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    let lower: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let upper: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let diag = (0..n)
        .map(|i| {
            let off = if i > 0 { lower[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { upper[i].abs() } else { 0.0 };
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * (off + rng.gen_range(0.5..2.0))
        })
        .collect();
    let rhs = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
    (lower, diag, upper, rhs)
}

pub fn tridiagonal_dense(lower: &[f64], diag: &[f64], upper: &[f64]) -> Vec<Vec<f64>> {
    let n = diag.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = diag[i];
        if i > 0 {
            a[i][i - 1] = lower[i - 1];
        }
        if i + 1 < n {
            a[i][i + 1] = upper[i];
        }
    }
    a
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Relative closeness scaled by `1 + |reference|`.
pub fn close(value: f64, reference: f64, tol: f64) -> bool {
    (value - reference).abs() <= tol * (1.0 + reference.abs())
}

// Frozen values for the Gropeni OD series, computed with the oracles above
// (dense constraint-system spline, closed-form OLS, integer-exact Pearson,
// normal-equation harmonic scaling) and cross-checked against scipy.

/// Max of the natural spline on the 1000-point grid over [0, 308] days.
pub const GOLDEN_GRID_MAX: f64 = 9.973237976269486;
pub const GOLDEN_GRID_ARGMAX: f64 = 223.2152152152152;
/// The interior maximum between the 3/25/2004 and 5/31/2004 knots.
pub const GOLDEN_PEAK_T: f64 = 223.36867739549967;
pub const GOLDEN_PEAK_Y: f64 = 9.973285320441454;
pub const GOLDEN_OLS_INTERCEPT: f64 = 7.8094006644199885;
pub const GOLDEN_OLS_SLOPE: f64 = 0.0030145661305521396;
pub const GOLDEN_TREND_TOTAL: f64 = 0.928486368210059;
pub const GOLDEN_PEARSON_TEMP_OD: f64 = 0.1329713235733478;
pub const GOLDEN_HARMONIC_AMPLITUDE: f64 = -0.04856715001932222;
pub const GOLDEN_HARMONIC_OFFSET: f64 = 8.325781819358706;
pub const GOLDEN_HARMONIC_RMSE: f64 = 0.7864555645517667;
pub const GOLDEN_HARMONIC_MAX_DEV: f64 = 1.657141059913755;
pub const GOLDEN_HARMONIC_ARGMAX_T: f64 = 224.75675675675674;
/// RMSE between the full-knot spline and the even-index-knot spline.
pub const GOLDEN_SUBSET_RMSE: f64 = 0.5481954370427787;
