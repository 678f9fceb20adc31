//! Small linear-algebra kernels used by the spline and regression code.
//!
//! Everything here works on plain `f64` slices and a minimal row-major
//! [`Matrix`]. No pivoting is performed in the banded solvers: the spline
//! systems that feed them are diagonally dominant or positive definite.

use thiserror::Error;

/// Pivots smaller than this abort tridiagonal elimination.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Relative column-norm loss that marks a least-squares design as rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero pivot at row {row} (|pivot| = {pivot:e})")]
    ZeroPivot { row: usize, pivot: f64 },
    #[error("design matrix is rank deficient at column {0}")]
    RankDeficient(usize),
    #[error("matrix is not positive definite at row {0}")]
    NotPositiveDefinite(usize),
    #[error("non-finite entry in input")]
    NonFinite,
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, NumericsError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(NumericsError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        self.data
            .chunks_exact(self.cols.max(1))
            .take(self.rows)
            .map(|row| dot(row, x))
            .collect()
    }

    pub fn transpose_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)] * y[i]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `A x = rhs` with `A` tridiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(
        lower: Vec<f64>,
        diag: Vec<f64>,
        upper: Vec<f64>,
        rhs: Vec<f64>,
    ) -> Result<Self, NumericsError> {
        let sys = TridiagonalSystem {
            lower,
            diag,
            upper,
            rhs,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<(), NumericsError> {
        let n = self.diag.len();
        if n == 0 || self.lower.len() + 1 != n || self.upper.len() + 1 != n || self.rhs.len() != n {
            return Err(NumericsError::DimensionMismatch(format!(
                "lower {}, diag {}, upper {}, rhs {}",
                self.lower.len(),
                n,
                self.upper.len(),
                self.rhs.len()
            )));
        }
        let all = self
            .lower
            .iter()
            .chain(&self.diag)
            .chain(&self.upper)
            .chain(&self.rhs);
        if all.into_iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.lower[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.upper[i] * x[i + 1];
                }
                v
            })
            .collect()
    }
}

/// Thomas algorithm: forward elimination then back substitution, O(n).
pub fn solve_tridiagonal(system: &TridiagonalSystem) -> Result<Vec<f64>, NumericsError> {
    system.validate()?;
    let n = system.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];

    let mut pivot = system.diag[0];
    for i in 0..n {
        if i > 0 {
            pivot = system.diag[i] - system.lower[i - 1] * c[i - 1];
        }
        if pivot.abs() < PIVOT_TOLERANCE {
            return Err(NumericsError::ZeroPivot { row: i, pivot });
        }
        if i + 1 < n {
            c[i] = system.upper[i] / pivot;
        }
        let carried = if i > 0 {
            system.lower[i - 1] * d[i - 1]
        } else {
            0.0
        };
        d[i] = (system.rhs[i] - carried) / pivot;
    }

    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Symmetric positive-definite band matrix. Row `i` stores
/// `A[i][i], A[i][i+1], ..., A[i][i+bandwidth]` (entries past the end are ignored).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBanded {
    bandwidth: usize,
    upper_rows: Vec<Vec<f64>>,
}

impl SymmetricBanded {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        SymmetricBanded {
            bandwidth,
            upper_rows: vec![vec![0.0; bandwidth + 1]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.upper_rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper_rows.is_empty()
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if j - i > self.bandwidth || j >= self.len() {
            0.0
        } else {
            self.upper_rows[i][j - i]
        }
    }

    /// Adds `v` to `A[i][j]` (and, by symmetry, `A[j][i]`).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(
            j - i <= self.bandwidth && j < self.len(),
            "entry outside band"
        );
        self.upper_rows[i][j - i] += v;
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(self.bandwidth);
                let hi = (i + self.bandwidth).min(n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }
}

/// Band Cholesky factorization `A = L Lᵀ` followed by two triangular solves.
pub fn solve_symmetric_banded(a: &SymmetricBanded, rhs: &[f64]) -> Result<Vec<f64>, NumericsError> {
    let n = a.len();
    let p = a.bandwidth;
    if rhs.len() != n {
        return Err(NumericsError::DimensionMismatch(format!(
            "matrix {n}, rhs {}",
            rhs.len()
        )));
    }
    if rhs.iter().any(|v| !v.is_finite()) || a.upper_rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    // l[i][k] = L[i][i - k]
    let mut l = vec![vec![0.0; p + 1]; n];
    let lij = |l: &Vec<Vec<f64>>, i: usize, j: usize| l[i][i - j];
    for i in 0..n {
        let lo = i.saturating_sub(p);
        for j in lo..=i {
            let mut sum = a.get(i, j);
            for k in lo.max(j.saturating_sub(p))..j {
                sum -= lij(&l, i, k) * lij(&l, j, k);
            }
            if i == j {
                if sum.is_nan() || sum <= PIVOT_TOLERANCE * a.get(i, i).abs().max(f64::MIN_POSITIVE)
                {
                    return Err(NumericsError::NotPositiveDefinite(i));
                }
                l[i][0] = sum.sqrt();
            } else {
                l[i][i - j] = sum / l[j][0];
            }
        }
    }
    let mut z = rhs.to_vec();
    for i in 0..n {
        for k in i.saturating_sub(p)..i {
            z[i] -= lij(&l, i, k) * z[k];
        }
        z[i] /= l[i][0];
    }
    for i in (0..n).rev() {
        for k in i + 1..(i + p + 1).min(n) {
            z[i] -= lij(&l, k, i) * z[k];
        }
        z[i] /= l[i][0];
    }
    Ok(z)
}

/// Minimize `|design · x − targets|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresProblem {
    pub design: Matrix,
    pub targets: Vec<f64>,
}

impl LeastSquaresProblem {
    pub fn new(design: Matrix, targets: Vec<f64>) -> Result<Self, NumericsError> {
        let p = LeastSquaresProblem { design, targets };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), NumericsError> {
        let (m, k) = (self.design.rows(), self.design.cols());
        if k == 0 || m < k || self.targets.len() != m {
            return Err(NumericsError::DimensionMismatch(format!(
                "design {m}x{k}, targets {}",
                self.targets.len()
            )));
        }
        if self
            .design
            .data
            .iter()
            .chain(&self.targets)
            .any(|v| !v.is_finite())
        {
            return Err(NumericsError::NonFinite);
        }
        Ok(())
    }

    pub fn residuals(&self, coeffs: &[f64]) -> Vec<f64> {
        self.design
            .mul_vec(coeffs)
            .iter()
            .zip(&self.targets)
            .map(|(fit, y)| y - fit)
            .collect()
    }
}

/// Least squares through a thin QR built by modified Gram-Schmidt with one
/// reorthogonalization pass per column. The targets are carried along as an
/// extra column so `Qᵀ targets` sees the same rounding as the factorization.
pub fn solve_least_squares(problem: &LeastSquaresProblem) -> Result<Vec<f64>, NumericsError> {
    problem.validate()?;
    let (m, k) = (problem.design.rows(), problem.design.cols());
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = Matrix::zeros(k, k);
    let mut qtb = vec![0.0; k];
    let mut b = problem.targets.clone();

    for j in 0..k {
        let mut v = problem.design.column(j);
        let original = norm(&v);
        for _pass in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let proj = dot(qi, &v);
                r[(i, j)] += proj;
                v.iter_mut().zip(qi).for_each(|(vv, qq)| *vv -= proj * qq);
            }
        }
        let remaining = norm(&v);
        if original == 0.0 || remaining <= RANK_TOLERANCE * original {
            return Err(NumericsError::RankDeficient(j));
        }
        r[(j, j)] = remaining;
        v.iter_mut().for_each(|x| *x /= remaining);

        let proj = dot(&v, &b);
        qtb[j] = proj;
        b.iter_mut().zip(&v).for_each(|(bb, qq)| *bb -= proj * qq);
        q.push(v);
    }
    debug_assert_eq!(q.len(), k);
    debug_assert!(m >= k);

    let mut x = qtb;
    for i in (0..k).rev() {
        for j in i + 1..k {
            x[i] -= r[(i, j)] * x[j];
        }
        x[i] /= r[(i, i)];
    }
    Ok(x)
}
