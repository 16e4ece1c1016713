//! Dense symmetric linear algebra on packed storage.
//!
//! Symmetric matrices are stored as the upper triangle in row-major
//! order, which halves memory and makes symmetry structural. The only
//! factorization offered is an unpivoted Cholesky: positive
//! definiteness is a *signal* for the optimizer (inflation retry, RDM
//! failure), not a case to solve through, so indefinite matrices report
//! `success == false` instead of being repaired.

use thiserror::Error;

/// Errors from the linear-algebra layer.
#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    /// The input matrix (or vector) contains NaN or infinite entries.
    #[error("input contains non-finite entries")]
    NonFiniteInput,
    /// The matrix failed the positive-definiteness test.
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    /// A solve was requested on a factorization whose `success` flag is false.
    #[error("factorization failed; solve is unavailable")]
    FailedFactorization,
    /// Vector length does not match the matrix dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Symmetric `m x m` matrix stored as the packed upper triangle.
///
/// Element `(i, j)` with `i <= j` lives at index
/// `i*m - i*(i-1)/2 + (j - i)`; accessing `(j, i)` reads the same slot,
/// so `get(i, j) == get(j, i)` always holds.
#[derive(Debug, Clone, PartialEq)]
pub struct PackedSymmetric {
    dim: usize,
    data: Vec<f64>,
}

impl PackedSymmetric {
    /// Number of stored entries for dimension `dim`.
    pub fn packed_len(dim: usize) -> usize {
        dim * (dim + 1) / 2
    }

    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self {
            dim,
            data: vec![0.0; Self::packed_len(dim)],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Build from an upper-triangle vector laid out row-major.
    ///
    /// Panics if `data.len() != dim*(dim+1)/2`.
    pub fn from_upper(dim: usize, data: Vec<f64>) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        assert_eq!(
            data.len(),
            Self::packed_len(dim),
            "packed data length must be dim*(dim+1)/2"
        );
        Self { dim, data }
    }

    /// Build by evaluating `f(i, j)` on the upper triangle (`i <= j`).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(j < self.dim);
        i * self.dim - i * (i + 1) / 2 + j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let idx = self.index(i, j);
        self.data[idx] = value;
    }

    /// The packed upper triangle, row-major.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_diag(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).fold(f64::MIN, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Matrix-vector product `A * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match dimension");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Multiply every entry by `s`.
    pub fn scaled(mut self, s: f64) -> Self {
        for v in &mut self.data {
            *v *= s;
        }
        self
    }
}

/// Cholesky factorization `A = L * L^T` with `L` stored as a packed
/// lower triangle. `success == false` flags an input that failed the
/// positive-definiteness test (some pivot not exceeding
/// `dim * machine_epsilon * max_diagonal`).
#[derive(Debug, Clone)]
pub struct Factorization {
    dim: usize,
    lower: Vec<f64>,
    success: bool,
}

impl Factorization {
    #[inline]
    fn lidx(i: usize, j: usize) -> usize {
        // lower triangle, row-major: (i, j) with j <= i
        debug_assert!(j <= i);
        i * (i + 1) / 2 + j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the input was numerically positive definite.
    pub fn success(&self) -> bool {
        self.success
    }

    /// Entry `L[i][j]` of the lower-triangular factor (`j <= i`).
    pub fn lower(&self, i: usize, j: usize) -> f64 {
        self.lower[Self::lidx(i, j)]
    }

    /// Solve `A x = rhs` by forward and backward substitution.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
        if !self.success {
            return Err(LinalgError::FailedFactorization);
        }
        if rhs.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                got: rhs.len(),
            });
        }
        let mut x = self.forward_sub(rhs);
        // L^T x = y, backward
        for i in (0..self.dim).rev() {
            let mut s = x[i];
            for k in i + 1..self.dim {
                s -= self.lower[Self::lidx(k, i)] * x[k];
            }
            x[i] = s / self.lower[Self::lidx(i, i)];
        }
        Ok(x)
    }

    fn forward_sub(&self, rhs: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for i in 0..self.dim {
            let mut s = rhs[i];
            for k in 0..i {
                s -= self.lower[Self::lidx(i, k)] * y[k];
            }
            y[i] = s / self.lower[Self::lidx(i, i)];
        }
        y
    }

    /// Quadratic form `g^T A^-1 g`.
    ///
    /// Computed as `||L^-1 g||^2`, which is non-negative whenever the
    /// factorization succeeded.
    pub fn quadratic_form(&self, g: &[f64]) -> Result<f64, LinalgError> {
        if !self.success {
            return Err(LinalgError::FailedFactorization);
        }
        if g.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                got: g.len(),
            });
        }
        let y = self.forward_sub(g);
        Ok(y.iter().map(|v| v * v).sum())
    }

    /// Reconstruct `L * L^T` (test aid for the factorization contract).
    pub fn reconstruct(&self) -> PackedSymmetric {
        PackedSymmetric::from_fn(self.dim, |i, j| {
            (0..=i.min(j))
                .map(|k| self.lower[Self::lidx(i, k)] * self.lower[Self::lidx(j, k)])
                .sum()
        })
    }
}

/// Factor a symmetric matrix, testing positive definiteness.
///
/// A pivot must exceed `dim * machine_epsilon * max(diagonal)` to be
/// accepted, which rejects numerically singular matrices at the scale
/// of the input. Non-finite entries are an error, distinct from an
/// indefinite matrix which reports `success == false`.
pub fn cholesky(a: &PackedSymmetric) -> Result<Factorization, LinalgError> {
    if !a.is_finite() {
        return Err(LinalgError::NonFiniteInput);
    }
    let n = a.dim();
    let tol = n as f64 * f64::EPSILON * a.max_diag().max(0.0);
    let mut lower = vec![0.0; PackedSymmetric::packed_len(n)];
    for j in 0..n {
        let mut pivot = a.get(j, j);
        for k in 0..j {
            let l = lower[Factorization::lidx(j, k)];
            pivot -= l * l;
        }
        if !(pivot > tol) {
            return Ok(Factorization {
                dim: n,
                lower,
                success: false,
            });
        }
        let ljj = pivot.sqrt();
        lower[Factorization::lidx(j, j)] = ljj;
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= lower[Factorization::lidx(i, k)] * lower[Factorization::lidx(j, k)];
            }
            lower[Factorization::lidx(i, j)] = s / ljj;
        }
    }
    Ok(Factorization {
        dim: n,
        lower,
        success: true,
    })
}

/// Invert a symmetric positive definite matrix.
///
/// Fails with [`LinalgError::NotPositiveDefinite`] exactly when
/// [`cholesky`] reports `success == false`; the optimizer maps that
/// failure to the RDM singular rule.
pub fn invert(a: &PackedSymmetric) -> Result<PackedSymmetric, LinalgError> {
    let f = cholesky(a)?;
    if !f.success() {
        return Err(LinalgError::NotPositiveDefinite);
    }
    let n = a.dim();
    let mut inv = PackedSymmetric::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = f.solve(&e)?;
        e[j] = 0.0;
        for i in 0..=j {
            inv.set(i, j, col[i]);
        }
    }
    Ok(inv)
}
