//! Dense complex matrix exponential by scaling and squaring with a Taylor core.
//!
//! Matrices here are the truncated generators of squeezing on twin-Fock or
//! even-Fock subspaces, at most a few hundred rows, so a plain row-major
//! dense representation is enough.

use num_complex::Complex64;

/// Default truncation tolerance for the Taylor core.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Tridiagonal matrix from its sub-, main and super-diagonals.
    pub fn tridiagonal(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64]) -> Self {
        let n = diag.len();
        assert!(n == 0 || (sub.len() == n - 1 && sup.len() == n - 1));
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = diag[i];
            if i + 1 < n {
                m[(i + 1, i)] = sub[i];
                m[(i, i + 1)] = sup[i];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// `exp(a)` with the scaled Taylor series truncated once a term's 1-norm drops below `tol`.
pub fn expm(a: &DenseMatrix, tol: f64) -> DenseMatrix {
    let n = a.dim();
    let norm = a.norm_one();
    // scale so that ||a / 2^s|| <= 1/2
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(0.5f64.powi(squarings as i32));

    let mut result = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for j in 1..=64 {
        term = term.matmul(&scaled).scale(1.0 / j as f64);
        result.add_assign(&term);
        if term.norm_one() <= tol * result.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}
