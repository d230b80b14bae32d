//! Squeezing polynomials `P_k(x) = (k!)² x^k Σ_j C(k,j)² x^j` and the
//! unnormalized cross-mode moment `F_k(x) = P_k(x) / (1 − x)^{2k}`.
//!
//! Coefficients are exact integers. Three further routes to the same inner sum
//! are provided for cross-checking: the terminating hypergeometric series
//! `₂F₁(−k, −k; 1; x)`, its Euler transform, and the Legendre relation
//! `Σ_j C(k,j)² x^j = (1 − x)^k P_k^{Leg}((1 + x)/(1 − x))`.

use num_complex::Complex64;

use crate::error::{JanusError, Result};

/// Largest order with exact 128-bit coefficients.
pub const K_MAX: usize = 12;

/// Largest argument accepted by the Legendre route; beyond it `(1+x)/(1−x)` blows up.
pub const LEGENDRE_X_MAX: f64 = 0.999;

/// Exact representation of `P_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqueezingPolynomial {
    k: usize,
    /// `C(k,j)²` for `j = 0..=k`.
    inner: Vec<u128>,
    /// `(k!)²`.
    scale: u128,
}

impl SqueezingPolynomial {
    /// Builds a polynomial from explicit parts. Used to inject faults in verification runs.
    pub fn from_parts(k: usize, inner: Vec<u128>, scale: u128) -> Self {
        assert_eq!(inner.len(), k + 1, "inner polynomial must have k+1 coefficients");
        Self { k, inner, scale }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn inner(&self) -> &[u128] {
        &self.inner
    }

    pub fn scale(&self) -> u128 {
        self.scale
    }

    pub fn degree(&self) -> usize {
        2 * self.k
    }

    /// Full coefficient list of `P_k`, index = power of `x`, length `2k + 1`.
    pub fn coefficients(&self) -> Vec<u128> {
        let mut out = vec![0u128; 2 * self.k + 1];
        for (j, c) in self.inner.iter().enumerate() {
            out[self.k + j] = self.scale * c;
        }
        out
    }

    /// Inner polynomial `Σ_j C(k,j)² x^j` by Horner's rule.
    pub fn eval_inner(&self, x: f64) -> f64 {
        self.inner.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.scale as f64 * x.powi(self.k as i32) * self.eval_inner(x)
    }

    /// Complex Horner evaluation, used for the off-diagonal kernels at `z`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let inner = self.inner.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64);
        inner * z.powu(self.k as u32) * self.scale as f64
    }
}

/// Binomial coefficients `C(n, j)` for `j = 0..=n` from Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn check_order(k: i64) -> Result<usize> {
    if k < 0 || k as usize > K_MAX {
        return Err(JanusError::OrderOutOfRange { k, max: K_MAX });
    }
    Ok(k as usize)
}

/// Exact squeezing polynomial of order `k`, `0 ≤ k ≤ K_MAX`.
pub fn squeezing_polynomial(k: i64) -> Result<SqueezingPolynomial> {
    let k = check_order(k)?;
    let inner = binomial_row(k).into_iter().map(|c| c * c).collect();
    let f = factorial_u128(k);
    Ok(SqueezingPolynomial { k, inner, scale: f * f })
}

fn check_unit_interval(x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(JanusError::ArgumentOutOfRange(x));
    }
    Ok(())
}

/// `F_k(x) = P_k(x)/(1−x)^{2k}`, the normalized cross-mode factorial moment of a
/// two-mode squeezed vacuum with `x = tanh² r`.
pub fn eval_fk(k: i64, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    let poly = squeezing_polynomial(k)?;
    Ok(poly.eval(x) / (1.0 - x).powi(2 * poly.order() as i32))
}

/// Terminating series `₂F₁(−n, b; c; x) = Σ_{j=0}^{n} (−n)_j (b)_j / ((c)_j j!) x^j`.
///
/// `c` must not be a non-positive integer `≥ −n`.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, x: f64) -> f64 {
    let a = -(n as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..n {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * x;
        sum += term;
    }
    sum
}

/// `₂F₁(−k, −k; 1; x) = Σ_j C(k,j)² x^j`.
pub fn eval_2f1_terminating(k: usize, x: f64) -> f64 {
    hyp2f1_terminating(k, -(k as f64), 1.0, x)
}

/// Euler-transformed route `(1−x)^k ₂F₁(−k, k+1; 1; −x/(1−x))`; equal to
/// [`eval_2f1_terminating`] for `x < 1`.
pub fn eval_2f1_euler(k: usize, x: f64) -> f64 {
    let w = -x / (1.0 - x);
    (1.0 - x).powi(k as i32) * hyp2f1_terminating(k, k as f64 + 1.0, 1.0, w)
}

/// Binomial-weight form `Σ_j C(k,j) C(k+j,j) x^j (1−x)^{k−j}`, the third route
/// to the inner sum.
pub fn eval_binomial_weight(k: usize, x: f64) -> f64 {
    let row_k = binomial_row(k);
    (0..=k)
        .map(|j| {
            let ckj = row_k[j] as f64;
            let ckpj = binomial_row(k + j)[j] as f64;
            ckj * ckpj * x.powi(j as i32) * (1.0 - x).powi((k - j) as i32)
        })
        .sum()
}

/// Legendre polynomial by upward three-term recurrence.
pub fn legendre(n: usize, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, t);
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * t * cur - mf * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k(x)` evaluated through the Legendre relation
/// `(k!)² x^k (1−x)^k P_k^{Leg}((1+x)/(1−x))`.
pub fn squeezing_via_legendre(k: usize, x: f64) -> f64 {
    let f: f64 = (1..=k).map(|i| i as f64).product();
    f * f * (x * (1.0 - x)).powi(k as i32) * legendre(k, (1.0 + x) / (1.0 - x))
}

/// Relative deviation between the Legendre route and the exact coefficients.
pub fn legendre_cross_check(k: i64, x: f64) -> Result<f64> {
    let poly = squeezing_polynomial(k)?;
    if !(x > 0.0 && x <= LEGENDRE_X_MAX) {
        return Err(JanusError::ArgumentOutOfRange(x));
    }
    let direct = poly.eval(x);
    let via = squeezing_via_legendre(poly.order(), x);
    Ok(((via - direct) / direct).abs())
}
