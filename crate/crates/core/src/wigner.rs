//! Single-mode Janus analogue `χ|ξ⟩₁ + η e^{iδ}|ζ⟩₁` in phase space.
//!
//! Quadratures are `x = (a + a†)/√2`, `p = (a − a†)/(i√2)`, and the Wigner
//! function is normalized to `∫∫ W dx dp = 1`, so a pure state satisfies
//! `|W| ≤ 1/π`. The Wigner function is built from Fock coefficients with the
//! Laguerre form of the displacement matrix elements,
//!
//! ```text
//! W(x,p) = (1/π) Σ_{m,n} c_m c_n* (−1)^n D_{mn}(β),   β = √2 (x − ip),
//! D_{mn}(β) = √(n!/m!) β^{m−n} e^{−|β|²/2} L_n^{(m−n)}(|β|²)   (m ≥ n),
//! ```
//!
//! with the normalized Laguerre functions generated by a bounded recurrence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::coherence::NORM_EPSILON;
use crate::error::{JanusError, Result};
use crate::exec::{map_indices, Execution};
use crate::expm::{self, DenseMatrix};
use crate::fock::{adaptive_cutoff, MAX_CUTOFF, TAIL_TOLERANCE};
use crate::params::{JanusConfig, SqueezeParam};

pub const DEFAULT_EXTENT: f64 = 4.5;
pub const DEFAULT_POINTS: usize = 201;

/// Tail tolerance on `|c_N|²` for phase-space work. Wigner values inherit the
/// truncation error at amplitude level, `O(|c_N|)`, hence the tighter bound.
pub const WIGNER_TAIL_TOLERANCE: f64 = 1e-20;

/// Superposition of two single-mode squeezed vacua.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleModeJanus {
    pub xi: SqueezeParam,
    pub zeta: SqueezeParam,
    pub chi: f64,
    pub eta: f64,
    pub delta: f64,
}

impl SingleModeJanus {
    pub fn new(xi: SqueezeParam, zeta: SqueezeParam, chi: f64, eta: f64, delta: f64) -> Result<Self> {
        // same weight/phase rules as the two-mode configuration
        JanusConfig::new(xi, zeta, chi, eta, delta)?;
        Ok(Self { xi, zeta, chi, eta, delta })
    }

    pub fn from_parts(r: f64, theta: f64, s: f64, phi: f64, chi: f64, eta: f64, delta: f64) -> Result<Self> {
        Self::new(SqueezeParam::new(r, theta)?, SqueezeParam::new(s, phi)?, chi, eta, delta)
    }

    pub fn single(xi: SqueezeParam) -> Self {
        Self { xi, zeta: SqueezeParam::vacuum(), chi: 1.0, eta: 0.0, delta: 0.0 }
    }

    /// Even cutoff at which both branches have decayed below [`WIGNER_TAIL_TOLERANCE`].
    pub fn default_cutoff(&self) -> usize {
        let x = self.xi.x().max(self.zeta.x());
        if x <= 0.0 {
            return 2;
        }
        let m = (WIGNER_TAIL_TOLERANCE.ln() / x.ln()).ceil().max(1.0) as usize;
        2 * m.min(MAX_CUTOFF)
    }
}

/// Squeezed-vacuum amplitudes `d_{2m} = (e^{iθ} tanh r)^m √((2m)!) / (2^m m! √cosh r)`
/// on `n = 0..=cutoff`, odd entries zero.
///
/// The sign matches `exp[(ξ a†² − ξ* a²)/2]|0⟩`; see [`single_mode_matexp_apply`].
pub fn squeezed_vacuum_coefficients(p: SqueezeParam, cutoff: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    let ratio = p.alpha();
    let mut amp = Complex64::new(1.0 / p.r().cosh().sqrt(), 0.0);
    for m in 0..=cutoff / 2 {
        if m > 0 {
            let mf = m as f64;
            amp *= ratio * ((2.0 * mf) * (2.0 * mf - 1.0)).sqrt() / (2.0 * mf);
        }
        out[2 * m] = amp;
    }
    out
}

/// `c_n = χ d_n(ξ) + η e^{iδ} d_n(ζ)`, unnormalized.
pub fn janus_fock_coefficients(s: &SingleModeJanus, cutoff: usize) -> Result<Vec<Complex64>> {
    if !cutoff.is_multiple_of(2) {
        return Err(JanusError::InvalidParameter(format!("single-mode cutoff {cutoff} must be even")));
    }
    let a = squeezed_vacuum_coefficients(s.xi, cutoff);
    let b = squeezed_vacuum_coefficients(s.zeta, cutoff);
    let w = Complex64::from_polar(s.eta, s.delta);
    let c: Vec<Complex64> = a.iter().zip(&b).map(|(ca, cb)| ca * s.chi + cb * w).collect();
    let tail = c[cutoff].norm_sqr();
    if tail > TAIL_TOLERANCE {
        return Err(JanusError::CutoffInadequate { cutoff, tail, tolerance: TAIL_TOLERANCE });
    }
    Ok(c)
}

/// `exp[(ξ a†² − ξ* a²)/2]|0⟩` on the even Fock levels up to `cutoff`, by matrix exponentiation
/// on a padded working space.
pub fn single_mode_matexp_apply(p: SqueezeParam, cutoff: usize) -> Vec<Complex64> {
    let levels = (cutoff / 2).max(adaptive_cutoff(p.x()) + 16);
    let xi = p.as_complex();
    let coupling = |m: usize| {
        let n = 2.0 * m as f64;
        ((n + 1.0) * (n + 2.0)).sqrt() / 2.0
    };
    let sub: Vec<Complex64> = (0..levels).map(|m| xi * coupling(m)).collect();
    let sup: Vec<Complex64> = (0..levels).map(|m| -xi.conj() * coupling(m)).collect();
    let g = DenseMatrix::tridiagonal(&sub, &vec![Complex64::new(0.0, 0.0); levels + 1], &sup);
    let col = expm::expm(&g, expm::DEFAULT_TOLERANCE).column(0);
    let mut out = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    for (m, v) in col.into_iter().enumerate() {
        if 2 * m <= cutoff {
            out[2 * m] = v;
        }
    }
    out
}

/// Recurrence weights for the displacement-type Laguerre functions
/// `f_n^{(d)}(t) = √(n!/(n+d)!) t^{d/2} e^{−t/2} L_n^{(d)}(t)`, all bounded by 1:
///
/// `f_{n+1} = [(2n+1+d−t) f_n − √(n(n+d)) f_{n−1}] / √((n+1)(n+1+d))`.
#[derive(Debug, Clone)]
struct LaguerreTable {
    /// Per `d`: `(2n+1+d, √(n(n+d)), 1/√((n+1)(n+1+d)))` for `n = 0..levels−d`.
    weights: Vec<Vec<(f64, f64, f64)>>,
    half_ln_fact: Vec<f64>,
}

impl LaguerreTable {
    fn new(levels: usize) -> Self {
        let weights = (0..levels)
            .map(|d| {
                let df = d as f64;
                (0..levels - d)
                    .map(|n| {
                        let nf = n as f64;
                        (2.0 * nf + 1.0 + df, (nf * (nf + df)).sqrt(), 1.0 / ((nf + 1.0) * (nf + 1.0 + df)).sqrt())
                    })
                    .collect()
            })
            .collect();
        let half_ln_fact = ln_factorials(levels).into_iter().map(|v| 0.5 * v).collect();
        Self { weights, half_ln_fact }
    }

    /// Fills `out` with `f_n^{(d)}(t)` for `n = 0..len`.
    fn fill(&self, d: usize, t: f64, ln_t: f64, len: usize, out: &mut Vec<f64>) {
        out.clear();
        if len == 0 {
            return;
        }
        let f0 = if t == 0.0 {
            if d == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            (0.5 * d as f64 * ln_t - 0.5 * t - self.half_ln_fact[d]).exp()
        };
        out.push(f0);
        let mut prev = 0.0;
        let mut cur = f0;
        for &(a, b, inv) in &self.weights[d][..len - 1] {
            let next = ((a - t) * cur - b * prev) * inv;
            out.push(next);
            prev = cur;
            cur = next;
        }
    }
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    v.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        v.push(acc);
    }
    v
}

/// Wigner evaluator for a fixed coefficient vector.
#[derive(Debug, Clone)]
pub struct WignerEvaluator {
    coeffs: Vec<Complex64>,
    norm: f64,
    table: LaguerreTable,
    /// Only even-`d` coherences contribute when the state has definite parity.
    even_only: bool,
}

impl WignerEvaluator {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if norm.is_nan() || norm < NORM_EPSILON || !norm.is_finite() {
            return Err(JanusError::DegenerateSuperposition { norm, threshold: NORM_EPSILON });
        }
        let even_only = coeffs.iter().skip(1).step_by(2).all(|c| c.norm() == 0.0);
        let table = LaguerreTable::new(coeffs.len());
        Ok(Self { coeffs, norm, table, even_only })
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let n_levels = self.coeffs.len();
        let beta = Complex64::new(x, -p) * std::f64::consts::SQRT_2;
        let t = beta.norm_sqr();
        let ln_t = t.ln();
        let rot = if t > 0.0 { beta / beta.norm() } else { Complex64::new(1.0, 0.0) };
        let step = if self.even_only { 2 } else { 1 };
        let mut buf = Vec::with_capacity(n_levels);
        let mut total = 0.0;
        let mut rot_d = Complex64::new(1.0, 0.0);
        let rot_step = rot.powu(step as u32);
        for d in (0..n_levels).step_by(step) {
            self.table.fill(d, t, ln_t, n_levels - d, &mut buf);
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, f) in buf.iter().enumerate().step_by(step) {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                acc += self.coeffs[n + d] * self.coeffs[n].conj() * (sign * f);
            }
            if d == 0 {
                total += acc.re;
            } else {
                total += 2.0 * (acc * rot_d).re;
            }
            rot_d *= rot_step;
        }
        total / (PI * self.norm)
    }

    /// Definite parity implies `W(−x,−p) = W(x,p)`.
    pub fn has_definite_parity(&self) -> bool {
        self.even_only
    }

    /// `Σ (−1)^n |c_n|² / Σ |c_n|²`.
    pub fn parity(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(n, c)| if n % 2 == 0 { c.norm_sqr() } else { -c.norm_sqr() }).sum::<f64>()
            / self.norm
    }
}

/// Wigner function sampled on a square grid centred on the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    pub x_axis: Vec<f64>,
    pub p_axis: Vec<f64>,
    /// Row-major: `values[i * p_axis.len() + j] = W(x_i, p_j)`.
    pub values: Vec<f64>,
    pub min_value: f64,
    pub negative_area: f64,
}

impl WignerGrid {
    pub fn cell_area(&self) -> f64 {
        let dx = self.x_axis[1] - self.x_axis[0];
        let dp = self.p_axis[1] - self.p_axis[0];
        dx * dp
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.p_axis.len() + j]
    }

    /// Riemann sum `Σ W Δx Δp`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_area()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn axis(extent: f64, points: usize) -> Vec<f64> {
    let h = 2.0 * extent / (points - 1) as f64;
    let mid = (points - 1) / 2;
    (0..points).map(|i| (i as f64 - mid as f64) * h).collect()
}

pub fn wigner_grid(s: &SingleModeJanus, extent: f64, points: usize) -> Result<WignerGrid> {
    wigner_grid_with(s, extent, points, Execution::default())
}

pub fn wigner_grid_with(s: &SingleModeJanus, extent: f64, points: usize, exec: Execution) -> Result<WignerGrid> {
    if points < 3 || points.is_multiple_of(2) {
        return Err(JanusError::InvalidParameter(format!("grid points {points} must be odd and >= 3")));
    }
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(JanusError::InvalidParameter(format!("grid extent {extent} must be positive")));
    }
    let coeffs = janus_fock_coefficients(s, s.default_cutoff())?;
    let eval = WignerEvaluator::new(coeffs)?;
    let xs = axis(extent, points);
    let ps = xs.clone();
    // with definite parity only rows up to the origin are evaluated; the rest are point reflections
    let computed = if eval.has_definite_parity() { points / 2 + 1 } else { points };
    let mut rows: Vec<Vec<f64>> = map_indices(computed, exec, |i| ps.iter().map(|&p| eval.eval(xs[i], p)).collect());
    for i in computed..points {
        let mut mirrored = rows[points - 1 - i].clone();
        mirrored.reverse();
        rows.push(mirrored);
    }
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    let h = xs[1] - xs[0];
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let negative_area = values.iter().filter(|v| **v < 0.0).map(|v| -v).sum::<f64>() * h * h;
    Ok(WignerGrid { x_axis: xs, p_axis: ps, values, min_value, negative_area })
}

/// `π W(0,0) − ⟨(−1)^n⟩`; zero for any state up to rounding.
pub fn parity_check(s: &SingleModeJanus) -> Result<f64> {
    let eval = WignerEvaluator::new(janus_fock_coefficients(s, s.default_cutoff())?)?;
    Ok(PI * eval.eval(0.0, 0.0) - eval.parity())
}
