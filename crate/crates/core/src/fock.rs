//! Truncated twin-Fock brute-force engine.
//!
//! States are amplitude lists over `|n,n⟩`. Every quantity here is obtained by
//! direct summation over the truncated basis, independently of the closed forms
//! in [`crate::polynomials`], [`crate::tmss`] and [`crate::coherence`].

use num_complex::Complex64;

use crate::error::{JanusError, Result};
use crate::expm::{self, DenseMatrix};
use crate::params::{JanusConfig, SqueezeParam};

/// Tail tolerance on `|c_N|²`.
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Hard cap on automatically chosen cutoffs.
pub const MAX_CUTOFF: usize = 512;

/// Which factorial moment is meant: `(a†)^k a^k` or `(a†b†)^k (ab)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    Single,
    Cross,
}

/// Truncated state `Σ_{n ≤ N} c_n |n,n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinFockVector {
    amplitudes: Vec<Complex64>,
    tail_tolerance: f64,
}

impl TwinFockVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(JanusError::InvalidParameter("a twin-Fock vector needs at least one amplitude".into()));
        }
        if amplitudes.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(JanusError::InvalidParameter("non-finite amplitude".into()));
        }
        Ok(Self { amplitudes, tail_tolerance: TAIL_TOLERANCE })
    }

    /// Basis vector `|n,n⟩` in a space with the given cutoff.
    pub fn basis(n: usize, cutoff: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); cutoff.max(n) + 1];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Self { amplitudes, tail_tolerance: TAIL_TOLERANCE }
    }

    pub fn with_tail_tolerance(mut self, tol: f64) -> Self {
        self.tail_tolerance = tol;
        self
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|c_N|²`.
    pub fn tail_weight(&self) -> f64 {
        self.amplitudes[self.cutoff()].norm_sqr()
    }

    pub fn is_adequate(&self) -> bool {
        self.tail_weight() <= self.tail_tolerance
    }

    /// Errors with [`JanusError::CutoffInadequate`] if the last amplitude carries too much weight.
    pub fn check_adequate(&self) -> Result<()> {
        if self.is_adequate() {
            Ok(())
        } else {
            Err(JanusError::CutoffInadequate {
                cutoff: self.cutoff(),
                tail: self.tail_weight(),
                tolerance: self.tail_tolerance,
            })
        }
    }

    /// ℓ² distance, zero-padding the shorter vector.
    pub fn distance(&self, other: &Self) -> f64 {
        let n = self.amplitudes.len().max(other.amplitudes.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|i| {
                let a = self.amplitudes.get(i).unwrap_or(&zero);
                let b = other.amplitudes.get(i).unwrap_or(&zero);
                (a - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Smallest cutoff with `x^N < TAIL_TOLERANCE`, at least 1, capped at [`MAX_CUTOFF`].
pub fn adaptive_cutoff(x: f64) -> usize {
    if x <= 0.0 {
        return 1;
    }
    let n = (TAIL_TOLERANCE.ln() / x.ln()).ceil();
    (n.max(1.0) as usize).min(MAX_CUTOFF)
}

/// Cutoff for sums weighted by `n^power`: past the peak of `n^power x^n`, stop
/// once the summand has dropped below `TAIL_TOLERANCE` times the running sum.
pub fn moment_cutoff(x: f64, power: u32) -> usize {
    if x <= 0.0 {
        return power as usize + 1;
    }
    let lnx = x.ln();
    let peak = power as f64 / -lnx;
    let term = |n: usize| (power as f64 * (n.max(1) as f64).ln() + n as f64 * lnx).exp();
    let mut sum = 0.0;
    for n in 0..=MAX_CUTOFF {
        let t = if n == 0 && power > 0 { 0.0 } else { term(n) };
        sum += t;
        if n as f64 > peak && n > power as usize && t < TAIL_TOLERANCE * sum && x.powi(n as i32) < TAIL_TOLERANCE {
            return n;
        }
    }
    MAX_CUTOFF
}

/// Two-mode squeezed vacuum `c_n = (tanh r e^{iθ})^n / cosh r`, `n ≤ cutoff`.
///
/// Check [`TwinFockVector::is_adequate`] for the cutoff flag.
pub fn build_tmss_vector(p: SqueezeParam, cutoff: usize) -> TwinFockVector {
    let alpha = p.alpha();
    let mut amplitudes = Vec::with_capacity(cutoff + 1);
    let mut c = Complex64::new(1.0 / p.r().cosh(), 0.0);
    for _ in 0..=cutoff {
        amplitudes.push(c);
        c *= alpha;
    }
    TwinFockVector { amplitudes, tail_tolerance: TAIL_TOLERANCE }
}

/// Unnormalized superposition `χ c_n(ξ) + η e^{iδ} c_n(ζ)`.
pub fn build_tmjs_vector(cfg: &JanusConfig, cutoff: usize) -> Result<TwinFockVector> {
    cfg.validate()?;
    let a = build_tmss_vector(cfg.xi, cutoff);
    let b = build_tmss_vector(cfg.zeta, cutoff);
    let w = Complex64::from_polar(cfg.eta, cfg.delta);
    let amplitudes = a.amplitudes.iter().zip(&b.amplitudes).map(|(ca, cb)| ca * cfg.chi + cb * w).collect();
    Ok(TwinFockVector { amplitudes, tail_tolerance: TAIL_TOLERANCE })
}

/// `Σ conj(u_n) v_n`, padding the shorter vector with zeros.
pub fn inner_product(u: &TwinFockVector, v: &TwinFockVector) -> Complex64 {
    u.amplitudes.iter().zip(&v.amplitudes).map(|(a, b)| a.conj() * b).sum()
}

/// Falling factorial `n (n−1) … (n−k+1)`, zero for `n < k`.
pub fn falling_factorial(n: usize, k: usize) -> f64 {
    if n < k {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64;
    }
    acc
}

fn check_k(k: i64) -> Result<usize> {
    if k < 0 {
        return Err(JanusError::InvalidParameter(format!("moment order k={k} must be >= 0")));
    }
    Ok(k as usize)
}

fn weight(kind: MomentKind, n: usize, k: usize) -> f64 {
    let ff = falling_factorial(n, k);
    match kind {
        MomentKind::Single => ff,
        MomentKind::Cross => ff * ff,
    }
}

/// `⟨u|O_k|v⟩` for `O_k = (a†)^k a^k` or `(a†b†)^k (ab)^k`, by direct summation.
pub fn cross_state_moment(u: &TwinFockVector, v: &TwinFockVector, k: i64, kind: MomentKind) -> Result<Complex64> {
    let k = check_k(k)?;
    Ok(u.amplitudes
        .iter()
        .zip(&v.amplitudes)
        .enumerate()
        .skip(k)
        .map(|(n, (a, b))| a.conj() * b * weight(kind, n, k))
        .sum())
}

fn normalized_moment(v: &TwinFockVector, k: i64, kind: MomentKind) -> Result<f64> {
    let k = check_k(k)?;
    let norm = v.norm_sqr();
    if norm <= 0.0 {
        return Err(JanusError::DegenerateSuperposition { norm, threshold: 0.0 });
    }
    let num: f64 = v.amplitudes.iter().enumerate().skip(k).map(|(n, c)| c.norm_sqr() * weight(kind, n, k)).sum();
    Ok(num / norm)
}

/// `⟨(a†)^k a^k⟩ = Σ n^{k̲} |c_n|² / Σ |c_n|²`.
pub fn factorial_moment_single(v: &TwinFockVector, k: i64) -> Result<f64> {
    normalized_moment(v, k, MomentKind::Single)
}

/// `⟨(a†b†)^k (ab)^k⟩ = Σ [n^{k̲}]² |c_n|² / Σ |c_n|²`.
pub fn factorial_moment_cross(v: &TwinFockVector, k: i64) -> Result<f64> {
    normalized_moment(v, k, MomentKind::Cross)
}

/// Truncated generator `ξK₊ − ξ*K₋` on `|0,0⟩ … |N,N⟩`, with
/// `K₊|n,n⟩ = (n+1)|n+1,n+1⟩` and `K₋|n,n⟩ = n|n−1,n−1⟩`.
pub fn twin_generator(p: SqueezeParam, cutoff: usize) -> DenseMatrix {
    let xi = p.as_complex();
    let sub: Vec<Complex64> = (0..cutoff).map(|n| xi * (n + 1) as f64).collect();
    let sup: Vec<Complex64> = (0..cutoff).map(|n| -xi.conj() * (n + 1) as f64).collect();
    DenseMatrix::tridiagonal(&sub, &vec![Complex64::new(0.0, 0.0); cutoff + 1], &sup)
}

/// `exp(ξK₊ − ξ*K₋)|0,0⟩` by numerical matrix exponentiation.
///
/// The exponential is taken on a working space of `working_cutoff ≥ cutoff`
/// levels and the result truncated to `cutoff`; reflections off the
/// truncation edge then stay below the tail tolerance.
pub fn su11_matexp_apply_with(p: SqueezeParam, cutoff: usize, working_cutoff: usize, tol: f64) -> TwinFockVector {
    let work = working_cutoff.max(cutoff);
    let e = expm::expm(&twin_generator(p, work), tol);
    let mut amplitudes = e.column(0);
    amplitudes.truncate(cutoff + 1);
    TwinFockVector { amplitudes, tail_tolerance: TAIL_TOLERANCE }
}

/// [`su11_matexp_apply_with`] with a working space large enough for `p` and the default tolerance.
pub fn su11_matexp_apply(p: SqueezeParam, cutoff: usize) -> TwinFockVector {
    let work = cutoff.max(adaptive_cutoff(p.x()) + 16);
    su11_matexp_apply_with(p, cutoff, work, expm::DEFAULT_TOLERANCE)
}
