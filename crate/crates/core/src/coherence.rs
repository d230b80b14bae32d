//! Off-diagonal kernels, normalization and phase-steerable coherences of the
//! two-mode Janus state `|Ψ⟩ = χ|ξ⟩ + η e^{iδ}|ζ⟩`.
//!
//! Every normally ordered expectation follows the bilinear rule
//!
//! ```text
//! ⟨O⟩ = χ² ⟨ξ|O|ξ⟩ + η² ⟨ζ|O|ζ⟩ + 2χη Re[e^{−iδ} ⟨ζ|O|ξ⟩]
//! ```
//!
//! and is divided by the norm `N = ⟨Ψ|Ψ⟩` unless [`Normalization::Unnormalized`]
//! is requested.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{JanusError, Result};
use crate::fock::MomentKind;
use crate::params::{wrap_phase, JanusConfig};
use crate::polynomials::{squeezing_polynomial, K_MAX};

/// Below this norm the two branches are treated as cancelling.
pub const NORM_EPSILON: f64 = 1e-14;

/// Below this mean photon number normalized coherences are not formed.
pub const MEAN_PHOTON_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Single,
    Cross,
    Overlap,
}

/// Whether moments are divided by `⟨Ψ|Ψ⟩` before forming `g` ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    Normalized,
    Unnormalized,
}

/// Cross-state kernel `⟨ζ|O_k|ξ⟩ = |f| e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceKernel {
    pub k: usize,
    pub value: Complex64,
    pub magnitude: f64,
    /// In `(−π, π]`.
    pub phase: f64,
    pub kind: KernelKind,
}

impl InterferenceKernel {
    fn new(k: usize, value: Complex64, kind: KernelKind) -> Self {
        Self { k, value, magnitude: value.norm(), phase: principal_phase(value), kind }
    }

    /// `Re[e^{−iδ} f] = |f| cos(φ − δ)`.
    pub fn projected(&self, delta: f64) -> f64 {
        (Complex64::from_polar(1.0, -delta) * self.value).re
    }
}

/// `atan2` phase in `(−π, π]`; `−π` maps to `+π`.
pub fn principal_phase(v: Complex64) -> f64 {
    let p = v.im.atan2(v.re);
    if p <= -PI {
        PI
    } else {
        p
    }
}

/// `z = e^{i(θ−φ)} tanh r tanh s`.
pub fn overlap_z(cfg: &JanusConfig) -> Complex64 {
    cfg.z()
}

fn prefactor(cfg: &JanusConfig) -> f64 {
    1.0 / (cfg.xi.r().cosh() * cfg.zeta.r().cosh())
}

fn check_order(k: i64) -> Result<usize> {
    if k < 0 {
        return Err(JanusError::InvalidParameter(format!("kernel order k={k} must be >= 0")));
    }
    Ok(k as usize)
}

/// `⟨ζ|(a†)^k a^k|ξ⟩ = k!/(cosh r cosh s) · z^k / (1−z)^{k+1}`. At `k = 0` this is the overlap `⟨ζ|ξ⟩`.
pub fn kernel_single(cfg: &JanusConfig, k: i64) -> Result<InterferenceKernel> {
    let k = check_order(k)?;
    let z = cfg.z();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let value = z.powu(k as u32) / (Complex64::new(1.0, 0.0) - z).powu(k as u32 + 1) * (fact * prefactor(cfg));
    let kind = if k == 0 { KernelKind::Overlap } else { KernelKind::Single };
    Ok(InterferenceKernel::new(k, value, kind))
}

/// `⟨ζ|(a†b†)^k (ab)^k|ξ⟩ = P_k(z) / (1−z)^{2k+1} / (cosh r cosh s)`.
pub fn kernel_cross(cfg: &JanusConfig, k: i64) -> Result<InterferenceKernel> {
    let k = check_order(k)?;
    if k > K_MAX {
        return Err(JanusError::OrderOutOfRange { k: k as i64, max: K_MAX });
    }
    let poly = squeezing_polynomial(k as i64)?;
    let z = cfg.z();
    let value = poly.eval_complex(z) / (Complex64::new(1.0, 0.0) - z).powu(2 * k as u32 + 1) * prefactor(cfg);
    let kind = if k == 0 { KernelKind::Overlap } else { KernelKind::Cross };
    Ok(InterferenceKernel::new(k, value, kind))
}

/// `⟨ζ|O_k|ξ⟩` for either moment kind.
pub fn kernel(cfg: &JanusConfig, k: i64, kind: MomentKind) -> Result<InterferenceKernel> {
    match kind {
        MomentKind::Single => kernel_single(cfg, k),
        MomentKind::Cross => kernel_cross(cfg, k),
    }
}

/// Diagonal factorial moment of one branch: `k! n̄^k` or `P_k(x)/(1−x)^{2k}`.
fn diagonal_moment(x: f64, nbar: f64, k: usize, kind: MomentKind) -> Result<f64> {
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    Ok(match kind {
        MomentKind::Single => fact * nbar.powi(k as i32),
        MomentKind::Cross => {
            // (k!)² x^k inner(x) / (1−x)^{2k} = (k!)² n̄^k inner(x) / (1−x)^k
            let poly = squeezing_polynomial(k as i64)?;
            poly.scale() as f64 * nbar.powi(k as i32) * poly.eval_inner(x) / (1.0 - x).powi(k as i32)
        }
    })
}

/// Unnormalized `⟨Ψ|O_k|Ψ⟩` assembled from the bilinear rule.
pub fn raw_moment(cfg: &JanusConfig, k: i64, kind: MomentKind) -> Result<f64> {
    cfg.validate()?;
    let kk = check_order(k)?;
    let (chi, eta) = (cfg.chi, cfg.eta);
    let mut value = 0.0;
    if chi > 0.0 {
        value += chi * chi * diagonal_moment(cfg.xi.x(), cfg.xi.nbar(), kk, kind)?;
    }
    if eta > 0.0 {
        value += eta * eta * diagonal_moment(cfg.zeta.x(), cfg.zeta.nbar(), kk, kind)?;
    }
    if chi > 0.0 && eta > 0.0 {
        value += 2.0 * chi * eta * kernel(cfg, k, kind)?.projected(cfg.delta);
    }
    Ok(value)
}

/// `N = χ² + η² + 2χη Re[e^{−iδ} ⟨ζ|ξ⟩]`.
pub fn janus_norm(cfg: &JanusConfig) -> Result<f64> {
    let n = raw_moment(cfg, 0, MomentKind::Single)?;
    if n <= NORM_EPSILON {
        return Err(JanusError::DegenerateSuperposition { norm: n, threshold: NORM_EPSILON });
    }
    Ok(n)
}

fn divisor(cfg: &JanusConfig, norm: Normalization) -> Result<f64> {
    match norm {
        Normalization::Normalized => janus_norm(cfg),
        Normalization::Unnormalized => {
            cfg.validate()?;
            Ok(1.0)
        }
    }
}

/// Expectation of `O_k` in the state, normalized per `norm`.
pub fn moment_tmjs(cfg: &JanusConfig, k: i64, kind: MomentKind, norm: Normalization) -> Result<f64> {
    let d = divisor(cfg, norm)?;
    Ok(raw_moment(cfg, k, kind)? / d)
}

/// Mean photon number `⟨a†a⟩ = ⟨b†b⟩` of the normalized state.
pub fn mean_photon_tmjs(cfg: &JanusConfig) -> Result<f64> {
    moment_tmjs(cfg, 1, MomentKind::Single, Normalization::Normalized)
}

fn coherence(cfg: &JanusConfig, k: i64, kind: MomentKind, norm: Normalization) -> Result<f64> {
    if k < 1 {
        return Err(JanusError::InvalidParameter(format!("coherence order k={k} must be >= 1")));
    }
    let mean = moment_tmjs(cfg, 1, MomentKind::Single, norm)?;
    if mean < MEAN_PHOTON_EPSILON {
        return Err(JanusError::MeanPhotonUnderflow { mean, threshold: MEAN_PHOTON_EPSILON });
    }
    let power = match kind {
        MomentKind::Single => k,
        MomentKind::Cross => 2 * k,
    };
    Ok(moment_tmjs(cfg, k, kind, norm)? / mean.powi(power as i32))
}

/// `g_a^(k) = ⟨(a†)^k a^k⟩ / ⟨a†a⟩^k` on the normalized state.
pub fn g_single_tmjs(cfg: &JanusConfig, k: i64) -> Result<f64> {
    coherence(cfg, k, MomentKind::Single, Normalization::Normalized)
}

/// `g_ab^(k) = ⟨(a†b†)^k (ab)^k⟩ / ⟨a†a⟩^{2k}` on the normalized state.
pub fn g_cross_tmjs(cfg: &JanusConfig, k: i64) -> Result<f64> {
    coherence(cfg, k, MomentKind::Cross, Normalization::Normalized)
}

/// Either coherence under an explicit normalization convention.
pub fn g_tmjs_with(cfg: &JanusConfig, k: i64, kind: MomentKind, norm: Normalization) -> Result<f64> {
    coherence(cfg, k, kind, norm)
}

/// Moments and coherences of one configuration up to order `k_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TmjsMoments {
    pub norm: f64,
    pub mean_photon: f64,
    /// Index `k` for `k = 0..=k_max`.
    pub moment_single: Vec<f64>,
    pub moment_cross: Vec<f64>,
    /// Index `k`; entry 0 is unused and set to 1.
    pub g_single: Vec<f64>,
    pub g_cross: Vec<f64>,
}

pub fn tmjs_moments(cfg: &JanusConfig, k_max: usize) -> Result<TmjsMoments> {
    let norm = janus_norm(cfg)?;
    let mut moment_single = Vec::with_capacity(k_max + 1);
    let mut moment_cross = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max as i64 {
        moment_single.push(raw_moment(cfg, k, MomentKind::Single)? / norm);
        moment_cross.push(raw_moment(cfg, k, MomentKind::Cross)? / norm);
    }
    let mean_photon = moment_single.get(1).copied().unwrap_or(raw_moment(cfg, 1, MomentKind::Single)? / norm);
    if mean_photon < MEAN_PHOTON_EPSILON {
        return Err(JanusError::MeanPhotonUnderflow { mean: mean_photon, threshold: MEAN_PHOTON_EPSILON });
    }
    let g_single =
        (0..=k_max).map(|k| if k == 0 { 1.0 } else { moment_single[k] / mean_photon.powi(k as i32) }).collect();
    let g_cross =
        (0..=k_max).map(|k| if k == 0 { 1.0 } else { moment_cross[k] / mean_photon.powi(2 * k as i32) }).collect();
    Ok(TmjsMoments { norm, mean_photon, moment_single, moment_cross, g_single, g_cross })
}

/// Kernel phase and the Janus phases selecting constructive and destructive interference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringPhase {
    pub phi_k: f64,
    pub delta_constructive: f64,
    pub delta_destructive: f64,
}

pub fn steering_phase(cfg: &JanusConfig, k: i64, kind: MomentKind) -> Result<SteeringPhase> {
    let kern = kernel(cfg, k, kind)?;
    if kern.magnitude == 0.0 || cfg.z() == Complex64::new(0.0, 0.0) {
        return Err(JanusError::ZeroKernel);
    }
    Ok(SteeringPhase {
        phi_k: kern.phase,
        delta_constructive: wrap_phase(kern.phase),
        delta_destructive: wrap_phase(kern.phase + PI),
    })
}
