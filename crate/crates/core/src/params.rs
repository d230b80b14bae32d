//! Squeeze parameters and Janus superposition configurations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{JanusError, Result};

/// Complex squeeze parameter `r e^{iθ}` with `r ≥ 0` and the phase stored in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParam {
    r: f64,
    theta: f64,
}

impl SqueezeParam {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(JanusError::InvalidParameter(format!("squeeze magnitude r={r} must be finite and >= 0")));
        }
        if !theta.is_finite() {
            return Err(JanusError::InvalidParameter(format!("squeeze phase {theta} is not finite")));
        }
        Ok(Self { r, theta: wrap_phase(theta) })
    }

    pub fn vacuum() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `x = tanh² r`.
    pub fn x(&self) -> f64 {
        let t = self.r.tanh();
        t * t
    }

    /// Mean photon number per mode of the two-mode squeezed vacuum, `sinh² r`.
    pub fn nbar(&self) -> f64 {
        let s = self.r.sinh();
        s * s
    }

    /// `α = tanh r · e^{iθ}`, the twin-Fock ratio `c_{n+1}/c_n`.
    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.r.tanh(), self.theta)
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// Wraps a phase into `[0, 2π)`.
pub fn wrap_phase(phase: f64) -> f64 {
    let w = phase.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Superposition `χ|ξ⟩ + η e^{iδ}|ζ⟩` of two two-mode squeezed vacua.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JanusConfig {
    pub xi: SqueezeParam,
    pub zeta: SqueezeParam,
    pub chi: f64,
    pub eta: f64,
    pub delta: f64,
}

impl JanusConfig {
    pub fn new(xi: SqueezeParam, zeta: SqueezeParam, chi: f64, eta: f64, delta: f64) -> Result<Self> {
        let cfg = Self { xi, zeta, chi, eta, delta };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds a configuration from raw magnitudes and phases.
    pub fn from_parts(r: f64, theta: f64, s: f64, phi: f64, chi: f64, eta: f64, delta: f64) -> Result<Self> {
        Self::new(SqueezeParam::new(r, theta)?, SqueezeParam::new(s, phi)?, chi, eta, delta)
    }

    /// Single-branch configuration (η = 0): a plain two-mode squeezed vacuum.
    pub fn single(xi: SqueezeParam) -> Self {
        Self { xi, zeta: SqueezeParam::vacuum(), chi: 1.0, eta: 0.0, delta: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("chi", self.chi), ("eta", self.eta)] {
            if !w.is_finite() || w < 0.0 {
                return Err(JanusError::InvalidParameter(format!("{name}={w} must be finite and >= 0")));
            }
        }
        if !self.delta.is_finite() {
            return Err(JanusError::InvalidParameter(format!("delta={} is not finite", self.delta)));
        }
        if self.chi == 0.0 && self.eta == 0.0 {
            return Err(JanusError::InvalidConfig);
        }
        Ok(())
    }

    /// Relative squeezing phase `Δ = θ − φ`.
    pub fn relative_phase(&self) -> f64 {
        self.xi.theta() - self.zeta.theta()
    }

    /// Overlap parameter `z = e^{i(θ−φ)} tanh r tanh s`.
    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.xi.r().tanh() * self.zeta.r().tanh(), self.relative_phase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phase_is_wrapped() {
        let p = SqueezeParam::new(0.3, -PI / 2.0).unwrap();
        assert!((p.theta() - 1.5 * PI).abs() < 1e-15);
        let q = SqueezeParam::new(0.3, 5.0 * TAU + 0.25).unwrap();
        assert!((q.theta() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_r() {
        assert!(SqueezeParam::new(-0.1, 0.0).is_err());
        assert!(SqueezeParam::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn derived_quantities_agree() {
        let p = SqueezeParam::new(0.8, 0.0).unwrap();
        let x = p.x();
        assert!((p.nbar() - x / (1.0 - x)).abs() < 1e-14);
        assert!((0.0..1.0).contains(&x));
    }

    #[test]
    fn zero_weights_rejected() {
        let p = SqueezeParam::new(0.5, 0.0).unwrap();
        assert_eq!(JanusConfig::new(p, p, 0.0, 0.0, 0.0), Err(JanusError::InvalidConfig));
        assert!(JanusConfig::new(p, p, -1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn overlap_magnitude_below_one() {
        let cfg = JanusConfig::from_parts(3.0, 0.4, 2.5, 2.0, 1.0, 1.0, 0.0).unwrap();
        assert!(cfg.z().norm() < 1.0);
    }
}
