//! Closed-form statistics of a single two-mode squeezed vacuum.

use serde::{Deserialize, Serialize};

use crate::error::{JanusError, Result};
use crate::fock::MomentKind;
use crate::params::SqueezeParam;
use crate::polynomials::squeezing_polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TmssStat {
    pub k: usize,
    pub value: f64,
    pub kind: MomentKind,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Single-mode `g^(k)` of a two-mode squeezed vacuum: each marginal is thermal, so `k!`.
pub fn g_single_tmss(k: i64) -> Result<f64> {
    if k < 1 {
        return Err(JanusError::InvalidParameter(format!("coherence order k={k} must be >= 1")));
    }
    Ok(factorial(k as usize))
}

/// Cross-mode `g^(k)_{ab} = P_k(x) / x^{2k}`.
///
/// Evaluated as `(k!)² Σ_j C(k,j)² x^j / x^k` so small `r` does not underflow.
pub fn g_cross_tmss(k: i64, p: SqueezeParam) -> Result<f64> {
    if k < 1 {
        return Err(JanusError::InvalidParameter(format!("coherence order k={k} must be >= 1")));
    }
    if p.r() == 0.0 {
        return Err(JanusError::DivergentInput);
    }
    let poly = squeezing_polynomial(k)?;
    let x = p.x();
    Ok(poly.scale() as f64 * poly.eval_inner(x) / x.powi(poly.order() as i32))
}

/// `sinh² r`.
pub fn mean_photon_tmss(p: SqueezeParam) -> f64 {
    p.nbar()
}

pub fn tmss_stat(k: i64, p: SqueezeParam, kind: MomentKind) -> Result<TmssStat> {
    let value = match kind {
        MomentKind::Single => g_single_tmss(k)?,
        MomentKind::Cross => g_cross_tmss(k, p)?,
    };
    Ok(TmssStat { k: k as usize, value, kind })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(r: f64) -> SqueezeParam {
        SqueezeParam::new(r, 0.0).unwrap()
    }

    #[test]
    fn thermal_marginals() {
        assert_eq!(g_single_tmss(1).unwrap(), 1.0);
        assert_eq!(g_single_tmss(2).unwrap(), 2.0);
        assert_eq!(g_single_tmss(4).unwrap(), 24.0);
        assert!(g_single_tmss(0).is_err());
    }

    #[test]
    fn cross_coherence_values() {
        // 2 + 1/sinh²(1) = 2.72406166096631046...
        assert!((g_cross_tmss(1, sq(1.0)).unwrap() - 2.724_061_660_966_310_5).abs() < 1e-13);
        let p = sq(0.65);
        let x = p.x();
        let expected = 4.0 * (1.0 + 4.0 * x + x * x) / (x * x);
        assert!((g_cross_tmss(2, p).unwrap() / expected - 1.0).abs() < 1e-14);
        assert!((g_cross_tmss(1, sq(20.0)).unwrap() - 2.0).abs() < 1e-8);
        assert_eq!(g_cross_tmss(1, sq(0.0)), Err(JanusError::DivergentInput));
        assert!(g_cross_tmss(0, sq(0.5)).is_err());
    }

    #[test]
    fn cross_coherence_lower_bound() {
        for k in 1..=6 {
            let f: f64 = (1..=k).map(|i| i as f64).product();
            for i in 1..40 {
                let g = g_cross_tmss(k, sq(i as f64 * 0.05)).unwrap();
                assert!(g >= f * f);
            }
        }
    }

    #[test]
    fn mean_photon_values() {
        assert_eq!(mean_photon_tmss(sq(0.0)), 0.0);
        assert!((mean_photon_tmss(sq(0.8)) - 0.788_732_235_597_442_6).abs() < 1e-14);
        assert!((mean_photon_tmss(sq(1.0)) - 1.381_097_845_541_815_7).abs() < 1e-14);
    }

    #[test]
    fn small_r_slope() {
        let rs: Vec<f64> = (0..20).map(|i| 1e-3 * 10f64.powf(i as f64 / 19.0)).collect();
        for k in 1..=4 {
            let gs: Vec<f64> = rs.iter().map(|&r| g_cross_tmss(k, sq(r)).unwrap()).collect();
            let slope = log_log_slope(&rs, &gs);
            assert!((slope + 2.0 * k as f64).abs() < 0.05, "k={k} slope={slope}");
        }
    }
}
