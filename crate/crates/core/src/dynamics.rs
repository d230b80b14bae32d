//! SU(1,1) dynamics behind the two-mode squeezer: Wei–Norman disentangling,
//! squeeze–dwell–unsqueeze Bogoliubov sequences, per-Schmidt-mode Janus
//! parameters and the Schwarzian energy flux of a moving mirror.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{JanusError, Result};
use crate::expm;
use crate::fock::twin_generator;
use crate::params::{JanusConfig, SqueezeParam};

// ---------------------------------------------------------------------------
// Wei–Norman

/// Disentangling functions `(A, B, C)` at `λ`:
/// `A = e^{iθ} tanh(rλ)`, `B = −2 ln cosh(rλ)`, `C = −e^{−iθ} tanh(rλ)`.
pub fn wei_norman_solution(p: SqueezeParam, lambda: f64) -> (Complex64, f64, Complex64) {
    let t = (p.r() * lambda).tanh();
    let a = Complex64::from_polar(t, p.theta());
    let b = -2.0 * (p.r() * lambda).cosh().ln();
    let c = -Complex64::from_polar(t, -p.theta());
    (a, b, c)
}

/// Largest residual of
///
/// ```text
/// dA/dλ − ξ + A² ξ*,   dB/dλ + 2A ξ*,   dC/dλ + ξ* e^B
/// ```
///
/// over the interior of `lambda_grid`, with derivatives by centered differences.
pub fn wei_norman_residuals(p: SqueezeParam, lambda_grid: &[f64]) -> Result<f64> {
    if lambda_grid.len() < 3 {
        return Err(JanusError::InvalidParameter("Wei-Norman grid needs at least 3 points".into()));
    }
    if lambda_grid.iter().any(|l| !(0.0..=1.0).contains(l)) || lambda_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(JanusError::InvalidParameter("Wei-Norman grid must be increasing within [0, 1]".into()));
    }
    let xi = p.as_complex();
    let vals: Vec<_> = lambda_grid.iter().map(|&l| wei_norman_solution(p, l)).collect();
    let mut worst = 0.0f64;
    for i in 1..lambda_grid.len() - 1 {
        let h = lambda_grid[i + 1] - lambda_grid[i - 1];
        let (a, b, _) = vals[i];
        let da = (vals[i + 1].0 - vals[i - 1].0) / h;
        let db = (vals[i + 1].1 - vals[i - 1].1) / h;
        let dc = (vals[i + 1].2 - vals[i - 1].2) / h;
        let ra = (da - xi + a * a * xi.conj()).norm();
        let rb = (db + 2.0 * a * xi.conj()).norm();
        let rc = (dc + xi.conj() * b.exp()).norm();
        worst = worst.max(ra).max(rb).max(rc);
    }
    Ok(worst)
}

pub fn uniform_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

/// Residuals on a coarse grid and on one with half the spacing, and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
}

/// Compares `wei_norman_residuals` on `fine_points` against `(fine_points + 1)/2` points.
pub fn wei_norman_refinement(p: SqueezeParam, fine_points: usize) -> Result<Refinement> {
    if fine_points.is_multiple_of(2) || fine_points < 5 {
        return Err(JanusError::InvalidParameter(format!("fine grid size {fine_points} must be odd and >= 5")));
    }
    let coarse = wei_norman_residuals(p, &uniform_grid(fine_points.div_ceil(2)))?;
    let fine = wei_norman_residuals(p, &uniform_grid(fine_points))?;
    Ok(Refinement { coarse, fine, ratio: coarse / fine })
}

/// Largest entrywise gap on the leading `block` twin levels between `exp(ξK₊ − ξ*K₋)` and the
/// normal-ordered product `e^{A K₊} e^{B K₀} e^{C K₋}` at `λ = 1`.
///
/// The product is exact on any truncation (its entries only involve lower levels), so it is
/// compared against an exponential taken on a larger working space.
pub fn disentangling_defect(p: SqueezeParam, block: usize) -> f64 {
    let work = block + crate::fock::adaptive_cutoff(p.x()) + 32;
    let full = expm::expm(&twin_generator(p, work), expm::DEFAULT_TOLERANCE);
    let (a, b, c) = wei_norman_solution(p, 1.0);
    let binom = |n: usize, k: usize| -> f64 { (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    let mut worst = 0.0f64;
    for m in 0..=block {
        for n in 0..=block {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..=m.min(n) {
                s += a.powu((m - j) as u32)
                    * binom(m, j)
                    * (b * (j as f64 + 0.5)).exp()
                    * binom(n, j)
                    * c.powu((n - j) as u32);
            }
            worst = worst.max((s - full[(m, n)]).norm());
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Bogoliubov maps

/// SU(1,1) matrix `[[α, β], [β*, α*]]` acting on the `(a, b†)` doublet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovMap2 {
    pub alpha: Complex64,
    pub beta: Complex64,
}

type Mat2 = [[Complex64; 2]; 2];

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

impl BogoliubovMap2 {
    pub fn identity() -> Self {
        Self { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    /// Sudden two-mode squeeze `Q(r) = [[cosh r, sinh r], [sinh r, cosh r]]`.
    pub fn squeeze(r: f64) -> Self {
        Self { alpha: Complex64::new(r.cosh(), 0.0), beta: Complex64::new(r.sinh(), 0.0) }
    }

    /// Free dwell `R(φ) = diag(e^{−iφ}, e^{iφ})`.
    pub fn rotation(phi: f64) -> Self {
        Self { alpha: Complex64::from_polar(1.0, -phi), beta: Complex64::new(0.0, 0.0) }
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.alpha, self.beta], [self.beta.conj(), self.alpha.conj()]]
    }

    /// Reads `(α, β)` off the first row; the second row is implied.
    pub fn from_matrix(m: &Mat2) -> Self {
        Self { alpha: m[0][0], beta: m[0][1] }
    }

    /// `self · other` as 2×2 matrices.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(&mul2(&self.matrix(), &other.matrix()))
    }

    /// `|α|² − |β|²`, equal to 1 on SU(1,1).
    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Effective squeeze magnitude `asinh |β|` and phase `arg β` of the map.
    pub fn squeeze_param(&self) -> Result<SqueezeParam> {
        SqueezeParam::new(self.beta.norm().asinh(), self.beta.im.atan2(self.beta.re))
    }
}

/// Squeeze, dwell, unsqueeze: `M = Q(−r) R(φ) Q(r)`.
///
/// With the conventions of [`BogoliubovMap2::squeeze`] and [`BogoliubovMap2::rotation`],
/// `α = cosh²r e^{−iφ} − sinh²r e^{iφ}` and `β = −2i cosh r sinh r sin φ`.
pub fn ramsey_sequence(r: f64, phi: f64) -> BogoliubovMap2 {
    BogoliubovMap2::squeeze(-r).compose(&BogoliubovMap2::rotation(phi)).compose(&BogoliubovMap2::squeeze(r))
}

// ---------------------------------------------------------------------------
// Schmidt modes

/// Squeeze parameters of one Schmidt mode under the two superposed histories.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtModePair {
    pub r1: f64,
    pub theta1: f64,
    pub r2: f64,
    pub theta2: f64,
}

impl SchmidtModePair {
    /// Mode pair from the Bogoliubov maps of two histories, taking `θ_j = arg β_j` and
    /// `r_j = asinh |β_j|`.
    pub fn from_maps(first: &BogoliubovMap2, second: &BogoliubovMap2) -> Result<Self> {
        let a = first.squeeze_param()?;
        let b = second.squeeze_param()?;
        Ok(Self { r1: a.r(), theta1: a.theta(), r2: b.r(), theta2: b.theta() })
    }

    pub fn x(&self) -> f64 {
        self.r1.tanh().powi(2)
    }

    pub fn y(&self) -> f64 {
        self.r2.tanh().powi(2)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r1.tanh() * self.r2.tanh(), self.theta1 - self.theta2)
    }
}

/// The Janus configuration carried by one Schmidt mode.
pub fn schmidt_mode_tmjs(pair: &SchmidtModePair, chi: f64, eta: f64, delta: f64) -> Result<JanusConfig> {
    JanusConfig::new(
        SqueezeParam::new(pair.r1, pair.theta1)?,
        SqueezeParam::new(pair.r2, pair.theta2)?,
        chi,
        eta,
        delta,
    )
}

// ---------------------------------------------------------------------------
// Moving mirror

/// Default finite-difference step for callable trajectories.
pub const SCHWARZIAN_STEP: f64 = 1e-3;

/// Reflector worldline `v = p(u)` in null coordinates.
pub enum MirrorTrajectory {
    /// Closed-form map evaluated on a 5-point stencil with step `h`.
    Function { p: Box<dyn Fn(f64) -> f64 + Send + Sync>, h: f64 },
    /// Uniformly spaced samples `(u_i, p(u_i))`.
    Sampled { u: Vec<f64>, p: Vec<f64> },
}

impl std::fmt::Debug for MirrorTrajectory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MirrorTrajectory::Function { h, .. } => f.debug_struct("Function").field("h", h).finish_non_exhaustive(),
            MirrorTrajectory::Sampled { u, .. } => f.debug_struct("Sampled").field("samples", &u.len()).finish(),
        }
    }
}

impl MirrorTrajectory {
    pub fn function(p: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        MirrorTrajectory::Function { p: Box::new(p), h: SCHWARZIAN_STEP }
    }

    pub fn with_step(self, step: f64) -> Self {
        match self {
            MirrorTrajectory::Function { p, .. } => MirrorTrajectory::Function { p, h: step },
            other => other,
        }
    }

    /// Samples must be uniformly spaced in `u` and strictly increasing in `p`.
    pub fn sampled(u: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if u.len() != p.len() || u.len() < 5 {
            return Err(JanusError::InvalidParameter("trajectory needs at least 5 (u, p) samples".into()));
        }
        let h = u[1] - u[0];
        if h.is_nan() || h <= 0.0 || u.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) {
            return Err(JanusError::InvalidParameter("trajectory samples must be uniformly spaced in u".into()));
        }
        if let Some(i) = p.windows(2).position(|w| w[1] <= w[0]) {
            return Err(JanusError::InvalidWorldline { u: u[i], derivative: (p[i + 1] - p[i]) / h });
        }
        Ok(MirrorTrajectory::Sampled { u, p })
    }

    /// `[p(u−2h), p(u−h), p(u), p(u+h), p(u+2h)]` and `h`.
    fn stencil(&self, u: f64) -> Result<([f64; 5], f64)> {
        match self {
            MirrorTrajectory::Function { p, h } => {
                let v = [p(u - 2.0 * h), p(u - h), p(u), p(u + h), p(u + 2.0 * h)];
                Ok((v, *h))
            }
            MirrorTrajectory::Sampled { u: us, p } => {
                let h = us[1] - us[0];
                let i = ((u - us[0]) / h).round();
                if i < 2.0 || i as usize + 2 >= us.len() {
                    return Err(JanusError::StencilOutOfRange(u));
                }
                let i = i as usize;
                Ok(([p[i - 2], p[i - 1], p[i], p[i + 1], p[i + 2]], h))
            }
        }
    }

    /// First three derivatives at `u` from 5-point central differences.
    pub fn derivatives(&self, u: f64) -> Result<(f64, f64, f64)> {
        let ([m2, m1, c, p1, p2], h) = self.stencil(u)?;
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
        let d3 = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h * h * h);
        Ok((d1, d2, d3))
    }
}

/// `{p, u} = p‴/p′ − (3/2)(p″/p′)²`.
pub fn schwarzian(traj: &MirrorTrajectory, u: f64) -> Result<f64> {
    let (d1, d2, d3) = traj.derivatives(u)?;
    if d1.is_nan() || d1 <= 0.0 {
        return Err(JanusError::InvalidWorldline { u, derivative: d1 });
    }
    let q = d2 / d1;
    Ok(d3 / d1 - 1.5 * q * q)
}

/// Radiated flux `⟨T_uu⟩ = −{p, u} / (24π)`.
pub fn schwarzian_flux(traj: &MirrorTrajectory, u: f64) -> Result<f64> {
    Ok(-schwarzian(traj, u)? / (24.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(r: f64, th: f64) -> SqueezeParam {
        SqueezeParam::new(r, th).unwrap()
    }

    #[test]
    fn wei_norman_trivial_and_small() {
        let grid = uniform_grid(1001);
        assert_eq!(wei_norman_residuals(sq(0.0, 0.3), &grid).unwrap(), 0.0);
        let res = wei_norman_residuals(sq(0.7, 1.1), &grid).unwrap();
        assert!(res < 1e-6, "{res}");
        assert!(wei_norman_residuals(sq(0.7, 1.1), &[0.0, 0.5]).is_err());
        assert!(wei_norman_residuals(sq(0.7, 1.1), &[0.0, 0.5, 1.5]).is_err());
    }

    #[test]
    fn wei_norman_endpoint_is_alpha() {
        let p = sq(0.9, 2.3);
        let (a, b, c) = wei_norman_solution(p, 1.0);
        assert!((a - p.alpha()).norm() < 1e-15);
        assert!((b - (1.0 - p.alpha().norm_sqr()).ln()).abs() < 1e-14);
        assert!((c + p.alpha().conj()).norm() < 1e-15);
    }

    #[test]
    fn wei_norman_second_order() {
        let r = wei_norman_refinement(sq(0.7, 1.1), 1001).unwrap();
        assert!((3.5..=4.5).contains(&r.ratio), "{r:?}");
    }

    #[test]
    fn disentangled_product_matches_exponential() {
        for &(r, th) in &[(0.4, 0.0), (0.9, 2.0)] {
            let d = disentangling_defect(sq(r, th), 12);
            assert!(d < 1e-10, "{d}");
        }
    }

    #[test]
    fn ramsey_trivial_cases() {
        let m = ramsey_sequence(0.7, 0.0);
        assert!((m.alpha - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(m.beta.norm() < 1e-15);
        let m = ramsey_sequence(0.0, 0.9);
        assert_eq!(m.beta, Complex64::new(0.0, 0.0));
        assert!((m.alpha - Complex64::from_polar(1.0, -0.9)).norm() < 1e-15);
    }

    #[test]
    fn ramsey_quarter_turn() {
        let m = ramsey_sequence(0.5, PI / 2.0);
        // −2i cosh(0.5) sinh(0.5) = −i sinh(1) = −1.17520119364380146i
        assert!(m.beta.re.abs() < 1e-15);
        assert!((m.beta.im + 1.175_201_193_643_801_5).abs() < 1e-14);
        assert!((m.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ramsey_closed_form() {
        for i in 0..10 {
            for j in 0..10 {
                let r = 0.15 * i as f64;
                let phi = -3.0 + 0.6 * j as f64;
                let m = ramsey_sequence(r, phi);
                let (c, s) = (r.cosh(), r.sinh());
                let alpha = Complex64::from_polar(c * c, -phi) - Complex64::from_polar(s * s, phi);
                assert!((m.alpha - alpha).norm() < 1e-12);
                assert!((m.beta - Complex64::new(0.0, -2.0 * c * s * phi.sin())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn composition_stays_in_su11() {
        let a = ramsey_sequence(0.8, 0.4);
        let b = BogoliubovMap2::squeeze(1.3).compose(&BogoliubovMap2::rotation(2.0));
        let c = a.compose(&b).compose(&ramsey_sequence(0.2, -1.0));
        assert!((c.determinant() - 1.0).abs() < 1e-12);
        let id = BogoliubovMap2::squeeze(0.6).compose(&BogoliubovMap2::squeeze(-0.6));
        assert!((id.alpha - BogoliubovMap2::identity().alpha).norm() < 1e-15);
    }

    #[test]
    fn schmidt_mapping() {
        let pair = SchmidtModePair { r1: 0.6, theta1: 0.4, r2: 0.6, theta2: 0.4 };
        let z = pair.z();
        assert!((z.re - 0.6f64.tanh().powi(2)).abs() < 1e-15 && z.im.abs() < 1e-15);
        let cfg = schmidt_mode_tmjs(&pair, 1.0, 1.0, 0.0).unwrap();
        assert!((cfg.z() - z).norm() < 1e-15);
        assert_eq!(pair.x(), pair.y());
    }

    #[test]
    fn ramsey_phase_is_dialable() {
        let base = ramsey_sequence(0.5, PI / 4.0);
        let same = SchmidtModePair::from_maps(&base, &ramsey_sequence(0.5, PI / 3.0)).unwrap();
        let flipped = SchmidtModePair::from_maps(&base, &ramsey_sequence(0.5, PI / 4.0 + PI)).unwrap();
        assert!(same.z().arg().abs() < 1e-12);
        assert!((flipped.z().arg().abs() - PI).abs() < 1e-12);
        assert!((flipped.r1 - flipped.r2).abs() < 1e-12);
    }

    #[test]
    fn schmidt_vacuum_branch_reduces_to_tmss() {
        let pair = SchmidtModePair { r1: 0.7, theta1: 0.2, r2: 0.0, theta2: 0.0 };
        let cfg = schmidt_mode_tmjs(&pair, 1.0, 0.0, 0.0).unwrap();
        let g = crate::coherence::g_cross_tmjs(&cfg, 2).unwrap();
        let base = crate::tmss::g_cross_tmss(2, cfg.xi).unwrap();
        assert!((g / base - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schwarzian_of_affine_and_mobius() {
        let affine = MirrorTrajectory::function(|u| 2.5 * u - 0.3);
        assert!(schwarzian_flux(&affine, 0.7).unwrap().abs() < 1e-8);
        let mobius = MirrorTrajectory::function(|u| (2.0 * u + 1.0) / (0.5 * u + 3.0));
        assert!(schwarzian_flux(&mobius, 0.4).unwrap().abs() < 1e-8);
    }

    #[test]
    fn exponential_trajectory_flux() {
        let kappa = 1.0;
        let traj = MirrorTrajectory::function(move |u| -(-kappa * u).exp() / kappa);
        // {p,u} = −κ²/2, flux = κ²/(48π) = 0.006631455962162306
        let f = schwarzian_flux(&traj, 0.0).unwrap();
        assert!((f - 0.006_631_455_962_162_306).abs() < 1e-6);
        assert!((schwarzian(&traj, 1.5).unwrap() + 0.5).abs() < 1e-5);
    }

    #[test]
    fn sampled_trajectory() {
        let h = 1e-3;
        let u: Vec<f64> = (0..2001).map(|i| -1.0 + i as f64 * h).collect();
        let p: Vec<f64> = u.iter().map(|&v| -(-v).exp()).collect();
        let traj = MirrorTrajectory::sampled(u, p).unwrap();
        assert!((schwarzian_flux(&traj, 0.0).unwrap() - 1.0 / (48.0 * PI)).abs() < 1e-6);
        assert!(matches!(schwarzian_flux(&traj, -0.9995), Err(JanusError::StencilOutOfRange(_))));
    }

    #[test]
    fn invalid_worldlines() {
        let decreasing = MirrorTrajectory::function(|u| -u);
        assert!(matches!(schwarzian_flux(&decreasing, 0.0), Err(JanusError::InvalidWorldline { .. })));
        let u = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        assert!(MirrorTrajectory::sampled(u.clone(), vec![0.0, 1.0, 1.0, 2.0, 3.0]).is_err());
        assert!(MirrorTrajectory::sampled(vec![0.0, 1.0, 2.5, 3.0, 4.0], u).is_err());
    }
}
