//! Self-verification: closed forms against the Fock oracle and other
//! independent routes, reported per invariant with the measured deviation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::coherence::{g_cross_tmjs, g_single_tmjs, janus_norm, mean_photon_tmjs};
use crate::dynamics::{
    disentangling_defect, ramsey_sequence, schwarzian_flux, uniform_grid, wei_norman_refinement, wei_norman_residuals,
    MirrorTrajectory,
};
use crate::error::Result;
use crate::exec::{map_indices, Execution};
use crate::fock::{
    build_tmjs_vector, build_tmss_vector, factorial_moment_cross, factorial_moment_single, moment_cutoff,
    su11_matexp_apply,
};
use crate::params::{JanusConfig, SqueezeParam};
use crate::polynomials::{
    eval_2f1_euler, eval_2f1_terminating, eval_binomial_weight, squeezing_polynomial, squeezing_via_legendre,
    SqueezingPolynomial, K_MAX,
};
use crate::wigner::{parity_check, wigner_grid_with, SingleModeJanus};

pub const DEFAULT_SEED: u64 = 0x004a_414e_5553;

/// Known inner coefficients `C(k,j)²` and scales `(k!)²` for `k = 1..=4`.
pub const REFERENCE_TABLES: [(u128, &[u128]); 4] =
    [(1, &[1, 1]), (4, &[1, 4, 1]), (36, &[1, 9, 9, 1]), (576, &[1, 16, 36, 16, 1])];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    fn configs(self) -> usize {
        match self {
            VerifyLevel::Quick => 20,
            VerifyLevel::Full => 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub name: String,
    pub deviation: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl InvariantResult {
    fn new(name: &str, deviation: f64, threshold: f64) -> Self {
        Self { name: name.into(), deviation, threshold, passed: deviation <= threshold }
    }

    fn from_result(name: &str, r: Result<f64>, threshold: f64) -> Self {
        r.map(|d| Self::new(name, d, threshold)).unwrap_or_else(|_| Self::new(name, f64::INFINITY, threshold))
    }
}

impl fmt::Display for InvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<28} deviation={:.3e}  threshold={:.1e}", self.name, self.deviation, self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub results: Vec<InvariantResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&InvariantResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} invariants, {} failed", self.results.len(), failed)
    }
}

/// Source of squeezing polynomials; swapped out to inject faults.
pub type PolynomialProvider = dyn Fn(i64) -> Result<SqueezingPolynomial> + Sync;

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// `n` random configurations: `r, s ∈ [0, r_max]`, phases uniform, `χ, η ∈ [0.2, 1]`
/// rescaled to `χ² + η² = 1`.
pub fn seeded_configs(seed: u64, n: usize, r_max: f64) -> Vec<JanusConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = rng.gen_range(0.0..=r_max);
            let s = rng.gen_range(0.0..=r_max);
            let theta = rng.gen_range(0.0..2.0 * PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let delta = rng.gen_range(0.0..2.0 * PI);
            let chi: f64 = rng.gen_range(0.2..=1.0);
            let eta: f64 = rng.gen_range(0.2..=1.0);
            let h = chi.hypot(eta);
            JanusConfig::from_parts(r, theta, s, phi, chi / h, eta / h, delta).expect("sampled parameters are valid")
        })
        .collect()
}

/// Mean photon number and `g_single`, `g_cross` for `k = 1..=k_max` from the Fock oracle.
pub fn oracle_coherences(cfg: &JanusConfig, k_max: usize) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let x = cfg.xi.x().max(cfg.zeta.x());
    let v = build_tmjs_vector(cfg, moment_cutoff(x, 2 * k_max as u32))?;
    let mean = factorial_moment_single(&v, 1)?;
    let mut gs = Vec::with_capacity(k_max);
    let mut gc = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        gs.push(factorial_moment_single(&v, k as i64)? / mean.powi(k as i32));
        gc.push(factorial_moment_cross(&v, k as i64)? / mean.powi(2 * k as i32));
    }
    Ok((mean, gs, gc))
}

/// Largest relative deviation between closed forms and the oracle for one configuration, or
/// `None` when the configuration is degenerate (norm below `1e−10`).
pub fn closed_form_deviation(cfg: &JanusConfig, k_max: usize) -> Result<Option<f64>> {
    if janus_norm(cfg)? < 1e-10 {
        return Ok(None);
    }
    let (mean, gs, gc) = oracle_coherences(cfg, k_max)?;
    let mut worst = rel(mean_photon_tmjs(cfg)?, mean);
    for k in 1..=k_max {
        worst = worst.max(rel(g_single_tmjs(cfg, k as i64)?, gs[k - 1]));
        worst = worst.max(rel(g_cross_tmjs(cfg, k as i64)?, gc[k - 1]));
    }
    Ok(Some(worst))
}

fn check_tables(provider: &PolynomialProvider) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, (scale, inner)) in REFERENCE_TABLES.iter().enumerate() {
        let p = provider(i as i64 + 1)?;
        let mut expected = vec![0u128; 2 * (i + 1) + 1];
        for (j, c) in inner.iter().enumerate() {
            expected[i + 1 + j] = scale * c;
        }
        let got = p.coefficients();
        if got.len() != expected.len() {
            return Ok(f64::INFINITY);
        }
        for (a, b) in got.iter().zip(&expected) {
            worst = worst.max(a.abs_diff(*b) as f64);
        }
    }
    Ok(worst)
}

fn check_routes(provider: &PolynomialProvider) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 1..=K_MAX {
        let p = provider(k as i64)?;
        for i in 1..=20 {
            let x = 0.999 * i as f64 / 20.0;
            let v = p.eval_inner(x);
            let leg = squeezing_via_legendre(k, x) / (p.scale() as f64 * x.powi(k as i32));
            for other in [eval_2f1_terminating(k, x), eval_2f1_euler(k, x), eval_binomial_weight(k, x), leg] {
                worst = worst.max(rel(v, other));
            }
        }
    }
    Ok(worst)
}

fn check_tmss_cross(provider: &PolynomialProvider) -> Result<f64> {
    let mut worst = 0.0f64;
    for &r in &[0.3, 0.8, 1.2] {
        let p = SqueezeParam::new(r, 0.7)?;
        let x = p.x();
        let v = build_tmss_vector(p, moment_cutoff(x, 8));
        let nbar = p.nbar();
        for k in 1..=4 {
            let poly = provider(k)?;
            let closed = poly.scale() as f64 * poly.eval_inner(x) / x.powi(k as i32);
            let oracle = factorial_moment_cross(&v, k)? / nbar.powi(2 * k as i32);
            worst = worst.max(rel(closed, oracle));
        }
    }
    Ok(worst)
}

fn check_thermal() -> Result<f64> {
    let mut worst = 0.0f64;
    for &r in &[0.3, 0.8, 1.2] {
        let p = SqueezeParam::new(r, 1.9)?;
        let v = build_tmss_vector(p, moment_cutoff(p.x(), 6));
        let nbar = p.nbar();
        let mut fact = 1.0;
        for k in 1..=6 {
            fact *= k as f64;
            worst = worst.max(rel(factorial_moment_single(&v, k)?, fact * nbar.powi(k as i32)));
        }
    }
    Ok(worst)
}

fn check_tmjs(level: VerifyLevel, seed: u64, exec: Execution) -> Result<f64> {
    let configs = seeded_configs(seed, level.configs(), 1.0);
    let devs = map_indices(configs.len(), exec, |i| closed_form_deviation(&configs[i], 4));
    let mut worst = 0.0f64;
    for d in devs {
        if let Some(d) = d? {
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

fn check_matexp(level: VerifyLevel, seed: u64, exec: Execution) -> Result<f64> {
    let n = match level {
        VerifyLevel::Quick => 3,
        VerifyLevel::Full => 10,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let params: Vec<SqueezeParam> = (0..n)
        .map(|_| SqueezeParam::new(rng.gen_range(0.0..=1.2), rng.gen_range(0.0..2.0 * PI)))
        .collect::<Result<_>>()?;
    let d = map_indices(n, exec, |i| su11_matexp_apply(params[i], 80).distance(&build_tmss_vector(params[i], 80)));
    Ok(d.into_iter().fold(0.0, f64::max))
}

fn check_ramsey() -> (f64, f64) {
    let mut law = 0.0f64;
    let mut det = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let r = 1.5 * i as f64 / 19.0;
            let phi = 2.0 * PI * j as f64 / 19.0;
            let m = ramsey_sequence(r, phi);
            law = law.max(m.beta.re.abs()).max((m.beta.im + 2.0 * r.cosh() * r.sinh() * phi.sin()).abs());
            det = det.max((m.determinant() - 1.0).abs());
        }
    }
    (law, det)
}

fn check_schwarzian_null() -> Result<f64> {
    let affine = MirrorTrajectory::function(|u| 1.7 * u + 0.2);
    let mobius = MirrorTrajectory::function(|u| (2.0 * u + 1.0) / (0.5 * u + 3.0));
    let mut worst = 0.0f64;
    for u in [-0.5, 0.0, 0.8] {
        worst = worst.max(schwarzian_flux(&affine, u)?.abs()).max(schwarzian_flux(&mobius, u)?.abs());
    }
    Ok(worst)
}

fn check_schwarzian_exponential() -> Result<f64> {
    let traj = MirrorTrajectory::function(|u| -(-u).exp());
    Ok((schwarzian_flux(&traj, 0.0)? - 1.0 / (48.0 * PI)).abs())
}

fn check_parity() -> Result<f64> {
    let mut worst = 0.0f64;
    for (dth, delta) in [(PI, PI), (0.0, 0.5), (PI, 0.0), (1.0, 2.0)] {
        let s = SingleModeJanus::from_parts(0.8, dth, 0.8, 0.0, 1.0, 1.0, delta)?;
        worst = worst.max(parity_check(&s)?.abs());
    }
    Ok(worst)
}

fn check_wigner_normalization(exec: Execution) -> Result<f64> {
    let mut worst = 0.0f64;
    for (dth, delta) in [(PI, PI), (0.0, 0.5)] {
        let s = SingleModeJanus::from_parts(0.8, dth, 0.8, 0.0, 1.0, 1.0, delta)?;
        let g = wigner_grid_with(&s, 4.0 + 2.0 * 0.8, 101, exec)?;
        worst = worst.max((g.integral() - 1.0).abs());
    }
    Ok(worst)
}

/// The standard suite with the built-in polynomials.
pub fn verify_suite(level: VerifyLevel) -> VerifyReport {
    verify_suite_with(level, &squeezing_polynomial, DEFAULT_SEED, Execution::default())
}

pub fn verify_suite_with(
    level: VerifyLevel,
    provider: &PolynomialProvider,
    seed: u64,
    exec: Execution,
) -> VerifyReport {
    let mut results = vec![
        InvariantResult::from_result("polynomial_tables", check_tables(provider), 0.0),
        InvariantResult::from_result("polynomial_routes", check_routes(provider), 1e-10),
        InvariantResult::from_result("tmss_cross_vs_fock", check_tmss_cross(provider), 1e-7),
        InvariantResult::from_result("thermal_marginal", check_thermal(), 1e-7),
        InvariantResult::from_result("tmjs_closed_form_vs_fock", check_tmjs(level, seed, exec), 1e-6),
        InvariantResult::from_result("su11_matexp_vs_closed_form", check_matexp(level, seed, exec), 1e-8),
        InvariantResult::from_result(
            "wei_norman_residual",
            wei_norman_residuals(SqueezeParam::new(0.7, 1.1).expect("valid"), &uniform_grid(1001)),
            1e-6,
        ),
        InvariantResult::new(
            "su11_disentangling",
            disentangling_defect(SqueezeParam::new(0.9, 2.0).expect("valid"), 10),
            1e-10,
        ),
    ];
    let (law, det) = check_ramsey();
    results.push(InvariantResult::new("ramsey_beta_law", law, 1e-12));
    results.push(InvariantResult::new("bogoliubov_determinant", det, 1e-12));
    results.push(InvariantResult::from_result("schwarzian_mobius_null", check_schwarzian_null(), 1e-8));
    results.push(InvariantResult::from_result("schwarzian_exponential", check_schwarzian_exponential(), 1e-6));
    results.push(InvariantResult::from_result("wigner_parity", check_parity(), 1e-5));
    if level == VerifyLevel::Full {
        let refinement =
            wei_norman_refinement(SqueezeParam::new(0.7, 1.1).expect("valid"), 1001).map(|r| (r.ratio - 4.0).abs());
        results.push(InvariantResult::from_result("wei_norman_refinement", refinement, 0.5));
        results.push(InvariantResult::from_result("wigner_normalization", check_wigner_normalization(exec), 5e-3));
    }
    VerifyReport { level, results }
}
