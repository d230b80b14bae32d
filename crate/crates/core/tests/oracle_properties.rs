use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;

use janus_core::coherence::{g_cross_tmjs, g_single_tmjs, janus_norm, kernel, mean_photon_tmjs};
use janus_core::dynamics::{ramsey_sequence, BogoliubovMap2};
use janus_core::fock::MomentKind;
use janus_core::polynomials::{eval_2f1_terminating, legendre_cross_check, squeezing_polynomial};
use janus_core::verify::closed_form_deviation;
use janus_core::wigner::{parity_check, SingleModeJanus};
use janus_core::JanusConfig;

fn config() -> impl Strategy<Value = JanusConfig> {
    (0.0..1.0f64, 0.0..2.0 * PI, 0.0..1.0f64, 0.0..2.0 * PI, 0.2..1.0f64, 0.2..1.0f64, 0.0..2.0 * PI)
        .prop_map(|(r, th, s, ph, chi, eta, d)| JanusConfig::from_parts(r, th, s, ph, chi, eta, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_match_fock_oracle(cfg in config()) {
        if let Some(dev) = closed_form_deviation(&cfg, 4).unwrap() {
            prop_assert!(dev < 1e-6, "deviation {dev}");
        }
    }

    #[test]
    fn branch_exchange_is_a_global_phase(cfg in config()) {
        prop_assume!(janus_norm(&cfg).unwrap() > 1e-8 && mean_photon_tmjs(&cfg).unwrap() > 1e-6);
        let swapped = JanusConfig::new(cfg.zeta, cfg.xi, cfg.eta, cfg.chi, -cfg.delta).unwrap();
        assert_relative_eq!(mean_photon_tmjs(&cfg).unwrap(), mean_photon_tmjs(&swapped).unwrap(), max_relative = 1e-10);
        for k in 1..=3 {
            assert_relative_eq!(g_single_tmjs(&cfg, k).unwrap(), g_single_tmjs(&swapped, k).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(g_cross_tmjs(&cfg, k).unwrap(), g_cross_tmjs(&swapped, k).unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn kernel_phase_principal(cfg in config(), k in 1i64..6) {
        for kind in [MomentKind::Single, MomentKind::Cross] {
            let ker = kernel(&cfg, k, kind).unwrap();
            prop_assert!(ker.phase > -PI && ker.phase <= PI);
            prop_assert!(ker.magnitude >= 0.0);
        }
    }

    #[test]
    fn polynomial_routes_agree(k in 1i64..=12, x in 0.001..0.999f64) {
        prop_assert!(legendre_cross_check(k, x).unwrap() < 1e-10);
        let p = squeezing_polynomial(k).unwrap();
        assert_relative_eq!(p.eval_inner(x), eval_2f1_terminating(k as usize, x), max_relative = 1e-12);
    }

    #[test]
    fn polynomial_at_one_is_central_binomial(k in 1i64..=12) {
        let p = squeezing_polynomial(k).unwrap();
        let central: u128 = (1..=k as u128).fold(1, |acc, i| acc * (k as u128 + i) / i);
        prop_assert_eq!(p.coefficients().iter().sum::<u128>(), p.scale() * central);
    }

    #[test]
    fn ramsey_maps_compose_in_su11(r1 in 0.0..1.5f64, p1 in -PI..PI, r2 in 0.0..1.5f64, p2 in -PI..PI) {
        let a = ramsey_sequence(r1, p1);
        let b = ramsey_sequence(r2, p2);
        let c = BogoliubovMap2::squeeze(0.3);
        prop_assert!((a.compose(&b).determinant() - 1.0).abs() < 1e-10);
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        prop_assert!((left.alpha - right.alpha).norm() < 1e-10);
        prop_assert!((left.beta - right.beta).norm() < 1e-10);
    }

    #[test]
    fn wigner_parity_identity(r in 0.05..1.0f64, th in 0.0..2.0 * PI, s in 0.05..1.0f64, d in 0.0..2.0 * PI) {
        let st = SingleModeJanus::from_parts(r, th, s, 0.0, 1.0, 0.7, d).unwrap();
        prop_assert!(parity_check(&st).unwrap().abs() < 1e-10);
    }
}
