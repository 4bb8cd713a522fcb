//! Randomized invariants for the special functions and discretizations.

use num_complex::Complex64;
use proptest::prelude::*;

use dunkl_spectral::{
    bessel_j_normalized, caputo_l1, dunkl_kernel, gamma_fn, mittag_leffler, spectral_symbol,
    MLParams, ProblemParams, TimeGrid,
};

proptest! {
    #[test]
    fn bessel_is_even(alpha in -0.5f64..5.0, z in -30.0f64..30.0) {
        prop_assert_eq!(
            bessel_j_normalized(alpha, z),
            bessel_j_normalized(alpha, -z)
        );
    }

    #[test]
    fn bessel_bounded_by_one_for_nonnegative_order(alpha in 0.0f64..5.0, z in -50.0f64..50.0) {
        // |j_alpha| <= 1 for alpha >= -1/2 on the real line
        prop_assert!(bessel_j_normalized(alpha, z).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn kernel_conjugate_symmetry(alpha in -0.5f64..3.0, x in -8.0f64..8.0, l in -8.0f64..8.0) {
        let d = dunkl_kernel(alpha, x, l);
        let dc = dunkl_kernel(alpha, x, -l);
        prop_assert!((d - dc.conj()).norm() <= 1e-14 * (1.0 + d.norm()));
        prop_assert!(d.norm() <= 1.0 + (x * l).abs() / (2.0 * (alpha + 1.0)) + 1e-12);
    }

    #[test]
    fn mittag_leffler_in_unit_interval(gamma in 0.05f64..=1.0, t in 0.0f64..60.0) {
        let ml = MLParams::new(gamma, 1.0).unwrap();
        let v = mittag_leffler(ml, -t).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn mittag_leffler_monotone(gamma in 0.1f64..=1.0, t in 0.0f64..40.0, dt in 0.01f64..10.0) {
        let ml = MLParams::new(gamma, 1.0).unwrap();
        let a = mittag_leffler(ml, -t).unwrap();
        let b = mittag_leffler(ml, -(t + dt)).unwrap();
        prop_assert!(b < a);
    }

    #[test]
    fn mittag_leffler_two_sided_bounds(gamma in 0.1f64..0.95, t in 1e-3f64..100.0) {
        let ml = MLParams::new(gamma, 1.0).unwrap();
        let v = mittag_leffler(ml, -t).unwrap();
        let lo = 1.0 / (1.0 + gamma_fn(1.0 - gamma).unwrap() * t);
        let hi = 1.0 / (1.0 + t / gamma_fn(1.0 + gamma).unwrap());
        prop_assert!(v >= lo && v <= hi, "gamma={} t={} v={} lo={} hi={}", gamma, t, v, lo, hi);
    }

    #[test]
    fn caputo_is_linear(
        gamma in 0.1f64..0.95,
        c1 in -5.0f64..5.0,
        c2 in -5.0f64..5.0,
        w in 0.2f64..3.0,
    ) {
        let tg = TimeGrid::uniform(1.0, 24).unwrap();
        let g: Vec<Complex64> = tg.nodes.iter().map(|&t| Complex64::new((w * t).sin(), t)).collect();
        let h: Vec<Complex64> = tg.nodes.iter().map(|&t| Complex64::new(t * t, (w * t).cos())).collect();
        let combo: Vec<Complex64> = g.iter().zip(&h).map(|(a, b)| c1 * a + c2 * b).collect();
        let dg = caputo_l1(gamma, &tg, &g).unwrap();
        let dh = caputo_l1(gamma, &tg, &h).unwrap();
        let dc = caputo_l1(gamma, &tg, &combo).unwrap();
        let scale = dg.iter().chain(&dh).map(|v| v.norm()).fold(1.0f64, f64::max);
        for k in 0..tg.len() {
            prop_assert!((dc[k] - (c1 * dg[k] + c2 * dh[k])).norm() <= 1e-11 * scale * (1.0 + c1.abs() + c2.abs()));
        }
    }

    #[test]
    fn symbol_within_bounds(
        a in 0.1f64..5.0,
        m in 0.1f64..5.0,
        gamma in 0.1f64..=1.0,
        lambda in -100.0f64..100.0,
    ) {
        let p = ProblemParams::new(0.0, a, m, gamma, 1.0).unwrap();
        let s = spectral_symbol(&p, lambda);
        prop_assert!(s >= p.symbol_lower_bound() - 1e-12);
        prop_assert!(s <= p.symbol_upper_bound() + 1e-12);
    }
}
