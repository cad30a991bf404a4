//! Invariants of the series and oracle paths over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use crate::oracle::{quad_assoc, quad_assoc_labels, quad_zonal, QuadratureConfig};
use crate::orthopoly::{gegenbauer, GegenbauerOrder, Signature};
use crate::scalar::{log_gamma, pochhammer};
use crate::sfcore::{
    assoc_horn, assoc_series, assoc_shell_magnitudes, symmetry_check, theta, unitary_pair_check, zonal_horn, zonal_series,
    AssocIndex, Rapidity, RepParam, SeriesConfig,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn signature() -> impl Strategy<Value = Signature> {
    (2u32..=6, 2u32..=6).prop_map(|(a, b)| Signature::new(a.max(b), a.min(b)).unwrap())
}

fn sigma() -> impl Strategy<Value = Complex64> {
    (-4.0f64..1.0, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
}

/// `th²α ≤ 0.49` holds up to α ≈ 0.775.
fn alpha() -> impl Strategy<Value = Rapidity> {
    (0.01f64..0.77).prop_map(|a| Rapidity::new(a).unwrap())
}

fn index() -> impl Strategy<Value = AssocIndex> {
    (0u8..=1, 0usize..=3, 0usize..=3).prop_map(|(nu, s, r)| AssocIndex::new(nu, s, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_angular_form(a in 0.0f64..1.2, chi in 0.0f64..6.3, phi in 0.0f64..6.3) {
        let (x, y) = (chi.cos(), phi.cos());
        let (sh, ch) = (a.sinh(), a.cosh());
        let direct = 1.0 + (x * x + y * y) * sh * sh - 2.0 * x * y * sh * ch;
        let t = theta(a, x, y).unwrap();
        prop_assert!(t > 0.0);
        prop_assert!((t - direct).abs() <= 1e-13 * t.max(1.0));
    }

    #[test]
    fn zonal_sigma_zero_is_one(sig in signature(), a in alpha()) {
        let rep = RepParam::even(c(0.0, 0.0)).unwrap();
        let z = zonal_series(sig, rep, a, &SeriesConfig::default()).unwrap().value;
        prop_assert!((z - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn zonal_at_zero_rapidity_is_exactly_one(sig in signature(), s in sigma()) {
        let rep = RepParam::even(s).unwrap();
        let z = zonal_series(sig, rep, Rapidity::new(0.0).unwrap(), &SeriesConfig::default()).unwrap().value;
        prop_assert_eq!(z, c(1.0, 0.0));
    }

    #[test]
    fn assoc_real_for_real_sigma(sig in signature(), s in -4.0f64..1.0, idx in index(), a in alpha()) {
        let rep = RepParam::even(c(s, 0.0)).unwrap();
        let v = assoc_series(sig, rep, idx, a, &SeriesConfig::default()).unwrap().value;
        prop_assert!(v.im.abs() <= 1e-12 * v.norm().max(1e-300));
    }

    #[test]
    fn swap_symmetry(sig in signature(), s in sigma(), idx in index(), a in alpha()) {
        let rep = RepParam::even(s).unwrap();
        let cfg = SeriesConfig::default();
        let scale = assoc_series(sig, rep, idx, a, &cfg).unwrap().value.norm();
        let d = symmetry_check(sig, rep, idx, a, &cfg).unwrap();
        prop_assert!(d <= 1e-10 * scale.max(1e-300), "d={d:e} scale={scale:e}");
    }

    #[test]
    fn horn_matches_series(sig in signature(), s in sigma(), idx in index(), a in alpha()) {
        let rep = RepParam::even(s).unwrap();
        let cfg = SeriesConfig::default();
        let zs = zonal_series(sig, rep, a, &cfg).unwrap().value;
        let zh = zonal_horn(sig, rep, a, &cfg).unwrap().result.value;
        prop_assert!(rel(zh, zs) <= 1e-8);
        let ps = assoc_series(sig, rep, idx, a, &cfg).unwrap().value;
        let ph = assoc_horn(sig, rep, idx, a, &cfg).unwrap().result.value;
        prop_assert!((ph - ps).norm() <= 1e-8 * ps.norm().max(1e-300));
    }

    #[test]
    fn unitary_partner_on_principal_line(sig in signature(), im in -3.0f64..3.0, a in alpha()) {
        let rep = RepParam::even(c(sig.principal_re_sigma(), im)).unwrap();
        prop_assert!(rep.is_principal(sig));
        let d = unitary_pair_check(sig, rep, a, &SeriesConfig::default()).unwrap();
        prop_assert!(d <= 1e-9, "d={d:e}");
    }

    #[test]
    fn shell_tail_decays(sig in signature(), s in sigma(), idx in index(), a in 0.2f64..0.77) {
        let rep = RepParam::even(s).unwrap();
        let m = assoc_shell_magnitudes(sig, rep, idx, Rapidity::new(a).unwrap(), 40).unwrap();
        for k in 5..m.len() - 1 {
            prop_assert!(m[k + 1] < m[k], "shell {k}: {:e} -> {:e}", m[k], m[k + 1]);
        }
    }

    #[test]
    fn gegenbauer_parity(n in 0usize..30, lam in 0.1f64..4.0, x in -1.0f64..1.0) {
        let order = GegenbauerOrder::new(n, lam).unwrap();
        let (a, b) = (gegenbauer(order, x).unwrap(), gegenbauer(order, -x).unwrap());
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((b - sign * a).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn log_gamma_recurrence_and_conjugation(re in -20.0f64..20.0, im in 0.1f64..20.0) {
        let z = c(re, im);
        let step = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
        prop_assert!(rel(step, z) <= 1e-12);
        prop_assert!(rel(log_gamma(z.conj()).unwrap(), log_gamma(z).unwrap().conj()) <= 1e-13);
    }

    #[test]
    fn pochhammer_step(re in -10.0f64..10.0, im in -5.0f64..5.0, n in 0usize..80) {
        let a = c(re, im);
        let lhs = pochhammer(a, n + 1);
        let rhs = pochhammer(a, n) * (a + n as f64);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-300));
    }
}

#[test]
fn zonal_label_ratio_is_rapidity_independent() {
    let cfg = QuadratureConfig::default();
    let zero = AssocIndex::new(0, 0, 0).unwrap();
    for (p, q) in [(3, 3), (4, 3), (3, 2), (2, 2)] {
        let sig = Signature::new(p, q).unwrap();
        let rep = RepParam::even(c(-1.5, 0.8)).unwrap();
        let ratio = |a: f64| {
            let a = Rapidity::new(a).unwrap();
            quad_assoc(sig, rep, zero, a, &cfg).unwrap() / quad_zonal(sig, rep, a, &cfg).unwrap()
        };
        assert!((ratio(0.25) - ratio(0.7)).norm() <= 1e-8 * ratio(0.7).norm(), "({p},{q})");
    }
}

#[test]
fn negative_circle_label_gives_same_value() {
    let cfg = QuadratureConfig::default();
    let rep = RepParam::even(c(-2.0, 1.0)).unwrap();
    let a = Rapidity::new(0.4).unwrap();
    for (p, mu) in [(3u32, 1i64), (4, 2), (2, 3)] {
        let sig = Signature::new(p, 2).unwrap();
        for lambda in [1i64, 2, 3] {
            if (lambda - mu) % 2 != 0 {
                continue;
            }
            let plus = quad_assoc_labels(sig, rep, lambda, mu, a, &cfg).unwrap();
            let minus = quad_assoc_labels(sig, rep, -lambda, mu, a, &cfg).unwrap();
            assert!((plus - minus).norm() <= 1e-12 * plus.norm().max(1e-300), "({p},2) lambda={lambda} mu={mu}");
        }
    }
}

#[test]
fn odd_label_mismatch_vanishes() {
    let cfg = QuadratureConfig::default();
    let rep = RepParam::even(c(-1.5, 0.5)).unwrap();
    let a = Rapidity::new(0.5).unwrap();
    for (p, q) in [(3, 3), (4, 3), (3, 2)] {
        let sig = Signature::new(p, q).unwrap();
        let v = quad_assoc_labels(sig, rep, 1, 2, a, &cfg).unwrap();
        let reference = quad_assoc_labels(sig, rep, 1, 1, a, &cfg).unwrap();
        assert!(v.norm() <= 1e-12 * reference.norm(), "({p},{q}) {v}");
    }
}

#[test]
fn series_report_converged_with_small_tail() {
    let sig = Signature::new(5, 4).unwrap();
    let rep = RepParam::even(c(-3.5, 1.0)).unwrap();
    let r = zonal_series(sig, rep, Rapidity::new(0.7).unwrap(), &SeriesConfig::default()).unwrap();
    assert!(r.converged);
    assert!(r.tail_estimate <= 1e-14);
    assert!(r.terms_used > 1);
}
