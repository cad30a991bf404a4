//! Acceptance criteria 1-10. Each test writes one `CRITERION n: PASS|FAIL`
//! line to stderr (bypassing the test harness capture) before asserting.

use std::io::Write;

use num_complex::Complex64;
use sopq_core::error::Error;
use sopq_core::hyper::horn_validate;
use sopq_core::oracle::{expansion_residual, gram_matrix, quad_assoc, quad_zonal, BasisLabel, QuadratureConfig};
use sopq_core::orthopoly::Signature;
use sopq_core::sfcore::{
    assoc_horn, assoc_series, reconstruct_assoc_horn, reconstruct_zonal_horn, symmetry_pair, zonal_horn, zonal_series,
    AssocIndex, Rapidity, RepParam, SeriesConfig,
};

/// Associated values that vanish identically come out of both paths as
/// rounding noise (at most ~1e-16 on the grids below, where the smallest
/// nonzero value is ~2e-6). A pair with both sides below this magnitude
/// counts as an exact match; everything else is compared relatively.
const ZERO_FLOOR: f64 = 1e-12;

fn report(n: u32, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "CRITERION {n}: {verdict} - {detail}");
}

fn sig(p: u32, q: u32) -> Signature {
    Signature::new(p, q).unwrap()
}

fn rep(s: Complex64) -> RepParam {
    RepParam::even(s).unwrap()
}

fn al(a: f64) -> Rapidity {
    Rapidity::new(a).unwrap()
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    if got.norm() < ZERO_FLOOR && want.norm() < ZERO_FLOOR {
        return 0.0;
    }
    (got - want).norm() / want.norm()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn zonal_grid() -> Vec<(Signature, Complex64, f64)> {
    let mut out = Vec::new();
    for p in 2..=5 {
        for q in 2..=p {
            let line = -((p + q) as f64 - 2.0) / 2.0;
            for s in [c(0.0, 0.0), c(-2.0, 0.0), c(line, 0.0), c(line, 1.0), c(line, 2.0)] {
                for k in 1..=8 {
                    out.push((sig(p, q), s, k as f64 / 10.0));
                }
            }
        }
    }
    out
}

fn assoc_grid() -> Vec<(Signature, Complex64, AssocIndex, f64)> {
    let mut out = Vec::new();
    for (p, q) in [(3, 3), (4, 3), (3, 2), (2, 2)] {
        let line = -((p + q) as f64 - 2.0) / 2.0;
        for s in [c(-2.0, 0.0), c(line, 1.0)] {
            for lambda in 0..=5 {
                for mu in 0..=5 {
                    if (lambda + mu) % 2 != 0 {
                        continue;
                    }
                    let idx = AssocIndex::from_labels(lambda, mu).unwrap();
                    for a in [0.2, 0.5] {
                        out.push((sig(p, q), s, idx, a));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_zonal_series_matches_quadrature() {
    let (cfg, qcfg) = (SeriesConfig::default(), QuadratureConfig::default());
    let mut worst = (0.0f64, String::new());
    for (sg, s, a) in zonal_grid() {
        let series = zonal_series(sg, rep(s), al(a), &cfg).unwrap();
        let quad = quad_zonal(sg, rep(s), al(a), &qcfg).unwrap();
        let e = if series.converged { rel(series.value, quad) } else { f64::INFINITY };
        if e > worst.0 || worst.1.is_empty() {
            worst = (e, format!("(p,q)=({},{}) sigma={s} alpha={a}", sg.p(), sg.q()));
        }
    }
    let ok = worst.0 <= 1e-8;
    report(1, ok, format!("max rel err {:.2e} at {} (tol 1e-8)", worst.0, worst.1));
    assert!(ok);
}

#[test]
fn criterion_2_assoc_series_matches_quadrature() {
    let (cfg, qcfg) = (SeriesConfig::default(), QuadratureConfig::default());
    let mut worst = (0.0f64, String::new());
    let mut zeros = 0;
    for (sg, s, idx, a) in assoc_grid() {
        let series = assoc_series(sg, rep(s), idx, al(a), &cfg).unwrap();
        let quad = quad_assoc(sg, rep(s), idx, al(a), &qcfg).unwrap();
        if quad.norm() < ZERO_FLOOR && series.value.norm() < ZERO_FLOOR {
            zeros += 1;
        }
        let e = if series.converged { rel(series.value, quad) } else { f64::INFINITY };
        if e > worst.0 || worst.1.is_empty() {
            worst = (e, format!("(p,q)=({},{}) sigma={s} {idx:?} alpha={a}", sg.p(), sg.q()));
        }
    }
    let ok = worst.0 <= 1e-6;
    report(
        2,
        ok,
        format!("max rel err {:.2e} at {} (tol 1e-6; {zeros} identically-zero values matched below {ZERO_FLOOR:.0e})", worst.0, worst.1),
    );
    assert!(ok);
}

#[test]
fn criterion_3_symmetry() {
    let cfg = SeriesConfig::default();
    let mut worst = 0.0f64;
    for (sg, s, idx, a) in assoc_grid() {
        let (x, y) = symmetry_pair(sg, rep(s), idx, al(a), &cfg).unwrap();
        worst = worst.max(rel(y, x));
    }
    let ok = worst <= 1e-10;
    report(3, ok, format!("max rel asymmetry {worst:.2e} (tol 1e-10)"));
    assert!(ok);
}

#[test]
fn criterion_4_identities() {
    let cfg = SeriesConfig::default();
    let mut sigma_zero = 0.0f64;
    let mut origin_exact = true;
    let mut assoc_origin = 0.0f64;
    for p in 2..=6 {
        for q in 1..=p {
            for k in 0..=8 {
                let z = zonal_series(sig(p, q), rep(c(0.0, 0.0)), al(k as f64 / 10.0), &cfg).unwrap();
                sigma_zero = sigma_zero.max((z.value - c(1.0, 0.0)).norm());
            }
            for s in [c(-2.0, 0.0), c(1.5, -3.0), c(-4.5, 7.0)] {
                origin_exact &= zonal_series(sig(p, q), rep(s), al(0.0), &cfg).unwrap().value == c(1.0, 0.0);
            }
        }
    }
    for (sg, s, idx, _) in assoc_grid() {
        if idx.is_zonal() {
            continue;
        }
        assoc_origin = assoc_origin.max(assoc_series(sg, rep(s), idx, al(0.0), &cfg).unwrap().value.norm());
    }
    let ok = sigma_zero <= 1e-12 && origin_exact && assoc_origin <= 1e-12;
    report(
        4,
        ok,
        format!("|Z_0 - 1| <= {sigma_zero:.1e}; Z(0) == 1 exactly: {origin_exact}; |assoc(0)| <= {assoc_origin:.1e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_5_horn_cross_path() {
    let cfg = SeriesConfig::default();
    let mut worst_z = 0.0f64;
    let mut worst_a = 0.0f64;
    let mut balanced = true;
    for (sg, s, a) in zonal_grid() {
        let series = zonal_series(sg, rep(s), al(a), &cfg).unwrap();
        let horn = zonal_horn(sg, rep(s), al(a), &cfg).unwrap();
        balanced &= horn_validate(&horn.spec);
        let e = if horn.result.converged && series.converged { rel(horn.result.value, series.value) } else { f64::INFINITY };
        worst_z = worst_z.max(e);
    }
    for (sg, s, idx, a) in assoc_grid() {
        let series = assoc_series(sg, rep(s), idx, al(a), &cfg).unwrap();
        let horn = assoc_horn(sg, rep(s), idx, al(a), &cfg).unwrap();
        balanced &= horn_validate(&horn.spec);
        let e = if horn.result.converged && series.converged { rel(horn.result.value, series.value) } else { f64::INFINITY };
        worst_a = worst_a.max(e);
    }
    // the stored assignments are recovered by enumeration over the printed symbols
    let mut reconstructed = true;
    for (p, q) in [(2, 2), (4, 3), (5, 2)] {
        reconstructed &= reconstruct_zonal_horn(sig(p, q), rep(c(-1.7, 0.6))).is_ok();
    }
    for (p, q, nu, s, r) in [(3, 3, 0, 1, 1), (4, 3, 1, 2, 1), (3, 2, 0, 2, 0)] {
        let idx = AssocIndex::new(nu, s, r).unwrap();
        reconstructed &= reconstruct_assoc_horn(sig(p, q), rep(c(-1.3, 0.8)), idx).is_ok();
    }
    let ok = worst_z <= 1e-8 && worst_a <= 1e-8 && balanced && reconstructed;
    report(
        5,
        ok,
        format!(
            "zonal max rel {worst_z:.2e}, assoc max rel {worst_a:.2e} (tol 1e-8); specs balanced: {balanced}; reconstruction: {reconstructed}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_6_gram_identity() {
    let qcfg = QuadratureConfig::default();
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for (p, q) in [(3, 3), (3, 2), (2, 2)] {
        let range = |n: u32| if n == 2 { -4..=4 } else { 0..=4 };
        let mut labels = Vec::new();
        for lambda in range(q) {
            for mu in range(p) {
                labels.push(BasisLabel { lambda, mu });
            }
        }
        let g = gram_matrix(sig(p, q), &labels, &qcfg).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i == j {
                    diag = diag.max((v - c(1.0, 0.0)).norm());
                } else {
                    off = off.max(v.norm());
                }
            }
        }
    }
    let ok = off <= 1e-8 && diag <= 1e-6;
    report(6, ok, format!("max off-diagonal {off:.2e} (tol 1e-8), max diagonal deviation {diag:.2e} (tol 1e-6)"));
    assert!(ok);
}

fn expansion_samples() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            out.push((0.37 + 0.87 * i as f64, 0.11 + 0.89 * j as f64));
        }
    }
    out
}

#[test]
fn criterion_7_expansion_residual_halves() {
    let cfg = SeriesConfig::default();
    let samples = expansion_samples();
    let res = |n: usize, s: Complex64| expansion_residual(sig(2, 2), rep(s), al(0.3), n, &samples, &cfg).unwrap();
    let (r4, r8, r16) = (res(4, c(4.0, 0.0)), res(8, c(4.0, 0.0)), res(16, c(4.0, 0.0)));
    // the same ladder for a non-polynomial kernel, reported for context
    let (g4, g8, g16) = (res(4, c(-1.0, 0.5)), res(8, c(-1.0, 0.5)), res(16, c(-1.0, 0.5)));
    let ok = r8 <= 0.5 * r4 && r16 <= 0.5 * r8;
    report(
        7,
        ok,
        format!(
            "sigma=4: residuals N=4 {r4:.2e}, N=8 {r8:.2e}, N=16 {r16:.2e}; sigma=-1+0.5i: {g4:.2e}, {g8:.2e}, {g16:.2e}"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_divergent_domain_is_not_silent() {
    let qcfg = QuadratureConfig::default();
    let alpha = al(1.0);
    let mut ok = true;
    let mut notes = Vec::new();
    for (p, q, s) in [(3, 2, c(-1.5, 2.0)), (4, 3, c(-2.5, 0.0)), (5, 5, c(-4.0, 1.0)), (2, 2, c(-6.0, 0.0))] {
        let sg = sig(p, q);
        let quad = quad_zonal(sg, rep(s), alpha, &qcfg).unwrap();
        // default guard refuses
        let guarded = matches!(zonal_series(sg, rep(s), alpha, &SeriesConfig::default()), Err(Error::ConvergenceDomain { .. }))
            && matches!(zonal_horn(sg, rep(s), alpha, &SeriesConfig::default()), Err(Error::ConvergenceDomain { .. }));
        ok &= guarded;
        // with the guard lifted, any value claimed as converged must be right
        let lifted = SeriesConfig::default().with_tanh_sq_limit(0.99);
        let honest = |r: Result<sopq_core::hyper::SeriesResult, Error>| match r {
            Ok(v) if v.converged => rel(v.value, quad) <= 1e-8,
            Ok(_) | Err(_) => true,
        };
        let series = zonal_series(sg, rep(s), alpha, &lifted);
        let horn = zonal_horn(sg, rep(s), alpha, &lifted).map(|h| h.result);
        let describe = |r: &Result<sopq_core::hyper::SeriesResult, Error>| match r {
            Ok(v) if v.converged => format!("converged rel {:.1e}", rel(v.value, quad)),
            Ok(_) => "converged=false".to_string(),
            Err(e) => format!("error ({e})"),
        };
        notes.push(format!("({p},{q}): series {}, horn {}", describe(&series), describe(&horn)));
        ok &= honest(series) && honest(horn);
    }
    report(8, ok, format!("guard errors at defaults; lifted guard: {}", notes.join("; ")));
    assert!(ok);
}

#[test]
fn criterion_9_q1_extension() {
    let (cfg, qcfg) = (SeriesConfig::default(), QuadratureConfig::default());
    let mut worst = 0.0f64;
    for p in 2..=4 {
        for s in [c(-1.0, 0.0), c(-(p as f64) / 2.0, 0.0)] {
            for k in 1..=8 {
                let a = al(k as f64 / 10.0);
                let series = zonal_series(sig(p, 1), rep(s), a, &cfg).unwrap();
                let quad = quad_zonal(sig(p, 1), rep(s), a, &qcfg).unwrap();
                worst = worst.max(if series.converged { rel(series.value, quad) } else { f64::INFINITY });
            }
        }
    }
    let ok = worst <= 1e-8;
    report(9, ok, format!("max rel err {worst:.2e} over p in 2..=4, two sigma, alpha 0.1..0.8 (tol 1e-8)"));
    assert!(ok);
}

#[test]
fn criterion_10_errata_ledger() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../ERRATA.md");
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let required = [
        "Zonal series sign",
        "Zonal integral over the p-sphere",
        "Horn form of the zonal function",
        "Horn form of the associated function",
        "Basis normalization constants",
        "Associated-function constants",
        "Evidence",
    ];
    let missing: Vec<_> = required.iter().filter(|k| !text.contains(*k)).collect();
    let ok = !text.is_empty() && missing.is_empty();
    report(10, ok, format!("ERRATA.md present: {}; missing entries: {missing:?}", !text.is_empty()));
    assert!(ok);
}
