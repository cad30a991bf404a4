//! Prints the evidence grids recorded in ERRATA.md.
//!
//! `cargo run --release -p sopq-core --example errata_evidence`

use std::f64::consts::PI;

use num_complex::Complex64;
use sopq_core::oracle::{gram_matrix, quad_assoc, quad_zonal, BasisLabel, QuadratureConfig};
use sopq_core::orthopoly::Signature;
use sopq_core::quad::{gauss_legendre_on, trapezoid_periodic};
use sopq_core::scalar::{ln_gamma_real, pochhammer};
use sopq_core::sfcore::{
    assoc_horn_prefactor, assoc_horn_symbols, assoc_normalization, assoc_series, enumerate_horn, theta,
    zonal_horn_symbols, zonal_series, AssocIndex, Rapidity, RepParam, SeriesConfig, RECONSTRUCTION_PROBES,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
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

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn main() {
    zonal_sign();
    circle_integral();
    zonal_horn_rows();
    assoc_horn_rows();
    basis_constants();
    assoc_constants();
}

fn zonal_sign() {
    println!("## zonal series sign: rel. error vs quadrature");
    println!("p q sigma alpha | F2(-sigma/2,...) | F2(+sigma/2,...)");
    let cfg = SeriesConfig::default();
    for (p, q) in [(3, 2), (4, 3), (5, 5)] {
        for s in [c(-2.5, 0.0), c(-1.0, 1.5)] {
            for a in [0.3, 0.6] {
                let quad = quad_zonal(sig(p, q), rep(s), al(a), &QuadratureConfig::default()).unwrap();
                let minus = zonal_series(sig(p, q), rep(s), al(a), &cfg).unwrap().value;
                let plus = zonal_series(sig(p, q), rep(-s), al(a), &cfg).unwrap().value;
                println!("{p} {q} {s} {a} | {:.1e} | {:.1e}", rel(minus, quad), rel(plus, quad));
            }
        }
    }
}

/// `pref ∫_0^{2π} ∫_{-1}^{1} Θ^{σ/2} (1-x²)^e dx dφ` with `x = cos χ`.
fn circle_form(s: Complex64, a: f64, pref: f64, e: f64) -> Complex64 {
    let chi = gauss_legendre_on(200, 0.0, PI);
    let phi = trapezoid_periodic(200);
    let mut total = c(0.0, 0.0);
    for (t, w) in chi.nodes.iter().zip(&chi.weights) {
        let jac = t.sin().powf(2.0 * e + 1.0);
        for (f, v) in phi.nodes.iter().zip(&phi.weights) {
            let th = theta(a, t.cos(), f.cos()).unwrap();
            total += (s / 2.0 * th.ln()).exp() * (w * v * jac);
        }
    }
    total * pref
}

fn circle_integral() {
    println!("\n## zonal integral over S^(p-1) x S^1");
    println!("p alpha | printed (factor, exp (p-2)/2) | factor/2, exp (p-2)/2 | factor/2, exp (p-3)/2 | quadrature");
    let s = c(-1.5, 1.0);
    for p in [3u32, 4, 5] {
        let pf = p as f64;
        let printed = (ln_gamma_real(pf / 2.0).unwrap() - ln_gamma_real((pf - 1.0) / 2.0).unwrap()).exp() / PI.powf(1.5);
        for a in [0.0, 0.4] {
            let v1 = circle_form(s, a, printed, (pf - 2.0) / 2.0);
            let v2 = circle_form(s, a, printed / 2.0, (pf - 2.0) / 2.0);
            let v3 = circle_form(s, a, printed / 2.0, (pf - 3.0) / 2.0);
            let quad = quad_zonal(sig(p, 2), rep(s), al(a), &QuadratureConfig::default()).unwrap();
            println!("{p} {a} | {v1:.6} | {v2:.6} | {v3:.6} | {quad:.6}");
        }
    }
}

fn zonal_horn_rows() {
    println!("\n## zonal Horn form: balanced assignments matching the l-sum at alpha in {RECONSTRUCTION_PROBES:?}");
    let cfg = SeriesConfig::default();
    for (p, q, s) in [(4u32, 3u32, c(-2.5, 0.7)), (3, 3, c(-2.0, 0.0)), (5, 2, c(-1.7, 0.6))] {
        let probes: Vec<_> = RECONSTRUCTION_PROBES
            .iter()
            .map(|&a| (c(al(a).tanh_sq(), 0.0), zonal_series(sig(p, q), rep(s), al(a), &cfg).unwrap().value * a.cosh()))
            .collect();
        let (num, den) = zonal_horn_symbols(sig(p, q), rep(s));
        let hits = enumerate_horn(&num, &den, &probes, 1e-10);
        println!("(p,q)=({p},{q}) sigma={s}: {} hits", hits.len());
        print_hits(&hits);
        // printed: -σ/2 on row 01, (q+σ)/2 and (p+σ)/2 on row 10
        let printed = sopq_core::sfcore::assemble_horn(
            &num,
            &[[1, 1], [1, 1], [0, 1], [1, 0], [1, 0]],
            &den,
            &[[1, 1], [1, 1], [0, 1]],
            probes[1].0,
        );
        match sopq_core::hyper::horn_eval(&printed, 1e-15, 400) {
            Ok(v) => println!("  printed rows: rel. deviation {:.2e}", rel(v.value, probes[1].1)),
            Err(e) => println!("  printed rows: {e}"),
        }
    }
}

fn print_hits(hits: &[sopq_core::sfcore::HornCandidate]) {
    if hits.len() > 4 {
        println!("  (coinciding symbols; rows not listed)");
        return;
    }
    for h in hits {
        println!("  num rows {:?} den rows {:?}", h.numerator_rows, h.denominator_rows);
    }
}

fn assoc_horn_rows() {
    println!("\n## associated Horn form (s >= r)");
    let cfg = SeriesConfig::default();
    for (p, q, s, nu, ss, r) in [(4u32, 3u32, c(-1.5, 0.7), 1u8, 2usize, 1usize), (3, 3, c(-2.0, 1.0), 0, 1, 1), (3, 2, c(-1.2, 0.4), 1, 1, 0)] {
        let idx = AssocIndex::new(nu, ss, r).unwrap();
        let pref = assoc_horn_prefactor(sig(p, q), rep(s), idx).unwrap();
        let probes: Vec<_> = RECONSTRUCTION_PROBES
            .iter()
            .map(|&a| {
                let v = assoc_series(sig(p, q), rep(s), idx, al(a), &cfg).unwrap().value;
                let scale = pref * (a.tanh().powi((2 * ss + nu as usize) as i32) / a.cosh());
                (c(al(a).tanh_sq(), 0.0), v / scale)
            })
            .collect();
        let (num, den) = assoc_horn_symbols(sig(p, q), rep(s), idx);
        let hits = enumerate_horn(&num, &den, &probes, 1e-10);
        let mut printed_den = den.clone();
        printed_den[1] -= nu as f64;
        let printed_hits = enumerate_horn(&num, &printed_den, &probes, 1e-10);
        println!(
            "(p,q)=({p},{q}) sigma={s} (nu,s,r)=({nu},{ss},{r}): {} hits with s+r+nu+q/2, {} hits with s+r+q/2",
            hits.len(),
            printed_hits.len()
        );
        print_hits(&hits);
        // prefactor without the (2r+nu+q/2)_{s-r} division
        let gap = pochhammer(c((2 * r + nu as usize) as f64 + q as f64 / 2.0, 0.0), ss - r);
        println!("  omitting 1/(2r+nu+q/2)_(s-r) rescales the value by {:.6}", gap);
    }
}

fn basis_constants() {
    println!("\n## basis normalization constants: Gram matrix, labels <= 4");
    for (p, q) in [(3u32, 3u32), (4, 3), (3, 2), (2, 2)] {
        let range = |n: u32| if n == 2 { -4i64..=4 } else { 0..=4 };
        let labels: Vec<_> = range(q).flat_map(|l| range(p).map(move |m| BasisLabel { lambda: l, mu: m })).collect();
        let g = gram_matrix(sig(p, q), &labels, &QuadratureConfig::default()).unwrap();
        let mut off = 0.0f64;
        let mut diag = 0.0f64;
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i == j {
                    diag = diag.max((v - c(1.0, 0.0)).norm());
                } else {
                    off = off.max(v.norm());
                }
            }
        }
        println!("(p,q)=({p},{q}): {} labels, max |G-I| off-diag {off:.1e}, diag {diag:.1e}", labels.len());
    }
}

fn printed_a1a2(p: u32, q: u32, s: Complex64, idx: AssocIndex) -> Complex64 {
    let (pf, qf) = (p as f64, q as f64);
    let (mu, la) = (idx.mu() as f64, idx.lambda() as f64);
    let nu = idx.nu as f64;
    let g = |x: f64| ln_gamma_real(x).unwrap();
    let ln = (nu - 1.5 * (pf + qf)) * 2f64.ln() - g(mu + pf / 2.0) - g(la + qf / 2.0)
        + 0.5
            * (PI.ln() + g(mu + pf - 1.0) + g(la + qf - 1.0) + g(pf / 2.0) + g(qf / 2.0)
                - g(mu + 1.0)
                - g(la + 1.0)
                - g((pf - 1.0) / 2.0)
                - g((qf - 1.0) / 2.0));
    let a2 = ((mu + (pf - 2.0) / 2.0) * (la + (qf - 2.0) / 2.0) / ((mu + pf - 2.0) * (la + qf - 2.0))).sqrt();
    pochhammer(-s / 2.0, idx.s + idx.r + idx.nu as usize) * (ln.exp() * a2)
}

fn assoc_constants() {
    println!("\n## associated-function constants");
    let qc = QuadratureConfig::default();
    println!("zonal label through the pair constant: quad_assoc(0,0,0) vs quad_zonal");
    for (p, q) in [(3u32, 3u32), (4, 3), (3, 2), (2, 2)] {
        let s = c(-1.0, 0.5);
        let a = quad_assoc(sig(p, q), rep(s), AssocIndex::new(0, 0, 0).unwrap(), al(0.5), &qc).unwrap();
        let z = quad_zonal(sig(p, q), rep(s), al(0.5), &qc).unwrap();
        println!("  ({p},{q}): rel. difference {:.1e}", rel(a, z));
    }
    println!("printed A1*A2 divided by the normalization that matches quadrature");
    for (p, q) in [(3u32, 3u32), (4, 3), (5, 4)] {
        for (nu, s, r) in [(0u8, 0usize, 0usize), (0, 1, 1), (1, 0, 0), (1, 2, 1)] {
            let idx = AssocIndex::new(nu, s, r).unwrap();
            let sg = c(-2.0, 0.5);
            let ratio = printed_a1a2(p, q, sg, idx) / assoc_normalization(sig(p, q), rep(sg), idx).unwrap();
            println!("  ({p},{q}) (nu,s,r)=({nu},{s},{r}): {:.6}", ratio.re);
        }
    }
    println!("sign factor: series with (-1)^(s+r) and with (-1)^(s+r+nu) vs quadrature, alpha=0.5");
    for (p, q) in [(3u32, 3u32), (4, 3), (3, 2), (2, 2)] {
        for (nu, s, r) in [(1u8, 0usize, 0usize), (1, 1, 0), (0, 1, 1)] {
            let idx = AssocIndex::new(nu, s, r).unwrap();
            let sg = c(-1.0, 1.0);
            let v = assoc_series(sig(p, q), rep(sg), idx, al(0.5), &SeriesConfig::default()).unwrap().value;
            let quad = quad_assoc(sig(p, q), rep(sg), idx, al(0.5), &qc).unwrap();
            let flipped = if nu == 1 { -v } else { v };
            println!("  ({p},{q}) (nu,s,r)=({nu},{s},{r}): {:.1e} | {:.1e}", rel(v, quad), rel(flipped, quad));
        }
    }
}
