//! Quadrature oracles: the zonal and associated functions as integrals of
//! `Θ^{σ/2}` over the two sphere factors, the Gram matrix of the canonical
//! basis, and the residual of the truncated expansion of `Θ^{σ/2}`.
//!
//! A sphere factor `S^{n-1}` enters through its zonal angle `θ`:
//!
//! * `n ≥ 3`: Gauss–Legendre in `θ ∈ [0, π]` with weight `sin^{n-2}θ`;
//! * `n = 2`: periodic trapezoid in `θ ∈ [0, 2π)`;
//! * `n = 1`: the two points `θ = 0, π` with weight `1/2` each, so
//!   `y = cos θ = ±1` and `Θ = (chα - x shα)²` at `y = 1`.
//!
//! The `x` coordinate belongs to the p-sphere and `y` to the q-sphere.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::orthopoly::{assoc_coeff, basis_norm_general, basis_norm_q2, gegenbauer_unchecked, sphere_mass, Signature};
use crate::quad::{gauss_legendre_on, trapezoid_periodic};
use crate::scalar::ComplexScalar;
use crate::sfcore::{assoc_series, theta_unchecked, AssocIndex, Rapidity, RepParam, SeriesConfig};

/// Default nodes per direction.
pub const DEFAULT_NODES: usize = 96;

/// Default bound on the relative change under node doubling.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;

/// Values below this magnitude are compared absolutely in the doubling test.
const ABS_FLOOR: f64 = 1e-6;

/// One-dimensional rule used for a sphere factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    GaussLegendreAngle,
    TrapezoidPeriodic,
    TwoPoint,
}

impl Scheme {
    pub fn for_sphere(n: u32) -> Self {
        match n {
            1 => Scheme::TwoPoint,
            2 => Scheme::TrapezoidPeriodic,
            _ => Scheme::GaussLegendreAngle,
        }
    }
}

/// Node counts for the p-sphere (`nodes_x`) and q-sphere (`nodes_y`) and the
/// tolerance of the node-doubling check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub nodes_x: usize,
    pub nodes_y: usize,
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes_x: DEFAULT_NODES, nodes_y: DEFAULT_NODES, tol: DEFAULT_QUAD_TOL }
    }
}

impl QuadratureConfig {
    pub fn with_nodes(self, nodes: usize) -> Self {
        Self { nodes_x: nodes, nodes_y: nodes, ..self }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    fn doubled(&self) -> Self {
        Self { nodes_x: 2 * self.nodes_x, nodes_y: 2 * self.nodes_y, tol: self.tol }
    }

    fn check(&self) -> Result<()> {
        if self.nodes_x == 0 || self.nodes_y == 0 || !(self.tol > 0.0) {
            return Err(Error::Domain("quadrature needs positive node counts and tolerance".into()));
        }
        Ok(())
    }
}

/// Angles and measure weights of one sphere factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub scheme: Scheme,
    pub angles: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(n: u32, nodes: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("sphere dimension must be at least 1".into()));
        }
        let scheme = Scheme::for_sphere(n);
        let (angles, weights) = match scheme {
            Scheme::TwoPoint => (vec![0.0, PI], vec![0.5, 0.5]),
            Scheme::TrapezoidPeriodic => {
                let r = trapezoid_periodic(nodes);
                (r.nodes, r.weights)
            }
            Scheme::GaussLegendreAngle => {
                let r = gauss_legendre_on(nodes, 0.0, PI);
                let w = r.nodes.iter().zip(&r.weights).map(|(t, w)| w * t.sin().powi(n as i32 - 2)).collect();
                (r.nodes, w)
            }
        };
        Ok(Self { scheme, angles, weights })
    }
}

/// `Σ_i w_i Σ_j w_j f(i, j)` with `i` over the p-rule and `j` over the q-rule.
fn double_sum<F: Fn(usize, usize) -> ComplexScalar>(px: &SphereRule, qy: &SphereRule, f: F) -> ComplexScalar {
    let mut total = Complex64::new(0.0, 0.0);
    for (i, wi) in px.weights.iter().enumerate() {
        let mut inner = Complex64::new(0.0, 0.0);
        for (j, wj) in qy.weights.iter().enumerate() {
            inner += f(i, j) * *wj;
        }
        total += inner * *wi;
    }
    total
}

/// `Θ^{σ/2}` on the node grid, row-major in `(i, j)`.
fn kernel_grid(px: &SphereRule, qy: &SphereRule, sigma: ComplexScalar, alpha: f64) -> Vec<ComplexScalar> {
    let half = sigma / 2.0;
    let mut out = Vec::with_capacity(px.angles.len() * qy.angles.len());
    for chi in &px.angles {
        let x = chi.cos();
        for phi in &qy.angles {
            let ln = theta_unchecked(alpha, x, phi.cos()).ln();
            out.push((half * ln).exp());
        }
    }
    out
}

fn doubling_check(coarse: ComplexScalar, fine: ComplexScalar, cfg: &QuadratureConfig) -> Result<ComplexScalar> {
    let change = (fine - coarse).norm() / fine.norm().max(ABS_FLOOR);
    if !(change <= cfg.tol) {
        return Err(Error::Quadrature { change, tol: cfg.tol, nodes: cfg.nodes_x.max(cfg.nodes_y) * 2 });
    }
    Ok(fine)
}

fn zonal_at(sig: Signature, rep: RepParam, alpha: f64, nx: usize, ny: usize) -> Result<ComplexScalar> {
    let px = SphereRule::new(sig.p(), nx)?;
    let qy = SphereRule::new(sig.q(), ny)?;
    let kernel = kernel_grid(&px, &qy, rep.sigma, alpha);
    let stride = qy.angles.len();
    let num = double_sum(&px, &qy, |i, j| kernel[i * stride + j]);
    let den = double_sum(&px, &qy, |_, _| Complex64::new(1.0, 0.0));
    Ok(num / den)
}

/// `Z_σ(α)` as the normalized average of `Θ^{σ/2}` over both spheres.
/// Accepts `q = 1`. Fails if doubling the nodes moves the value by more than
/// `cfg.tol`.
pub fn quad_zonal(sig: Signature, rep: RepParam, alpha: Rapidity, cfg: &QuadratureConfig) -> Result<ComplexScalar> {
    rep.require_even()?;
    cfg.check()?;
    let a = alpha.alpha();
    let coarse = zonal_at(sig, rep, a, cfg.nodes_x, cfg.nodes_y)?;
    let fine_cfg = cfg.doubled();
    let fine = zonal_at(sig, rep, a, fine_cfg.nodes_x, fine_cfg.nodes_y)?;
    doubling_check(coarse, fine, cfg)
}

/// Per-factor integral constant and basis function for the associated
/// integrals: `2π a^n_k C_k^{(n-2)/2}(cos θ)` for `n ≥ 3`,
/// `e^{-ikθ} / 2π` on a circle.
fn assoc_factor(n: u32, k: i64, angles: &[f64]) -> Result<Vec<ComplexScalar>> {
    match n {
        2 => {
            let c = 1.0 / (2.0 * PI);
            Ok(angles.iter().map(|t| Complex64::from_polar(c, -(k as f64) * t)).collect())
        }
        n if n >= 3 => {
            if k < 0 {
                return Err(Error::Domain(format!("negative label {k} on a sphere of dimension {n}")));
            }
            let c = 2.0 * PI * assoc_coeff(n, k as usize)?;
            let lam = (n as f64 - 2.0) / 2.0;
            Ok(angles.iter().map(|t| Complex64::new(c * gegenbauer_unchecked(k as usize, lam, t.cos()), 0.0)).collect())
        }
        _ => Err(Error::Domain(format!("associated functions need sphere dimension >= 2, got {n}"))),
    }
}

fn assoc_at(sig: Signature, rep: RepParam, lambda: i64, mu: i64, alpha: f64, nx: usize, ny: usize) -> Result<ComplexScalar> {
    let px = SphereRule::new(sig.p(), nx)?;
    let qy = SphereRule::new(sig.q(), ny)?;
    let gp = assoc_factor(sig.p(), mu, &px.angles)?;
    let gq = assoc_factor(sig.q(), lambda, &qy.angles)?;
    let kernel = kernel_grid(&px, &qy, rep.sigma, alpha);
    let stride = qy.angles.len();
    Ok(double_sum(&px, &qy, |i, j| kernel[i * stride + j] * gp[i] * gq[j]))
}

/// `℘_{λμ}` by quadrature for integer labels; circle factors admit negative
/// labels. The signature may be given in either order.
pub fn quad_assoc_labels(
    sig: Signature,
    rep: RepParam,
    lambda: i64,
    mu: i64,
    alpha: Rapidity,
    cfg: &QuadratureConfig,
) -> Result<ComplexScalar> {
    sig.require_associated()?;
    rep.require_even()?;
    cfg.check()?;
    let a = alpha.alpha();
    let coarse = assoc_at(sig, rep, lambda, mu, a, cfg.nodes_x, cfg.nodes_y)?;
    let fine_cfg = cfg.doubled();
    let fine = assoc_at(sig, rep, lambda, mu, a, fine_cfg.nodes_x, fine_cfg.nodes_y)?;
    doubling_check(coarse, fine, cfg)
}

/// `℘^{pqν}_{σsr}(α)` by quadrature with the per-sphere constants `a^p_μ`.
pub fn quad_assoc(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: Rapidity,
    cfg: &QuadratureConfig,
) -> Result<ComplexScalar> {
    quad_assoc_labels(sig, rep, idx.lambda() as i64, idx.mu() as i64, alpha, cfg)
}

/// Labels `(λ, μ)` of a basis element with `l = m = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub lambda: i64,
    pub mu: i64,
}

fn basis_values(sig: Signature, label: BasisLabel, px: &SphereRule, qy: &SphereRule) -> Result<(f64, Vec<ComplexScalar>, Vec<ComplexScalar>)> {
    let (p, q) = (sig.p(), sig.q());
    let nonneg = |k: i64, n: u32| -> Result<usize> {
        if k < 0 && n >= 3 {
            return Err(Error::Domain(format!("negative label {k} on a sphere of dimension {n}")));
        }
        Ok(k.unsigned_abs() as usize)
    };
    let (lam, mu) = (nonneg(label.lambda, q)?, nonneg(label.mu, p)?);
    let norm = match (p >= 3, q) {
        (true, q) if q >= 3 => basis_norm_general(sig, lam, 0, mu, 0)?,
        (true, 2) => basis_norm_q2(p, mu, 0)?,
        (false, 2) => 1.0 / (2.0 * PI),
        _ => {
            return Err(Error::Signature { p, q, reason: "the canonical basis needs q >= 2" });
        }
    };
    let factor = |n: u32, k: i64, angles: &[f64]| -> Vec<ComplexScalar> {
        if n == 2 {
            angles.iter().map(|t| Complex64::from_polar(1.0, k as f64 * t)).collect()
        } else {
            let l = (n as f64 - 2.0) / 2.0;
            angles.iter().map(|t| Complex64::new(gegenbauer_unchecked(k as usize, l, t.cos()), 0.0)).collect()
        }
    };
    Ok((norm, factor(p, label.mu, &px.angles), factor(q, label.lambda, &qy.angles)))
}

/// Gram matrix `(Ξ_i, Ξ_j)` of the normalized basis elements with the given
/// labels under the unnormalized product measure.
pub fn gram_matrix(sig: Signature, labels: &[BasisLabel], cfg: &QuadratureConfig) -> Result<Vec<Vec<ComplexScalar>>> {
    cfg.check()?;
    let px = SphereRule::new(sig.p(), cfg.nodes_x)?;
    let qy = SphereRule::new(sig.q(), cfg.nodes_y)?;
    let values = labels
        .iter()
        .map(|&l| basis_values(sig, l, &px, &qy))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![vec![Complex64::new(0.0, 0.0); labels.len()]; labels.len()];
    for (i, (ni, gpi, gqi)) in values.iter().enumerate() {
        for (j, (nj, gpj, gqj)) in values.iter().enumerate() {
            out[i][j] = double_sum(&px, &qy, |a, b| gpi[a] * gqi[b] * (gpj[a] * gqj[b]).conj()) * (ni * nj);
        }
    }
    Ok(out)
}

/// `a_{λμ} / a_00` times the basis function of one factor at angle `θ`:
/// `V_n 2π a^n_k C_k^{(n-2)/2}(cos θ)` for `n ≥ 3`, `e^{ikθ}` on a circle.
fn expansion_factor(n: u32, k: i64, angle: f64) -> Result<ComplexScalar> {
    if n == 2 {
        return Ok(Complex64::from_polar(1.0, k as f64 * angle));
    }
    let c = sphere_mass(n) * 2.0 * PI * assoc_coeff(n, k as usize)?;
    Ok(Complex64::new(c * gegenbauer_unchecked(k as usize, (n as f64 - 2.0) / 2.0, angle.cos()), 0.0))
}

fn label_range(n: u32, n_max: usize) -> Vec<i64> {
    let n_max = n_max as i64;
    if n == 2 {
        (-n_max..=n_max).collect()
    } else {
        (0..=n_max).collect()
    }
}

/// Largest deviation over `samples = [(χ, φ)]` between `Θ^{σ/2}` and its
/// expansion `Σ ℘_{λμ} (a_{λμ}/a_00) g_μ(χ) g_λ(φ)` truncated at
/// `|λ|, |μ| ≤ n_max`, with the coefficients from [`assoc_series`].
pub fn expansion_residual(
    sig: Signature,
    rep: RepParam,
    alpha: Rapidity,
    n_max: usize,
    samples: &[(f64, f64)],
    cfg: &SeriesConfig,
) -> Result<f64> {
    sig.require_associated()?;
    rep.require_even()?;
    let mut terms = Vec::new();
    for mu in label_range(sig.p(), n_max) {
        for lambda in label_range(sig.q(), n_max) {
            if (lambda - mu) % 2 != 0 {
                continue;
            }
            let idx = AssocIndex::from_labels(lambda.unsigned_abs() as usize, mu.unsigned_abs() as usize)?;
            let coeff = assoc_series(sig, rep, idx, alpha, cfg)?.value;
            terms.push((lambda, mu, coeff));
        }
    }
    let a = alpha.alpha();
    let mut worst = 0.0f64;
    for &(chi, phi) in samples {
        let exact = (rep.sigma / 2.0 * theta_unchecked(a, chi.cos(), phi.cos()).ln()).exp();
        let mut approx = Complex64::new(0.0, 0.0);
        for &(lambda, mu, coeff) in &terms {
            approx += coeff * expansion_factor(sig.p(), mu, chi)? * expansion_factor(sig.q(), lambda, phi)?;
        }
        worst = worst.max((exact - approx).norm());
    }
    Ok(worst)
}
