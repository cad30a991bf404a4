//! Zonal and associated spherical functions of `SO(p, q)` in the rapidity
//! `α`, by two independent series paths.
//!
//! * the single-index `l`-sums over terminating Appell `F2(…; 1, 1)`
//!   coefficients ([`zonal_series`], [`assoc_series`]);
//! * the compact two-variable Horn `₅F₃` forms at `(th²α, th²α)`
//!   ([`zonal_horn`], [`assoc_horn`]).
//!
//! Both converge only for `th²α < 1/2` as double series, so every entry point
//! enforces a configurable guard on `th²α` (default [`DEFAULT_TANH_SQ_LIMIT`]).
//!
//! The associated normalization is the one that makes
//! `℘_{000} = Z` and `℘_{λμ} = (T(g_α) Ξ_00, Ξ_λμ)` with the orthonormal basis
//! `Ξ`; per sphere factor of dimension `n ≥ 3` and label `k` it contributes
//!
//! ```text
//! f_n(k) = Γ(n/2)/Γ(k+n/2) · sqrt[Γ(k+n-2)(2k+n-2) / (k! Γ(n-1))]
//! ```
//!
//! and `1/k!` for a circle factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyper::{appell_f2_unit, horn_eval, horn_validate, HornParamGroup, HornSeriesSpec, SeriesAccumulator, SeriesResult};
use crate::orthopoly::Signature;
use crate::scalar::{factorial, ln_gamma_real, pochhammer, pochhammer_real, sign_pow, ComplexScalar};

/// Default guard on `th²α`, strictly inside `ch 2α < 3`.
pub const DEFAULT_TANH_SQ_LIMIT: f64 = 0.49;

/// Default relative tolerance of the series paths.
pub const DEFAULT_TOL: f64 = 1e-14;

/// Default term (or shell) budget.
pub const DEFAULT_MAX_TERMS: usize = 2000;

/// Representation parameters `(σ, ε)`; `ε ∈ {0, 1}` is the parity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParam {
    pub sigma: ComplexScalar,
    pub epsilon: u8,
}

impl RepParam {
    pub fn new(sigma: ComplexScalar, epsilon: u8) -> Result<Self> {
        if epsilon > 1 {
            return Err(Error::Domain(format!("epsilon must be 0 or 1, got {epsilon}")));
        }
        if !(sigma.re.is_finite() && sigma.im.is_finite()) {
            return Err(Error::NonFinite("sigma"));
        }
        Ok(Self { sigma, epsilon })
    }

    /// Even representation with degree `sigma`.
    pub fn even(sigma: ComplexScalar) -> Result<Self> {
        Self::new(sigma, 0)
    }

    pub fn require_even(&self) -> Result<()> {
        if self.epsilon != 0 {
            return Err(Error::Parity(self.epsilon));
        }
        Ok(())
    }

    /// On the principal unitary line `Re σ = -(p+q-2)/2`.
    pub fn is_principal(&self, sig: Signature) -> bool {
        (self.sigma.re - sig.principal_re_sigma()).abs() <= 1e-12
    }

    /// The equivalent representation `σ ↦ 2 - p - q - σ`.
    pub fn partner(&self, sig: Signature) -> Self {
        let shift = 2.0 - (sig.p() + sig.q()) as f64;
        Self { sigma: shift - self.sigma, epsilon: self.epsilon }
    }
}

/// Labels `(ν, s, r)` with `λ = ν + 2r` on the q-sphere and `μ = ν + 2s` on
/// the p-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AssocIndex {
    pub nu: u8,
    pub s: usize,
    pub r: usize,
}

impl AssocIndex {
    pub fn new(nu: u8, s: usize, r: usize) -> Result<Self> {
        if nu > 1 {
            return Err(Error::Domain(format!("nu must be 0 or 1, got {nu}")));
        }
        Ok(Self { nu, s, r })
    }

    /// From basis labels; `λ` and `μ` must share parity.
    pub fn from_labels(lambda: usize, mu: usize) -> Result<Self> {
        if lambda % 2 != mu % 2 {
            return Err(Error::Domain(format!("lambda={lambda} and mu={mu} differ in parity")));
        }
        let nu = (lambda % 2) as u8;
        Ok(Self { nu, s: (mu - nu as usize) / 2, r: (lambda - nu as usize) / 2 })
    }

    pub fn lambda(&self) -> usize {
        self.nu as usize + 2 * self.r
    }

    pub fn mu(&self) -> usize {
        self.nu as usize + 2 * self.s
    }

    /// `(ν, r, s)`, the index matching a swapped signature.
    pub fn swapped(&self) -> Self {
        Self { nu: self.nu, s: self.r, r: self.s }
    }

    pub fn is_zonal(&self) -> bool {
        self.nu == 0 && self.s == 0 && self.r == 0
    }
}

/// Group parameter `α ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rapidity {
    alpha: f64,
}

impl Rapidity {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::Domain(format!("rapidity must be finite and non-negative, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tanh_sq(&self) -> f64 {
        let t = self.alpha.tanh();
        t * t
    }

    /// `ch 2α < 3`, the domain where the double series converge.
    pub fn in_convergence_domain(&self) -> bool {
        (2.0 * self.alpha).cosh() < 3.0
    }
}

/// Tolerance, term budget and `th²α` guard for the series paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub tol: f64,
    pub max_terms: usize,
    pub tanh_sq_limit: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_terms: DEFAULT_MAX_TERMS, tanh_sq_limit: DEFAULT_TANH_SQ_LIMIT }
    }
}

impl SeriesConfig {
    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Self { max_terms, ..self }
    }

    /// Overrides the guard; anything at or above 1 is rejected on use.
    pub fn with_tanh_sq_limit(self, tanh_sq_limit: f64) -> Self {
        Self { tanh_sq_limit, ..self }
    }

    fn check(&self, alpha: Rapidity) -> Result<()> {
        if !(self.tol > 0.0) || self.max_terms == 0 {
            return Err(Error::Domain("series tolerance must be positive and max_terms at least 1".into()));
        }
        if !(self.tanh_sq_limit > 0.0 && self.tanh_sq_limit < 1.0) {
            return Err(Error::Domain(format!("th^2 guard must lie in (0, 1), got {}", self.tanh_sq_limit)));
        }
        let t2 = alpha.tanh_sq();
        if t2 > self.tanh_sq_limit {
            return Err(Error::ConvergenceDomain { tanh_sq: t2, limit: self.tanh_sq_limit });
        }
        Ok(())
    }
}

/// `Θ = 1 + (x²+y²) sh²α - 2xy shα chα`, evaluated as the sum of squares
/// `(y chα - x shα)² + (1 - y²)`.
pub fn theta(alpha: f64, x: f64, y: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 && y.abs() <= 1.0) {
        return Err(Error::Domain(format!("theta needs |x|, |y| <= 1, got ({x}, {y})")));
    }
    Ok(theta_unchecked(alpha, x, y))
}

pub(crate) fn theta_unchecked(alpha: f64, x: f64, y: f64) -> f64 {
    let d = y * alpha.cosh() - x * alpha.sinh();
    d * d + (1.0 - y * y)
}

fn half(x: f64) -> Complex64 {
    Complex64::new(0.5 * x, 0.0)
}

/// `Z_σ(α) = (1/chα) Σ_l ((1/2)_l / l!) F2(-σ/2, -l, -l; p/2, q/2; 1, 1) th^{2l}α`.
///
/// Also admits `q = 1`.
pub fn zonal_series(sig: Signature, rep: RepParam, alpha: Rapidity, cfg: &SeriesConfig) -> Result<SeriesResult> {
    rep.require_even()?;
    cfg.check(alpha)?;
    let t2 = alpha.tanh_sq();
    let a = -rep.sigma / 2.0;
    let (b1, b2) = (half(sig.p() as f64), half(sig.q() as f64));
    let mut acc = SeriesAccumulator::new(cfg.tol);
    let mut weight = 1.0f64;
    let mut converged = false;
    for l in 0..cfg.max_terms {
        if l == 0 || weight != 0.0 {
            let f2 = appell_f2_unit(a, l, l, b1, b2)?;
            converged = acc.push(f2 * weight);
        } else {
            converged = acc.push(Complex64::new(0.0, 0.0));
        }
        if converged {
            break;
        }
        weight *= (l as f64 + 0.5) / (l as f64 + 1.0) * t2;
    }
    Ok(acc.finish(converged)?.scaled(Complex64::new(1.0 / alpha.alpha().cosh(), 0.0)))
}

/// Per-sphere normalization factor `f_n(k)`; `1/k!` on a circle.
pub fn sphere_factor(n: u32, k: usize) -> Result<f64> {
    match n {
        0 | 1 => Err(Error::Domain(format!("associated functions need sphere dimension n >= 2, got {n}"))),
        2 => Ok(1.0 / factorial(k)),
        _ => {
            let (nf, kf) = (n as f64, k as f64);
            let ln = ln_gamma_real(nf / 2.0)? - ln_gamma_real(kf + nf / 2.0)?
                + 0.5
                    * (ln_gamma_real(kf + nf - 2.0)? + (2.0 * kf + nf - 2.0).ln()
                        - ln_gamma_real(kf + 1.0)?
                        - ln_gamma_real(nf - 1.0)?);
            Ok(ln.exp())
        }
    }
}

/// Constant prefactor of the associated `l`-sum,
/// `2^{-ν} (-σ/2)_{s+r+ν} f_p(μ) f_q(λ)`.
pub fn assoc_normalization(sig: Signature, rep: RepParam, idx: AssocIndex) -> Result<ComplexScalar> {
    let nu = idx.nu as usize;
    let poch = pochhammer(-rep.sigma / 2.0, idx.s + idx.r + nu);
    let factors = sphere_factor(sig.p(), idx.mu())? * sphere_factor(sig.q(), idx.lambda())?;
    Ok(poch * (factors * 0.5f64.powi(nu as i32)))
}

/// Associated function `℘^{pqν}_{σsr}(α)` by the `l`-sum
///
/// `(-1)^{s+r}/chα · N · Σ_{l ≥ max(s,r)} l!(ν+1/2)_l/((l-s)!(l-r)!)
///   F2(s+r+ν-σ/2, s-l, r-l; 2s+ν+p/2, 2r+ν+q/2; 1, 1) th^{2l+ν}α`
///
/// with `N` from [`assoc_normalization`]. Accepts either order of `p, q`.
pub fn assoc_series(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: Rapidity,
    cfg: &SeriesConfig,
) -> Result<SeriesResult> {
    sig.require_associated()?;
    rep.require_even()?;
    cfg.check(alpha)?;
    let norm = assoc_normalization(sig, rep, idx)?;
    if norm == Complex64::new(0.0, 0.0) {
        return Ok(SeriesResult::exact(norm, 0));
    }
    let (s, r, nu) = (idx.s, idx.r, idx.nu as usize);
    let (p, q) = (sig.p() as f64, sig.q() as f64);
    let a = Complex64::new((s + r + nu) as f64, 0.0) - rep.sigma / 2.0;
    let b1 = Complex64::new((2 * s + nu) as f64 + p / 2.0, 0.0);
    let b2 = Complex64::new((2 * r + nu) as f64 + q / 2.0, 0.0);
    let t = alpha.alpha().tanh();
    let t2 = t * t;
    let l0 = s.max(r);
    let ln_w0 = ln_gamma_real(l0 as f64 + 1.0)? - ln_gamma_real((l0 - s) as f64 + 1.0)? - ln_gamma_real((l0 - r) as f64 + 1.0)?;
    let mut weight = ln_w0.exp() * pochhammer_real(nu as f64 + 0.5, l0) * t.powi((2 * l0 + nu) as i32);

    let mut acc = SeriesAccumulator::new(cfg.tol);
    let mut converged = false;
    for l in l0..l0 + cfg.max_terms {
        let term = if weight == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            appell_f2_unit(a, l - s, l - r, b1, b2)? * weight
        };
        converged = acc.push(term);
        if converged {
            break;
        }
        let lf = l as f64;
        weight *= (lf + 1.0) * (nu as f64 + 0.5 + lf) / (((l + 1 - s) as f64) * ((l + 1 - r) as f64)) * t2;
    }
    let pref = norm * (sign_pow(s + r) / alpha.alpha().cosh());
    Ok(acc.finish(converged)?.scaled(pref))
}

/// Shell magnitudes of the associated `l`-sum (terms before the prefactor),
/// for diagnostics of the geometric tail.
pub fn assoc_shell_magnitudes(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: Rapidity,
    shells: usize,
) -> Result<Vec<f64>> {
    let cfg = SeriesConfig::default().with_tol(f64::MIN_POSITIVE).with_max_terms(shells);
    sig.require_associated()?;
    rep.require_even()?;
    cfg.check(alpha)?;
    let (s, r, nu) = (idx.s, idx.r, idx.nu as usize);
    let (p, q) = (sig.p() as f64, sig.q() as f64);
    let a = Complex64::new((s + r + nu) as f64, 0.0) - rep.sigma / 2.0;
    let b1 = Complex64::new((2 * s + nu) as f64 + p / 2.0, 0.0);
    let b2 = Complex64::new((2 * r + nu) as f64 + q / 2.0, 0.0);
    let t = alpha.alpha().tanh();
    let l0 = s.max(r);
    let mut out = Vec::with_capacity(shells);
    for l in l0..l0 + shells {
        let ln_w = ln_gamma_real(l as f64 + 1.0)? - ln_gamma_real((l - s) as f64 + 1.0)? - ln_gamma_real((l - r) as f64 + 1.0)?;
        let w = ln_w.exp() * pochhammer_real(nu as f64 + 0.5, l) * t.powi((2 * l + nu) as i32);
        out.push((appell_f2_unit(a, l - s, l - r, b1, b2)? * w).norm());
    }
    Ok(out)
}

/// Series value together with the Horn specification that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct HornEvaluation {
    pub result: SeriesResult,
    pub spec: HornSeriesSpec,
}

/// Row assignment of the zonal `₅F₃` over the symbols
/// `{1/2, 1, -σ/2, (q+σ)/2, (p+σ)/2 | p/2, q/2, 1}`.
pub const ZONAL_NUM_ROWS: [[u32; 2]; 5] = [[1, 1], [1, 1], [1, 0], [0, 1], [0, 1]];
pub const ZONAL_DEN_ROWS: [[u32; 2]; 3] = [[1, 1], [1, 1], [0, 1]];

/// Row assignment of the associated `₅F₃` over the symbols
/// `{s+1, s+ν+1/2, s+r+ν-σ/2, (q+σ)/2, s-r+(p+σ)/2 | 2s+ν+p/2, s+r+ν+q/2, 1+s-r}`.
pub const ASSOC_NUM_ROWS: [[u32; 2]; 5] = [[1, 1], [1, 1], [1, 0], [0, 1], [0, 1]];
pub const ASSOC_DEN_ROWS: [[u32; 2]; 3] = [[1, 1], [1, 1], [0, 1]];

/// Numerator and denominator symbols of the zonal Horn form.
pub fn zonal_horn_symbols(sig: Signature, rep: RepParam) -> (Vec<ComplexScalar>, Vec<ComplexScalar>) {
    let (p, q, sg) = (sig.p() as f64, sig.q() as f64, rep.sigma);
    let c = |x: f64| Complex64::new(x, 0.0);
    (
        vec![c(0.5), c(1.0), -sg / 2.0, (sg + q) / 2.0, (sg + p) / 2.0],
        vec![c(p / 2.0), c(q / 2.0), c(1.0)],
    )
}

/// Numerator and denominator symbols of the associated Horn form, `s ≥ r`.
pub fn assoc_horn_symbols(sig: Signature, rep: RepParam, idx: AssocIndex) -> (Vec<ComplexScalar>, Vec<ComplexScalar>) {
    let (p, q, sg) = (sig.p() as f64, sig.q() as f64, rep.sigma);
    let (s, r, nu) = (idx.s as f64, idx.r as f64, idx.nu as f64);
    let c = |x: f64| Complex64::new(x, 0.0);
    (
        vec![c(s + 1.0), c(s + nu + 0.5), c(s + r + nu) - sg / 2.0, (sg + q) / 2.0, (sg + p) / 2.0 + (s - r)],
        vec![c(2.0 * s + nu + p / 2.0), c(s + r + nu + q / 2.0), c(1.0 + s - r)],
    )
}

/// Builds a spec from symbols and per-symbol rows, grouping equal rows.
pub fn assemble_horn(
    num: &[ComplexScalar],
    num_rows: &[[u32; 2]],
    den: &[ComplexScalar],
    den_rows: &[[u32; 2]],
    x: ComplexScalar,
) -> HornSeriesSpec {
    fn group(symbols: &[ComplexScalar], rows: &[[u32; 2]]) -> Vec<HornParamGroup> {
        let mut out: Vec<HornParamGroup> = Vec::new();
        for (&a, row) in symbols.iter().zip(rows) {
            match out.iter_mut().find(|g| g.row == row) {
                Some(g) => g.params.push(a),
                None => out.push(HornParamGroup::new(row.to_vec(), vec![a])),
            }
        }
        out
    }
    HornSeriesSpec { numerator: group(num, num_rows), denominator: group(den, den_rows), args: vec![x, x] }
}

/// The stored zonal Horn specification at `th²α`.
pub fn zonal_horn_spec(sig: Signature, rep: RepParam, alpha: Rapidity) -> HornSeriesSpec {
    let (num, den) = zonal_horn_symbols(sig, rep);
    assemble_horn(&num, &ZONAL_NUM_ROWS, &den, &ZONAL_DEN_ROWS, Complex64::new(alpha.tanh_sq(), 0.0))
}

/// The stored associated Horn specification at `th²α`, `s ≥ r`.
pub fn assoc_horn_spec(sig: Signature, rep: RepParam, idx: AssocIndex, alpha: Rapidity) -> HornSeriesSpec {
    let (num, den) = assoc_horn_symbols(sig, rep, idx);
    assemble_horn(&num, &ASSOC_NUM_ROWS, &den, &ASSOC_DEN_ROWS, Complex64::new(alpha.tanh_sq(), 0.0))
}

fn checked_spec(spec: HornSeriesSpec) -> Result<HornSeriesSpec> {
    if !horn_validate(&spec) {
        return Err(Error::ReconstructionMismatch("stored Horn specification is unbalanced".into()));
    }
    Ok(spec)
}

/// `Z_σ(α)` through the two-variable Horn `₅F₃` at `(th²α, th²α)`, scaled by
/// `1/chα`.
pub fn zonal_horn(sig: Signature, rep: RepParam, alpha: Rapidity, cfg: &SeriesConfig) -> Result<HornEvaluation> {
    rep.require_even()?;
    cfg.check(alpha)?;
    let spec = checked_spec(zonal_horn_spec(sig, rep, alpha))?;
    let result = horn_eval(&spec, cfg.tol, cfg.max_terms)?;
    let result = result.scaled(Complex64::new(1.0 / alpha.alpha().cosh(), 0.0));
    Ok(HornEvaluation { result, spec })
}

/// Constant in front of the associated Horn form for `s ≥ r`:
/// `N (2s+ν)! ((2-σ-q)/2)_{s-r} / ((s-r)! 4^s (2r+ν+q/2)_{s-r})`.
pub fn assoc_horn_prefactor(sig: Signature, rep: RepParam, idx: AssocIndex) -> Result<ComplexScalar> {
    if idx.s < idx.r {
        return Err(Error::Domain("Horn prefactor is defined for s >= r".into()));
    }
    let (s, r, nu) = (idx.s, idx.r, idx.nu as usize);
    let d = s - r;
    let q = sig.q() as f64;
    let a3 = pochhammer((Complex64::new(2.0 - q, 0.0) - rep.sigma) / 2.0, d)
        * (factorial(2 * s + nu) / (factorial(d) * 4f64.powi(s as i32)));
    let gap = pochhammer_real((2 * r + nu) as f64 + q / 2.0, d);
    Ok(assoc_normalization(sig, rep, idx)? * a3 / gap)
}

/// `℘^{pqν}_{σsr}(α)` through the associated Horn `₅F₃`. For `s < r` the
/// value is taken from the swapped signature and labels.
pub fn assoc_horn(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: Rapidity,
    cfg: &SeriesConfig,
) -> Result<HornEvaluation> {
    sig.require_associated()?;
    rep.require_even()?;
    cfg.check(alpha)?;
    if idx.s < idx.r {
        return assoc_horn(sig.swapped(), rep, idx.swapped(), alpha, cfg);
    }
    let spec = checked_spec(assoc_horn_spec(sig, rep, idx, alpha))?;
    let pref = assoc_horn_prefactor(sig, rep, idx)?;
    if pref == Complex64::new(0.0, 0.0) {
        return Ok(HornEvaluation { result: SeriesResult::exact(pref, 0), spec });
    }
    let t = alpha.alpha().tanh();
    let scale = pref * (t.powi((2 * idx.s + idx.nu as usize) as i32) / alpha.alpha().cosh());
    let result = horn_eval(&spec, cfg.tol, cfg.max_terms)?.scaled(scale);
    Ok(HornEvaluation { result, spec })
}

/// A balanced row assignment found by [`enumerate_horn`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornCandidate {
    pub numerator_rows: Vec<[u32; 2]>,
    pub denominator_rows: Vec<[u32; 2]>,
}

const CANDIDATE_ROWS: [[u32; 2]; 3] = [[1, 0], [0, 1], [1, 1]];

fn assignments(len: usize) -> Vec<Vec<[u32; 2]>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                CANDIDATE_ROWS.iter().map(move |row| {
                    let mut v = prefix.clone();
                    v.push(*row);
                    v
                })
            })
            .collect();
    }
    out
}

/// All balanced assignments of rows `(1,0), (0,1), (1,1)` to the symbols
/// whose Horn series matches `reference` at every probe `(x, value)` to
/// `rel_tol`.
pub fn enumerate_horn(
    num: &[ComplexScalar],
    den: &[ComplexScalar],
    probes: &[(ComplexScalar, ComplexScalar)],
    rel_tol: f64,
) -> Vec<HornCandidate> {
    let nums = assignments(num.len());
    let dens = assignments(den.len());
    let mut hits = Vec::new();
    for un in &nums {
        for vd in &dens {
            let balanced = (0..2).all(|j| {
                un.iter().map(|u| u[j]).sum::<u32>() == vd.iter().map(|v| v[j]).sum::<u32>() + 1
            });
            if !balanced {
                continue;
            }
            let matches = probes.iter().all(|&(x, want)| {
                let spec = assemble_horn(num, un, den, vd, x);
                match horn_eval(&spec, 1e-15, 400) {
                    Ok(res) => res.converged && (res.value - want).norm() <= rel_tol * want.norm(),
                    Err(_) => false,
                }
            });
            if matches {
                hits.push(HornCandidate { numerator_rows: un.clone(), denominator_rows: vd.clone() });
            }
        }
    }
    hits
}

/// Probe rapidities of the reconstruction.
pub const RECONSTRUCTION_PROBES: [f64; 3] = [0.2, 0.35, 0.5];

/// Enumerates the zonal Horn assignments that reproduce [`zonal_series`] on
/// the probe grid and checks the stored assignment is among them.
pub fn reconstruct_zonal_horn(sig: Signature, rep: RepParam) -> Result<Vec<HornCandidate>> {
    let cfg = SeriesConfig::default();
    let mut probes = Vec::new();
    for a in RECONSTRUCTION_PROBES {
        let alpha = Rapidity::new(a)?;
        let z = zonal_series(sig, rep, alpha, &cfg)?.value * a.cosh();
        probes.push((Complex64::new(alpha.tanh_sq(), 0.0), z));
    }
    let (num, den) = zonal_horn_symbols(sig, rep);
    let hits = enumerate_horn(&num, &den, &probes, 1e-10);
    stored_among(hits, &ZONAL_NUM_ROWS, &ZONAL_DEN_ROWS)
}

/// Same as [`reconstruct_zonal_horn`] for the associated form, `s ≥ r`.
pub fn reconstruct_assoc_horn(sig: Signature, rep: RepParam, idx: AssocIndex) -> Result<Vec<HornCandidate>> {
    if idx.s < idx.r {
        return Err(Error::Domain("reconstruction of the associated form needs s >= r".into()));
    }
    let cfg = SeriesConfig::default();
    let pref = assoc_horn_prefactor(sig, rep, idx)?;
    if pref == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("the associated function vanishes identically for these labels".into()));
    }
    let mut probes = Vec::new();
    for a in RECONSTRUCTION_PROBES {
        let alpha = Rapidity::new(a)?;
        let v = assoc_series(sig, rep, idx, alpha, &cfg)?.value;
        let scale = pref * (alpha.alpha().tanh().powi((2 * idx.s + idx.nu as usize) as i32) / a.cosh());
        probes.push((Complex64::new(alpha.tanh_sq(), 0.0), v / scale));
    }
    let (num, den) = assoc_horn_symbols(sig, rep, idx);
    let hits = enumerate_horn(&num, &den, &probes, 1e-10);
    stored_among(hits, &ASSOC_NUM_ROWS, &ASSOC_DEN_ROWS)
}

fn stored_among(hits: Vec<HornCandidate>, num: &[[u32; 2]], den: &[[u32; 2]]) -> Result<Vec<HornCandidate>> {
    if hits.is_empty() {
        return Err(Error::ReconstructionMismatch("no balanced assignment reproduces the series".into()));
    }
    let stored = HornCandidate { numerator_rows: num.to_vec(), denominator_rows: den.to_vec() };
    if !hits.contains(&stored) {
        return Err(Error::ReconstructionMismatch(format!("stored assignment not among {} hits", hits.len())));
    }
    Ok(hits)
}

/// `|℘^{pqν}_{σsr}(α) - ℘^{qpν}_{σrs}(α)|` from two [`assoc_series`] calls.
pub fn symmetry_check(sig: Signature, rep: RepParam, idx: AssocIndex, alpha: Rapidity, cfg: &SeriesConfig) -> Result<f64> {
    let (a, b) = symmetry_pair(sig, rep, idx, alpha, cfg)?;
    Ok((a - b).norm())
}

/// Both sides of the `p ↔ q`, `s ↔ r` symmetry.
pub fn symmetry_pair(
    sig: Signature,
    rep: RepParam,
    idx: AssocIndex,
    alpha: Rapidity,
    cfg: &SeriesConfig,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let a = assoc_series(sig, rep, idx, alpha, cfg)?.value;
    let b = assoc_series(sig.swapped(), rep, idx.swapped(), alpha, cfg)?.value;
    Ok((a, b))
}

/// `|Z_σ(α) - Z_{2-p-q-σ}(α)|` via [`zonal_series`].
pub fn unitary_pair_check(sig: Signature, rep: RepParam, alpha: Rapidity, cfg: &SeriesConfig) -> Result<f64> {
    let a = zonal_series(sig, rep, alpha, cfg)?.value;
    let b = zonal_series(sig, rep.partner(sig), alpha, cfg)?.value;
    Ok((a - b).norm())
}
