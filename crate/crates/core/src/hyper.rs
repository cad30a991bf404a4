//! Hypergeometric engines: terminating Appell `F2` double sums and a
//! two-variable Horn series evaluator.
//!
//! A Horn series is
//!
//! ```text
//! Σ_{n1,n2 ≥ 0}  Π_α (a_α)_{u_α·n} / Π_β (b_β)_{v_β·n} · X1^n1 X2^n2 / (n1! n2!)
//! ```
//!
//! with integer rows `u_α, v_β` and the per-variable balance
//! `Σ_α u_{αj} = Σ_β v_{βj} + 1`. Parameters sharing a row are grouped into
//! one [`HornParamGroup`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, ComplexScalar};

/// Consecutive small shells required before the tail test is applied.
const TAIL_BLOCK: usize = 3;

/// Parameters sharing one coefficient row.
#[derive(Debug, Clone, PartialEq)]
pub struct HornParamGroup {
    pub row: Vec<u32>,
    pub params: Vec<ComplexScalar>,
}

impl HornParamGroup {
    pub fn new(row: impl Into<Vec<u32>>, params: impl Into<Vec<ComplexScalar>>) -> Self {
        Self { row: row.into(), params: params.into() }
    }

    /// Group with real parameters.
    pub fn real(row: impl Into<Vec<u32>>, params: &[f64]) -> Self {
        Self::new(row, params.iter().map(|&a| Complex64::new(a, 0.0)).collect::<Vec<_>>())
    }
}

/// Numerator and denominator groups plus the argument vector.
///
/// The data model carries rows of any length; evaluation is implemented for
/// two variables.
#[derive(Debug, Clone, PartialEq)]
pub struct HornSeriesSpec {
    pub numerator: Vec<HornParamGroup>,
    pub denominator: Vec<HornParamGroup>,
    pub args: Vec<ComplexScalar>,
}

/// Value of a truncated series with its convergence bookkeeping.
///
/// `tail_estimate` is relative to `|value|` (absolute when the value is zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: ComplexScalar,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl SeriesResult {
    pub fn exact(value: ComplexScalar, terms_used: usize) -> Self {
        Self { value, terms_used, tail_estimate: 0.0, converged: true }
    }

    pub(crate) fn scaled(self, factor: ComplexScalar) -> Self {
        Self { value: self.value * factor, ..self }
    }
}

/// Terminating Appell function of the second kind,
/// `Σ_{m≤l1, n≤l2} (a)_{m+n} (-l1)_m (-l2)_n / ((b1)_m (b2)_n m! n!) x^m y^n`,
/// summed directly.
pub fn appell_f2_terminating(
    a: ComplexScalar,
    l1: usize,
    l2: usize,
    b1: ComplexScalar,
    b2: ComplexScalar,
    x: ComplexScalar,
    y: ComplexScalar,
) -> Result<ComplexScalar> {
    check_denominator(b1, l1)?;
    check_denominator(b2, l2)?;
    // column factors (-l2)_n y^n / ((b2)_n n!)
    let mut col = Vec::with_capacity(l2 + 1);
    let mut c = Complex64::new(1.0, 0.0);
    for n in 0..=l2 {
        col.push(c);
        c *= (n as f64 - l2 as f64) * y / ((b2 + n as f64) * (n as f64 + 1.0));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut row = Complex64::new(1.0, 0.0); // (-l1)_m x^m / ((b1)_m m!)
    let mut poch_m = Complex64::new(1.0, 0.0); // (a)_m
    for m in 0..=l1 {
        let mut poch = poch_m; // (a)_{m+n}
        let mut inner = Complex64::new(0.0, 0.0);
        for (n, cn) in col.iter().enumerate() {
            inner += poch * cn;
            poch *= a + (m + n) as f64;
        }
        total += row * inner;
        row *= (m as f64 - l1 as f64) * x / ((b1 + m as f64) * (m as f64 + 1.0));
        poch_m *= a + m as f64;
    }
    Ok(total)
}

/// Terminating `F2(a; -l1, -l2; b1, b2; 1, 1)` through the Chu–Vandermonde
/// reduction of the inner sum:
///
/// `Σ_{m≤l1} (a)_m (-l1)_m / ((b1)_m m!) · (b2-a-m)_{l2} / (b2)_{l2}`.
///
/// The double sum at unit arguments cancels catastrophically for large
/// `l1, l2`; this single sum does not.
pub fn appell_f2_unit(a: ComplexScalar, l1: usize, l2: usize, b1: ComplexScalar, b2: ComplexScalar) -> Result<ComplexScalar> {
    check_denominator(b1, l1)?;
    check_denominator(b2, l2)?;
    let c = b2 - a;
    let vandermonde = |m: usize| -> ComplexScalar {
        (0..l2).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (c - m as f64 + j as f64) / (b2 + j as f64))
    };
    let mut ratio = vandermonde(0);
    let mut coeff = Complex64::new(1.0, 0.0); // (a)_m (-l1)_m / ((b1)_m m!)
    let mut total = coeff * ratio;
    for m in 1..=l1 {
        let mf = m as f64;
        coeff *= (a + (mf - 1.0)) * (mf - 1.0 - l1 as f64) / ((b1 + (mf - 1.0)) * mf);
        // (c-m)_{l2} = (c-m+1)_{l2} (c-m) / (c-m+l2)
        let den = c - mf + l2 as f64;
        ratio = if ratio == Complex64::new(0.0, 0.0) || den.norm() < 1e-8 {
            vandermonde(m)
        } else {
            ratio * (c - mf) / den
        };
        total += coeff * ratio;
    }
    Ok(total)
}

fn check_denominator(b: ComplexScalar, len: usize) -> Result<()> {
    if is_nonpositive_integer(b) && ((-b.re) as usize) < len {
        return Err(Error::Pole(b.re));
    }
    Ok(())
}

/// True iff the spec is two-variable-consistent and every variable satisfies
/// `Σ_α u_{αj} = Σ_β v_{βj} + 1`.
pub fn horn_validate(spec: &HornSeriesSpec) -> bool {
    balance_report(spec).is_ok()
}

fn balance_report(spec: &HornSeriesSpec) -> std::result::Result<(), String> {
    let vars = spec.args.len();
    if vars == 0 {
        return Err("no arguments".into());
    }
    let groups = spec.numerator.iter().chain(&spec.denominator);
    for g in groups {
        if g.row.len() != vars {
            return Err(format!("row {:?} has {} entries for {} variables", g.row, g.row.len(), vars));
        }
    }
    for j in 0..vars {
        let up: u64 = spec.numerator.iter().map(|g| g.row[j] as u64 * g.params.len() as u64).sum();
        let down: u64 = spec.denominator.iter().map(|g| g.row[j] as u64 * g.params.len() as u64).sum();
        if up != down + 1 {
            return Err(format!("variable {}: numerator weight {} != denominator weight {} + 1", j + 1, up, down));
        }
    }
    Ok(())
}

/// Sums a balanced two-variable Horn series shell by shell (`n1 + n2 = N`).
///
/// Terms follow from their neighbours through Pochhammer ratios. Summation
/// stops once [`TAIL_BLOCK`] consecutive shells are below `tol` relative to
/// the running sum and the geometric tail estimate is below `tol` as well.
/// `max_terms` bounds the number of shells; exhausting it yields
/// `converged = false`, or a divergence error when the last shells were
/// still growing.
pub fn horn_eval(spec: &HornSeriesSpec, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    balance_report(spec).map_err(Error::Unbalanced)?;
    if spec.args.len() != 2 {
        return Err(Error::Domain(format!("horn_eval handles two variables, got {}", spec.args.len())));
    }
    if !(tol > 0.0) || max_terms == 0 {
        return Err(Error::Domain("horn_eval needs tol > 0 and max_terms >= 1".into()));
    }
    for g in &spec.denominator {
        for &b in &g.params {
            if is_nonpositive_integer(b) && g.row.iter().any(|&v| v > 0) {
                return Err(Error::Pole(b.re));
            }
        }
    }
    let (x1, x2) = (spec.args[0], spec.args[1]);

    // Ratio T(n + e_j) / T(n) at the multi-index n = (n1, n2).
    let step = |n1: usize, n2: usize, j: usize| -> ComplexScalar {
        let mut r = if j == 0 { x1 / (n1 as f64 + 1.0) } else { x2 / (n2 as f64 + 1.0) };
        for g in &spec.numerator {
            let base = (g.row[0] as usize * n1 + g.row[1] as usize * n2) as f64;
            for k in 0..g.row[j] {
                for &a in &g.params {
                    r *= a + base + k as f64;
                }
            }
        }
        for g in &spec.denominator {
            let base = (g.row[0] as usize * n1 + g.row[1] as usize * n2) as f64;
            for k in 0..g.row[j] {
                for &b in &g.params {
                    r /= b + base + k as f64;
                }
            }
        }
        r
    };

    let mut shell = vec![Complex64::new(1.0, 0.0)];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut terms = 1usize;
    let mut magnitudes = vec![1.0f64];
    let mut small_run = 0usize;

    for n in 1..max_terms {
        let mut next = Vec::with_capacity(n + 1);
        for (n1, &t) in shell.iter().enumerate() {
            // (n1, n-1-n1) -> (n1, n-n1)
            next.push(if t == Complex64::new(0.0, 0.0) { t } else { t * step(n1, n - 1 - n1, 1) });
        }
        let last = shell[n - 1];
        next.push(if last == Complex64::new(0.0, 0.0) { last } else { last * step(n - 1, 0, 0) });
        let shell_sum: ComplexScalar = next.iter().sum();
        terms += next.len();
        sum += shell_sum;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Divergence { shells: TAIL_BLOCK, at: n });
        }
        let mag = shell_sum.norm();
        magnitudes.push(mag);
        shell = next;

        if mag <= tol * sum.norm() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= TAIL_BLOCK {
            let tail = geometric_tail(&magnitudes);
            let rel = relative(tail, sum);
            if rel <= tol {
                return Ok(SeriesResult { value: sum, terms_used: terms, tail_estimate: rel, converged: true });
            }
        }
    }
    if growing(&magnitudes) {
        return Err(Error::Divergence { shells: TAIL_BLOCK, at: magnitudes.len() - 1 });
    }
    let tail = geometric_tail(&magnitudes);
    Ok(SeriesResult { value: sum, terms_used: terms, tail_estimate: relative(tail, sum), converged: false })
}

/// Tail bound from the last few shell magnitudes, assuming geometric decay at
/// the worst observed ratio.
pub(crate) fn geometric_tail(magnitudes: &[f64]) -> f64 {
    let n = magnitudes.len();
    let last = magnitudes[n - 1];
    if last == 0.0 {
        return 0.0;
    }
    let window = &magnitudes[n.saturating_sub(TAIL_BLOCK + 1)..];
    let mut rho = 0.0f64;
    for w in window.windows(2) {
        if w[0] > 0.0 {
            rho = rho.max(w[1] / w[0]);
        }
    }
    if rho < 1.0 {
        last * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    }
}

/// The last [`TAIL_BLOCK`] shells each exceeded their predecessor.
pub(crate) fn growing(magnitudes: &[f64]) -> bool {
    let n = magnitudes.len();
    n > TAIL_BLOCK && magnitudes[n - TAIL_BLOCK - 1..].windows(2).all(|w| w[1] > w[0])
}

pub(crate) fn relative(tail: f64, sum: ComplexScalar) -> f64 {
    let s = sum.norm();
    if s > 0.0 {
        tail / s
    } else {
        tail
    }
}

/// Streaming accumulator for single-index series with the same stopping rule
/// as [`horn_eval`].
#[derive(Debug, Clone)]
pub(crate) struct SeriesAccumulator {
    tol: f64,
    sum: ComplexScalar,
    magnitudes: Vec<f64>,
    small_run: usize,
    terms: usize,
}

impl SeriesAccumulator {
    pub(crate) fn new(tol: f64) -> Self {
        Self { tol, sum: Complex64::new(0.0, 0.0), magnitudes: Vec::new(), small_run: 0, terms: 0 }
    }

    /// Adds one term; returns true once the series has converged.
    pub(crate) fn push(&mut self, term: ComplexScalar) -> bool {
        self.sum += term;
        self.terms += 1;
        let mag = term.norm();
        self.magnitudes.push(mag);
        if mag <= self.tol * self.sum.norm() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= TAIL_BLOCK && relative(geometric_tail(&self.magnitudes), self.sum) <= self.tol
    }

    pub(crate) fn finish(self, converged: bool) -> Result<SeriesResult> {
        if !(self.sum.re.is_finite() && self.sum.im.is_finite()) {
            return Err(Error::Divergence { shells: TAIL_BLOCK, at: self.terms });
        }
        let tail = if self.magnitudes.is_empty() { 0.0 } else { geometric_tail(&self.magnitudes) };
        Ok(SeriesResult {
            value: self.sum,
            terms_used: self.terms,
            tail_estimate: relative(tail, self.sum),
            converged,
        })
    }
}
