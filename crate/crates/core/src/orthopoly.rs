//! Gegenbauer polynomials, group signatures and the normalization constants
//! of the canonical basis.
//!
//! Every constant here is the one that makes the corresponding basis family
//! orthonormal under the product measure `sin^{q-2}φ dφ · sin^{p-2}χ dχ` on
//! the two sphere factors (angles on `[0, π]`, or `[0, 2π)` for a circle).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::{factorial, ln_gamma_real};

/// Degree and superscript of a Gegenbauer polynomial `C_n^λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerOrder {
    n: usize,
    lam: f64,
}

impl GegenbauerOrder {
    /// `lam` must exceed `-1/2` and be nonzero; circle factors use
    /// exponentials instead of `C_n^0`.
    pub fn new(n: usize, lam: f64) -> Result<Self> {
        if !(lam > -0.5) || lam == 0.0 || !lam.is_finite() {
            return Err(Error::Domain(format!(
                "Gegenbauer superscript must satisfy lam > -1/2, lam != 0 (got {lam})"
            )));
        }
        Ok(Self { n, lam })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }
}

/// Indices `(p, q)` of `SO(p, q)`.
///
/// `new` enforces `p ≥ 2` and `1 ≤ q ≤ p`. `swapped` produces the same group
/// with the two sphere factors exchanged, which is how the `p ↔ q` symmetry of
/// the associated functions is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u32,
    q: u32,
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Signature { p, q, reason: "p must be at least 2" });
        }
        if q < 1 || q > p {
            return Err(Error::Signature { p, q, reason: "q must satisfy 1 <= q <= p" });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The roles of the two spheres exchanged: `(q, p)`.
    pub fn swapped(&self) -> Self {
        Self { p: self.q, q: self.p }
    }

    /// Associated functions need two genuine sphere factors.
    pub fn require_associated(&self) -> Result<()> {
        if self.p < 2 || self.q < 2 {
            return Err(Error::Signature {
                p: self.p,
                q: self.q,
                reason: "associated functions require p >= 2 and q >= 2",
            });
        }
        Ok(())
    }

    /// Principal unitary line `Re σ = -(p+q-2)/2`.
    pub fn principal_re_sigma(&self) -> f64 {
        -((self.p + self.q) as f64 - 2.0) / 2.0
    }
}

/// `C_n^λ(x)` by the three-term recurrence.
pub fn gegenbauer(order: GegenbauerOrder, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("Gegenbauer argument |x| <= 1 required, got {x}")));
    }
    Ok(gegenbauer_unchecked(order.n, order.lam, x))
}

pub(crate) fn gegenbauer_unchecked(n: usize, lam: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut c0 = 1.0;
    let mut c1 = 2.0 * lam * x;
    for k in 2..=n {
        let kf = k as f64;
        let c2 = (2.0 * (kf + lam - 1.0) * x * c1 - (kf + 2.0 * lam - 2.0) * c0) / kf;
        c0 = c1;
        c1 = c2;
    }
    c1
}

/// Normalization constant of the canonical basis element with labels
/// `(λ, l; μ, m)` for `p ≥ q ≥ 3`.
///
/// `Γ(l+(q-2)/2) Γ(m+(p-2)/2) / (2^{4-l-m-(p+q)/2} π)
///   · sqrt[(λ-l)! (μ-m)! (2λ+q-2)(2μ+p-2) / (Γ(λ+l+q-2) Γ(μ+m+p-2))]`
pub fn basis_norm_general(sig: Signature, lambda: usize, l: usize, mu: usize, m: usize) -> Result<f64> {
    if sig.q() < 3 {
        return Err(Error::Signature {
            p: sig.p(),
            q: sig.q(),
            reason: "general basis normalization requires q >= 3",
        });
    }
    if l > lambda || m > mu {
        return Err(Error::Domain(format!("labels need lambda >= l, mu >= m (got {lambda},{l},{mu},{m})")));
    }
    let (p, q) = (sig.p() as f64, sig.q() as f64);
    let (lf, mf) = (l as f64, m as f64);
    let (lam, muf) = (lambda as f64, mu as f64);
    let ln_pref = ln_gamma_real(lf + (q - 2.0) / 2.0)? + ln_gamma_real(mf + (p - 2.0) / 2.0)?
        - (4.0 - lf - mf - (p + q) / 2.0) * 2f64.ln()
        - PI.ln();
    let ln_root = ln_factorial(lambda - l) + ln_factorial(mu - m) + (2.0 * lam + q - 2.0).ln()
        + (2.0 * muf + p - 2.0).ln()
        - ln_gamma_real(lam + lf + q - 2.0)?
        - ln_gamma_real(muf + mf + p - 2.0)?;
    Ok((ln_pref + 0.5 * ln_root).exp())
}

/// Normalization constant for `q = 2`, where the `φ` factor is `e^{iλφ}`.
///
/// `(1/π) Γ(m+(p-2)/2) sqrt[2^{p+2m-5} (μ-m)! (2μ+p-2) / Γ(μ+m+p-2)]`
pub fn basis_norm_q2(p: u32, mu: usize, m: usize) -> Result<f64> {
    if p < 3 {
        return Err(Error::Domain(format!("basis_norm_q2 requires p >= 3, got {p}")));
    }
    if m > mu {
        return Err(Error::Domain(format!("labels need mu >= m (got {mu},{m})")));
    }
    let pf = p as f64;
    let (mf, muf) = (m as f64, mu as f64);
    let ln_root = (pf + 2.0 * mf - 5.0) * 2f64.ln() + ln_factorial(mu - m) + (2.0 * muf + pf - 2.0).ln()
        - ln_gamma_real(muf + mf + pf - 2.0)?;
    Ok((ln_gamma_real(mf + (pf - 2.0) / 2.0)? - PI.ln() + 0.5 * ln_root).exp())
}

/// Per-sphere constant of the associated-function integrals:
///
/// `Γ((p-2)/2) sqrt[2^{p-6} μ! (2μ+p-2) Γ(p/2) / (Γ(μ+p-2) Γ((p-1)/2) π^{7/2})]`.
///
/// The pair constant is `4π² · assoc_coeff(p, μ) · assoc_coeff(q, λ)`.
pub fn assoc_coeff(p: u32, mu: usize) -> Result<f64> {
    if p < 3 {
        return Err(Error::Domain(format!("assoc_coeff requires p >= 3, got {p}")));
    }
    let pf = p as f64;
    let muf = mu as f64;
    let ln_root = (pf - 6.0) * 2f64.ln() + ln_factorial(mu) + (2.0 * muf + pf - 2.0).ln() + ln_gamma_real(pf / 2.0)?
        - ln_gamma_real(muf + pf - 2.0)?
        - ln_gamma_real((pf - 1.0) / 2.0)?
        - 3.5 * PI.ln();
    Ok((ln_gamma_real((pf - 2.0) / 2.0)? + 0.5 * ln_root).exp())
}

/// `a^{pq}_{λμ} = 4π² a^p_μ a^q_λ` for `p, q ≥ 3`.
pub fn assoc_pair_coeff(sig: Signature, lambda: usize, mu: usize) -> Result<f64> {
    Ok(4.0 * PI * PI * assoc_coeff(sig.p(), mu)? * assoc_coeff(sig.q(), lambda)?)
}

/// Total mass of one sphere factor under the angular measure:
/// `∫_0^π sin^{n-2}θ dθ` for `n ≥ 3`, `2π` for the circle, and `1` for the
/// two-point sphere `S^0` with weights `1/2`.
pub fn sphere_mass(n: u32) -> f64 {
    match n {
        1 => 1.0,
        2 => 2.0 * PI,
        _ => {
            let nf = n as f64;
            let ln = 0.5 * PI.ln() + ln_gamma_real((nf - 1.0) / 2.0).expect("positive")
                - ln_gamma_real(nf / 2.0).expect("positive");
            ln.exp()
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    if n <= 20 {
        factorial(n).ln()
    } else {
        ln_gamma_real(n as f64 + 1.0).expect("positive")
    }
}
