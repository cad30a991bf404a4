//! Complex arithmetic kernel: log-gamma, Pochhammer symbols and gamma ratios.
//!
//! `log_gamma` is the analytic log-gamma with its branch cut on the negative
//! real axis (the continuation of the real `ln Γ` off the positive axis), so
//! `exp(log_gamma(z + 1) - log_gamma(z)) = z` holds without `2πi` jumps away
//! from the cut.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used for the representation degree and all series values.
pub type ComplexScalar = Complex64;

/// Products up to this length are evaluated directly, longer ones through
/// log-gamma differences.
pub const POCHHAMMER_PRODUCT_LIMIT: usize = 64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// True when `z` is one of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(z: ComplexScalar) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Returns an error naming `what` unless both components are finite.
pub fn ensure_finite(z: ComplexScalar, what: &'static str) -> Result<ComplexScalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Principal-branch `ln Γ(z)`.
pub fn log_gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_log_gamma(z));
    }
    // Shift into the right half-plane; every z + k keeps the sign of Im z,
    // so the summed principal logarithms stay on one sheet.
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (z + k as f64).ln();
    }
    Ok(lanczos_log_gamma(z + shift as f64) - acc)
}

fn lanczos_log_gamma(z: ComplexScalar) -> ComplexScalar {
    let z1 = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z1 + i as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z1 + 0.5) * t.ln() - t + series.ln()
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(x));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// `Γ(x)` for real positive `x`; callers keep `x` well below the overflow point.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("gamma_real expects x > 0, got {x}")));
    }
    Ok(ln_gamma_real(x)?.exp())
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: ComplexScalar, n: usize) -> ComplexScalar {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if n <= POCHHAMMER_PRODUCT_LIMIT {
        return (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64));
    }
    if is_nonpositive_integer(a) {
        let depth = (-a.re) as usize;
        if n > depth {
            return Complex64::new(0.0, 0.0);
        }
        // (a)_n = (-1)^n Γ(1-a) / Γ(1-a-n), both arguments positive.
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let one_minus = Complex64::new(1.0, 0.0) - a;
        let ratio = log_gamma(one_minus).expect("positive argument")
            - log_gamma(one_minus - n as f64).expect("positive argument");
        return sign * ratio.exp();
    }
    let ratio = log_gamma(a + n as f64).expect("not a pole") - log_gamma(a).expect("not a pole");
    ratio.exp()
}

/// Real rising factorial, direct product.
pub fn pochhammer_real(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// `Π Γ(num) / Π Γ(den)` through log-gamma sums, safe when the individual
/// gammas overflow.
pub fn gamma_ratio(num: &[ComplexScalar], den: &[ComplexScalar]) -> Result<ComplexScalar> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &z in num {
        acc += log_gamma(z)?;
    }
    for &z in den {
        acc -= log_gamma(z)?;
    }
    ensure_finite(acc.exp(), "gamma_ratio")
}

/// `n!` as a float, exact through `n = 22`.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `(-1)^n`.
pub fn sign_pow(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
