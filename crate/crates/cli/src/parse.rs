//! Flag values: complex numbers `a+bi`, grids `start:stop:step`.

use num_complex::Complex64;

fn number(text: &str, what: &str) -> Result<f64, String> {
    let v: f64 = text.parse().map_err(|_| format!("invalid {what} '{text}'"))?;
    if !v.is_finite() {
        return Err(format!("{what} must be finite, got '{text}'"));
    }
    Ok(v)
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `i`; `j` is accepted for `i`.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(number(&t, "real part")?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (number(&body[..k], "real part")?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => number(other, "imaginary part")?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated list of complex numbers.
pub fn complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(complex).collect()
}

/// Comma-separated list of values and inclusive ranges `start:stop:step`.
pub fn grid(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(number(v, "grid value")?),
            [a, b, h] => {
                let (a, b, h) = (number(a, "range start")?, number(b, "range stop")?, number(h, "range step")?);
                if !(h > 0.0) || b < a {
                    return Err(format!("range '{item}' needs step > 0 and stop >= start"));
                }
                let n = ((b - a) / h + 1e-9).floor() as usize;
                out.extend((0..=n).map(|k| a + k as f64 * h));
            }
            _ => return Err(format!("grid item '{item}' is neither a value nor start:stop:step")),
        }
    }
    Ok(out)
}

/// Comma-separated list of non-negative integers.
pub fn usize_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("invalid non-negative integer '{t}'")))
        .collect()
}
