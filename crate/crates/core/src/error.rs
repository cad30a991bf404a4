use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma-function pole: the argument is a non-positive integer.
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    /// An input lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The group signature does not admit the requested formula family.
    #[error("signature (p={p}, q={q}) not admitted: {reason}")]
    Signature { p: u32, q: u32, reason: &'static str },

    /// Zonal and associated functions exist only for even representations.
    #[error("parity error: epsilon = {0}, only even (epsilon = 0) representations are admitted")]
    Parity(u8),

    /// The rapidity lies outside the series convergence guard.
    #[error("convergence domain: th^2(alpha) = {tanh_sq:.6} exceeds the guard limit {limit}")]
    ConvergenceDomain { tanh_sq: f64, limit: f64 },

    /// A Horn series violates the per-variable balance constraint.
    #[error("unbalanced Horn series: {0}")]
    Unbalanced(String),

    /// Series terms kept growing at the end of the term budget.
    #[error("series diverges: terms grew over {shells} consecutive shells ending at shell {at}")]
    Divergence { shells: usize, at: usize },

    /// No balanced Horn specification reproduced the reference series.
    #[error("Horn reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),

    /// Node doubling changed a quadrature result by more than the tolerance.
    #[error("quadrature not converged: relative change {change:.3e} exceeds {tol:.3e} at {nodes} nodes")]
    Quadrature { change: f64, tol: f64, nodes: usize },

    /// A value became NaN or infinite.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
