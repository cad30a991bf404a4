//! Command-line front end for `sopq-core`.
//!
//! Every subcommand writes one table to stdout or `--out`. Grid points are
//! evaluated in parallel and emitted in grid order, so identical flags give
//! byte-identical output.
//!
//! Exit status: 0 success, 2 usage, 3 domain, 4 convergence, 5 failed
//! verification, 1 I/O.

pub mod parse;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use sopq_core::error::Error as CoreError;
use sopq_core::oracle::{expansion_residual, gram_matrix, quad_assoc, quad_zonal, BasisLabel, QuadratureConfig, DEFAULT_NODES, DEFAULT_QUAD_TOL};
use sopq_core::orthopoly::Signature;
use sopq_core::sfcore::{
    assoc_horn, assoc_series, zonal_horn, zonal_series, AssocIndex, Rapidity, RepParam, SeriesConfig, DEFAULT_MAX_TERMS,
    DEFAULT_TANH_SQ_LIMIT, DEFAULT_TOL,
};

use table::{Cell, Format, Table};

/// Default PASS threshold of `verify`.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;

/// Values below this magnitude on both sides count as equal in `verify`.
pub const ZERO_FLOOR: f64 = 1e-12;

pub const ROW_HEADER: [&str; 13] =
    ["p", "q", "sigma_re", "sigma_im", "nu", "s", "r", "alpha", "method", "value_re", "value_im", "terms", "tail"];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{method} did not converge at sigma={sigma}, alpha={alpha} (tail {tail:.3e})")]
    NotConverged { method: &'static str, sigma: Complex64, alpha: f64, tail: f64 },
    #[error("FAIL: max deviation {dev:.3e} exceeds tol {tol:.3e}")]
    VerifyFail { dev: f64, tol: f64 },
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                CoreError::ConvergenceDomain { .. }
                | CoreError::Divergence { .. }
                | CoreError::Quadrature { .. }
                | CoreError::Unbalanced(_)
                | CoreError::ReconstructionMismatch(_) => 4,
                CoreError::Pole(_)
                | CoreError::Domain(_)
                | CoreError::Signature { .. }
                | CoreError::Parity(_)
                | CoreError::NonFinite(_) => 3,
            },
            CliError::NotConverged { .. } => 4,
            CliError::VerifyFail { .. } => 5,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sopq", version, about = "Zonal and associated spherical functions of SO(p,q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zonal function Z_sigma(alpha), one row per alpha.
    Zonal {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Associated function with labels (nu, s, r), one row per alpha.
    Assoc {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 0)]
        nu: u8,
        /// mu = nu + 2s on the p-sphere.
        #[arg(long)]
        s: usize,
        /// lambda = nu + 2r on the q-sphere.
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Series, Horn and quadrature at every point; PASS if all agree to --tol.
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        index: IndexArgs,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a list of sigma values against the alpha grid.
    Scan {
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gram matrix of the canonical basis with labels up to --max-label.
    Gram {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        max_label: i64,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residual of the truncated expansion of Theta^(sigma/2) against N.
    Expand {
        #[command(flatten)]
        point: PointArgs,
        /// Truncation orders, comma-separated.
        #[arg(long, default_value = "4,8,16")]
        n: String,
        #[command(flatten)]
        num: NumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// Signature p, at least 2.
    #[arg(long)]
    pub p: u32,
    /// Signature q, 1 <= q <= p.
    #[arg(long)]
    pub q: u32,
    /// Complex degree `a+bi`; `scan` and `verify` take a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: String,
    /// Parity; only 0 has zonal and associated functions.
    #[arg(long, default_value_t = 0)]
    pub epsilon: u8,
    /// Values and ranges `start:stop:step`, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    /// Associated labels; any of --nu, --s, --r selects the associated function.
    #[arg(long)]
    pub nu: Option<u8>,
    /// mu = nu + 2s on the p-sphere.
    #[arg(long)]
    pub s: Option<usize>,
    /// lambda = nu + 2r on the q-sphere.
    #[arg(long)]
    pub r: Option<usize>,
}

impl IndexArgs {
    /// `None` selects the zonal function.
    fn index(&self) -> Result<Option<AssocIndex>, CliError> {
        if self.nu.is_none() && self.s.is_none() && self.r.is_none() {
            return Ok(None);
        }
        Ok(Some(AssocIndex::new(self.nu.unwrap_or(0), self.s.unwrap_or(0), self.r.unwrap_or(0))?))
    }
}

#[derive(Debug, Clone, Args)]
pub struct NumArgs {
    /// Series tolerance; in `verify` the PASS threshold [default: 1e-14, verify 1e-8]
    #[arg(long, env = "SOPQ_TOL")]
    pub tol: Option<f64>,
    /// Quadrature nodes per direction before the doubling check.
    #[arg(long, env = "SOPQ_NODES", default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    /// Bound on the relative change under node doubling.
    #[arg(long, env = "SOPQ_QUAD_TOL", default_value_t = DEFAULT_QUAD_TOL)]
    pub quad_tol: f64,
    /// Term budget of the series paths.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    /// Largest admitted th^2(alpha) for the series paths, below 1.
    #[arg(long, default_value_t = DEFAULT_TANH_SQ_LIMIT)]
    pub guard: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Horn,
    Quadrature,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Horn => "horn",
            Method::Quadrature => "quadrature",
        }
    }
}

/// One evaluated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eval {
    pub value: Complex64,
    pub terms: usize,
    pub tail: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Context {
    sig: Signature,
    epsilon: u8,
    series: SeriesConfig,
    quad: QuadratureConfig,
}

impl Context {
    fn new(p: u32, q: u32, epsilon: u8, num: &NumArgs, tol: f64) -> Result<Self, CliError> {
        if !(tol > 0.0) || !(num.quad_tol > 0.0) || num.nodes == 0 || num.max_terms == 0 {
            return Err(CliError::Usage("tolerances, --nodes and --max-terms must be positive".into()));
        }
        Ok(Self {
            sig: Signature::new(p, q)?,
            epsilon,
            series: SeriesConfig::default().with_tol(tol).with_max_terms(num.max_terms).with_tanh_sq_limit(num.guard),
            quad: QuadratureConfig::default().with_nodes(num.nodes).with_tol(num.quad_tol),
        })
    }

    fn evaluate(&self, sigma: Complex64, idx: Option<AssocIndex>, alpha: f64, method: Method) -> Result<Eval, CoreError> {
        let rep = RepParam::new(sigma, self.epsilon)?;
        let a = Rapidity::new(alpha)?;
        let from = |r: sopq_core::hyper::SeriesResult| Eval {
            value: r.value,
            terms: r.terms_used,
            tail: r.tail_estimate,
            converged: r.converged,
        };
        Ok(match (method, idx) {
            (Method::Series, None) => from(zonal_series(self.sig, rep, a, &self.series)?),
            (Method::Series, Some(i)) => from(assoc_series(self.sig, rep, i, a, &self.series)?),
            (Method::Horn, None) => from(zonal_horn(self.sig, rep, a, &self.series)?.result),
            (Method::Horn, Some(i)) => from(assoc_horn(self.sig, rep, i, a, &self.series)?.result),
            (Method::Quadrature, idx) => {
                let value = match idx {
                    None => quad_zonal(self.sig, rep, a, &self.quad)?,
                    Some(i) => quad_assoc(self.sig, rep, i, a, &self.quad)?,
                };
                Eval { value, terms: 2 * self.quad.nodes_x, tail: self.quad.tol, converged: true }
            }
        })
    }

    fn row(&self, sigma: Complex64, idx: Option<AssocIndex>, alpha: f64, method: Method, e: &Eval) -> Vec<Cell> {
        let idx = idx.unwrap_or(AssocIndex { nu: 0, s: 0, r: 0 });
        vec![
            Cell::Int(self.sig.p() as i64),
            Cell::Int(self.sig.q() as i64),
            Cell::Real(sigma.re),
            Cell::Real(sigma.im),
            Cell::Int(idx.nu as i64),
            Cell::Int(idx.s as i64),
            Cell::Int(idx.r as i64),
            Cell::Real(alpha),
            Cell::Text(method.name().into()),
            Cell::Real(e.value.re),
            Cell::Real(e.value.im),
            Cell::Int(e.terms as i64),
            Cell::Real(e.tail),
        ]
    }
}

fn usage<T>(r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(CliError::Usage)
}

fn single_sigma(text: &str) -> Result<Complex64, CliError> {
    match usage(parse::complex_list(text))?.as_slice() {
        [s] => Ok(*s),
        _ => Err(CliError::Usage("this command takes a single --sigma; use scan for a list".into())),
    }
}

/// `(σ, α)` pairs, σ outermost.
fn grid_points(sigmas: &[Complex64], alphas: &[f64]) -> Vec<(Complex64, f64)> {
    sigmas.iter().flat_map(|&s| alphas.iter().map(move |&a| (s, a))).collect()
}

/// Relative difference; both magnitudes below [`ZERO_FLOOR`] count as equal.
pub fn deviation(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale < ZERO_FLOOR {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Sample points `(χ, φ)` of the expansion residual, a 7×7 lattice.
pub fn expansion_samples() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            out.push((0.37 + 0.87 * i as f64, 0.11 + 0.89 * j as f64));
        }
    }
    out
}

fn emit(table: &Table, output: &OutputArgs) -> Result<(), CliError> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(output.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write(output.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn eval_table(
    ctx: &Context,
    sigmas: &[Complex64],
    alphas: &[f64],
    idx: Option<AssocIndex>,
    method: Method,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let points = grid_points(sigmas, alphas);
    let evals: Vec<Result<Eval, CoreError>> = points.par_iter().map(|&(s, a)| ctx.evaluate(s, idx, a, method)).collect();
    let mut table = Table::new(&ROW_HEADER);
    let mut unconverged = None;
    for (&(s, a), e) in points.iter().zip(evals) {
        let e = e?;
        if !e.converged && unconverged.is_none() {
            unconverged = Some(CliError::NotConverged { method: method.name(), sigma: s, alpha: a, tail: e.tail });
        }
        table.push(ctx.row(s, idx, a, method, &e));
    }
    emit(&table, output)?;
    unconverged.map_or(Ok(()), Err)
}

fn verify(ctx: &Context, sigmas: &[Complex64], alphas: &[f64], idx: Option<AssocIndex>, tol: f64, output: &OutputArgs) -> Result<(), CliError> {
    const METHODS: [Method; 3] = [Method::Series, Method::Horn, Method::Quadrature];
    let points = grid_points(sigmas, alphas);
    let evals: Vec<Result<[Eval; 3], CoreError>> = points
        .par_iter()
        .map(|&(s, a)| {
            let mut out = [Eval { value: Complex64::new(0.0, 0.0), terms: 0, tail: 0.0, converged: true }; 3];
            for (slot, m) in out.iter_mut().zip(METHODS) {
                *slot = ctx.evaluate(s, idx, a, m)?;
            }
            Ok(out)
        })
        .collect();
    let mut table = Table::new(&ROW_HEADER);
    let mut worst = (0.0f64, 0.0f64, Complex64::new(0.0, 0.0));
    let mut unconverged = None;
    for (&(s, a), e) in points.iter().zip(evals) {
        let e = e?;
        for (m, v) in METHODS.iter().zip(&e) {
            if !v.converged && unconverged.is_none() {
                unconverged = Some(CliError::NotConverged { method: m.name(), sigma: s, alpha: a, tail: v.tail });
            }
            table.push(ctx.row(s, idx, a, *m, v));
        }
        let dev = deviation(e[0].value, e[2].value).max(deviation(e[1].value, e[2].value)).max(deviation(e[0].value, e[1].value));
        if dev > worst.0 || worst.0.is_nan() {
            worst = (dev, a, s);
        }
    }
    emit(&table, output)?;
    if let Some(err) = unconverged {
        return Err(err);
    }
    let (dev, a, s) = worst;
    if dev <= tol {
        eprintln!("PASS: max deviation {dev:.3e} over {} points (tol {tol:.3e})", points.len());
        Ok(())
    } else {
        eprintln!("worst point: sigma={s}, alpha={a}");
        Err(CliError::VerifyFail { dev, tol })
    }
}

fn gram(p: u32, q: u32, max_label: i64, num: &NumArgs, output: &OutputArgs) -> Result<(), CliError> {
    if max_label < 0 {
        return Err(CliError::Usage("--max-label must be non-negative".into()));
    }
    let ctx = Context::new(p, q, 0, num, num.tol.unwrap_or(DEFAULT_TOL))?;
    let range = |n: u32| if n == 2 { -max_label..=max_label } else { 0..=max_label };
    let labels: Vec<BasisLabel> = range(q).flat_map(|lambda| range(p).map(move |mu| BasisLabel { lambda, mu })).collect();
    let g = gram_matrix(ctx.sig, &labels, &ctx.quad)?;
    let mut table = Table::new(&["p", "q", "lambda_i", "mu_i", "lambda_j", "mu_j", "value_re", "value_im"]);
    let (mut off, mut diag) = (0.0f64, 0.0f64);
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                diag = diag.max((v - 1.0).norm());
            } else {
                off = off.max(v.norm());
            }
            table.push(vec![
                Cell::Int(p as i64),
                Cell::Int(q as i64),
                Cell::Int(labels[i].lambda),
                Cell::Int(labels[i].mu),
                Cell::Int(labels[j].lambda),
                Cell::Int(labels[j].mu),
                Cell::Real(v.re),
                Cell::Real(v.im),
            ]);
        }
    }
    emit(&table, output)?;
    eprintln!("max off-diagonal {off:.3e}, max diagonal deviation {diag:.3e} over {} labels", labels.len());
    Ok(())
}

fn expand(point: &PointArgs, n: &str, num: &NumArgs, output: &OutputArgs) -> Result<(), CliError> {
    let ctx = Context::new(point.p, point.q, point.epsilon, num, num.tol.unwrap_or(DEFAULT_TOL))?;
    let sigma = single_sigma(&point.sigma)?;
    let alphas = usage(parse::grid(&point.alpha))?;
    let orders = usage(parse::usize_list(n))?;
    let rep = RepParam::new(sigma, ctx.epsilon)?;
    let samples = expansion_samples();
    let points: Vec<(f64, usize)> = alphas.iter().flat_map(|&a| orders.iter().map(move |&n| (a, n))).collect();
    let residuals: Vec<Result<f64, CoreError>> = points
        .par_iter()
        .map(|&(a, n)| expansion_residual(ctx.sig, rep, Rapidity::new(a)?, n, &samples, &ctx.series))
        .collect();
    let mut table = Table::new(&["p", "q", "sigma_re", "sigma_im", "alpha", "n", "residual"]);
    for (&(a, n), res) in points.iter().zip(residuals) {
        table.push(vec![
            Cell::Int(point.p as i64),
            Cell::Int(point.q as i64),
            Cell::Real(sigma.re),
            Cell::Real(sigma.im),
            Cell::Real(a),
            Cell::Int(n as i64),
            Cell::Real(res?),
        ]);
    }
    emit(&table, output)
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Zonal { point, method, num, output } => {
            let ctx = Context::new(point.p, point.q, point.epsilon, &num, num.tol.unwrap_or(DEFAULT_TOL))?;
            let sigma = single_sigma(&point.sigma)?;
            eval_table(&ctx, &[sigma], &usage(parse::grid(&point.alpha))?, None, method, &output)
        }
        Command::Assoc { point, nu, s, r, method, num, output } => {
            let ctx = Context::new(point.p, point.q, point.epsilon, &num, num.tol.unwrap_or(DEFAULT_TOL))?;
            let sigma = single_sigma(&point.sigma)?;
            let idx = AssocIndex::new(nu, s, r)?;
            eval_table(&ctx, &[sigma], &usage(parse::grid(&point.alpha))?, Some(idx), method, &output)
        }
        Command::Scan { point, index, method, num, output } => {
            let ctx = Context::new(point.p, point.q, point.epsilon, &num, num.tol.unwrap_or(DEFAULT_TOL))?;
            let sigmas = usage(parse::complex_list(&point.sigma))?;
            eval_table(&ctx, &sigmas, &usage(parse::grid(&point.alpha))?, index.index()?, method, &output)
        }
        Command::Verify { point, index, num, output } => {
            let tol = num.tol.unwrap_or(DEFAULT_VERIFY_TOL);
            let ctx = Context::new(point.p, point.q, point.epsilon, &num, tol)?;
            let ctx = Context { series: ctx.series.with_tol(DEFAULT_TOL), ..ctx };
            let sigmas = usage(parse::complex_list(&point.sigma))?;
            verify(&ctx, &sigmas, &usage(parse::grid(&point.alpha))?, index.index()?, tol, &output)
        }
        Command::Gram { p, q, max_label, num, output } => gram(p, q, max_label, &num, &output),
        Command::Expand { point, n, num, output } => expand(&point, &n, &num, &output),
    }
}

/// Parses `args` and runs; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
