//! Report builders behind the `bicaloric` command-line tool.
//!
//! Every command produces a [`Report`] with the fixed JSON shape
//! `{"command", "params", "rows", "pass"}`; rows are flat objects so the same
//! value renders as a text table, JSON or CSV. Exit codes: 0 success,
//! 1 verification failure, 2 usage or parse error.

mod render;
pub mod selfcheck;

use std::fmt;

use bicaloric_core::ancient::{
    caloric_extension, check_vanishing, decompose, default_samples, membership,
    minimal_growth_class, vandermonde_extract, vanishing_order, verify_recurrence,
};
use bicaloric_core::spaces::{
    check_sharpness, dim_a, dim_h_formula, dim_p_formula, kernel_dims, KernelKind,
};
use bicaloric_core::verify_numeric::{bounded_by_first, rp_biharmonic_sweep, rp_sweep, CylinderSpec};
use bicaloric_core::{rat, Poly};
use serde::Serialize;
use serde_json::Value;

pub use render::{render, Format};

/// Largest biparabolic space dimension computed without `--force`.
pub const MAX_SPACE_DIM: usize = 10_000;

/// Tolerance factor for reverse-Poincaré sweeps: every ratio must stay below
/// this multiple of its value at the first radius.
pub const BOUND_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unparsable input; exit code 2.
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Output of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub rows: Vec<Value>,
    pub pass: bool,
}

impl Report {
    fn new<P: Serialize, R: Serialize>(command: &str, params: P, rows: &[R], pass: bool) -> Self {
        Report {
            command: command.into(),
            params: serde_json::to_value(params).expect("plain data serializes"),
            rows: rows.iter().map(|r| serde_json::to_value(r).expect("plain data serializes")).collect(),
            pass,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Dimension of the biparabolic space of degree `d`.
pub fn biparabolic_dim(n: usize, d: usize) -> usize {
    (0..=d / 4).map(|m| dim_a(n, (d - 4 * m) as i64)).sum()
}

fn guard(n: usize, d: usize, force: bool) -> Result<(), CliError> {
    let dim = biparabolic_dim(n, d);
    if dim > MAX_SPACE_DIM && !force {
        return Err(usage(format!(
            "degree {d} in {n} variables spans {dim} > {MAX_SPACE_DIM} monomials; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn positive_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        Err(usage("--n must be at least 1"))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub d: usize,
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    #[serde(rename = "dim_B")]
    pub dim_b: usize,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    #[serde(rename = "dim_P")]
    pub dim_p: usize,
    pub formula_match: bool,
}

/// One row per degree `0..=d_max`, with kernel-rank values cross-checked
/// against the closed formulas.
pub fn dimension_table(n: usize, d_max: usize) -> Vec<DimensionRow> {
    let (biharmonic, bicaloric) = rayon::join(
        || kernel_dims(KernelKind::Biharmonic, n, d_max),
        || kernel_dims(KernelKind::Bicaloric, n, d_max),
    );
    let (mut h, mut p) = (0, 0);
    (0..=d_max)
        .map(|d| {
            h += biharmonic[d];
            p += bicaloric[d];
            let di = d as i64;
            let formula_match = biharmonic[d] == dim_a(n, di) - dim_a(n, di - 4)
                && bicaloric[d] == dim_a(n, di)
                && h == dim_h_formula(n, d)
                && p == dim_p_formula(n, d);
            DimensionRow { d, dim_a: dim_a(n, di), dim_b: biharmonic[d], dim_h: h, dim_p: p, formula_match }
        })
        .collect()
}

#[derive(Serialize)]
struct DimsParams {
    n: usize,
    dmax: usize,
}

pub fn cmd_dims(n: usize, d_max: usize, force: bool) -> Result<Report, CliError> {
    positive_n(n)?;
    guard(n, d_max, force)?;
    let rows = dimension_table(n, d_max);
    let pass = rows.iter().all(|r| r.formula_match);
    Ok(Report::new("dims", DimsParams { n, dmax: d_max }, &rows, pass))
}

#[derive(Serialize)]
struct SharpnessParams {
    n: usize,
    d: usize,
    lhs: usize,
    rhs: usize,
    equal: bool,
}

#[derive(Serialize)]
struct SharpnessTerm {
    i: usize,
    degree: usize,
    #[serde(rename = "dim_H")]
    dim_h: usize,
}

pub fn cmd_sharpness(n: usize, d: usize, force: bool) -> Result<Report, CliError> {
    positive_n(n)?;
    if d == 0 {
        return Err(usage("--d must be at least 1"));
    }
    guard(n, 4 * d, force)?;
    let s = check_sharpness(n, d).map_err(|e| usage(e.to_string()))?;
    let rows: Vec<SharpnessTerm> = s
        .terms
        .iter()
        .enumerate()
        .map(|(i, &dim_h)| SharpnessTerm { i, degree: 4 * (d - i), dim_h })
        .collect();
    let params = SharpnessParams { n, d, lhs: s.lhs, rhs: s.rhs, equal: s.equal };
    Ok(Report::new("sharpness", params, &rows, s.equal))
}

fn parse_poly(text: &str, n: usize) -> Result<Poly, CliError> {
    Poly::parse(text, n).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

#[derive(Serialize)]
struct CoefficientRow {
    j: usize,
    coefficient: String,
    bilaplacian: String,
}

fn coefficient_rows(u: &Poly) -> Vec<CoefficientRow> {
    decompose(u)
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, p)| CoefficientRow { j, coefficient: p.to_string(), bilaplacian: p.bilaplacian().to_string() })
        .collect()
}

#[derive(Serialize)]
struct ConstructParams {
    n: usize,
    seed: String,
    solution: String,
    time_degree: usize,
    recurrence: bool,
    k: u32,
    l: u32,
    in_space: bool,
    vanishing_order: u32,
    vanishes: bool,
}

/// Bicaloric extension of a `t`-free seed, with its decomposition and growth class.
///
/// `k`/`l` default to the smallest class containing the solution.
pub fn cmd_construct(seed: &str, n: usize, k: Option<u32>, l: Option<u32>) -> Result<Report, CliError> {
    positive_n(n)?;
    let q = parse_poly(seed, n)?;
    let u = caloric_extension(&q).map_err(|e| usage(e.to_string()))?;
    let dec = decompose(&u);
    let recurrence = verify_recurrence(&dec);
    let (k0, l0) = minimal_growth_class(&u);
    let (k, l) = (k.unwrap_or(k0), l.unwrap_or(l0));
    let report = membership(&u, k, l).map_err(|e| usage(e.to_string()))?;
    let vanishes = if report.in_space {
        check_vanishing(&u, k, l, n as u32).map_err(|e| usage(e.to_string()))?
    } else {
        false
    };
    let params = ConstructParams {
        n,
        seed: q.to_string(),
        solution: u.to_string(),
        time_degree: dec.time_degree(),
        recurrence,
        k,
        l,
        in_space: report.in_space,
        vanishing_order: vanishing_order(k, l, n as u32),
        vanishes,
    };
    let pass = u.heat_op().is_zero() && recurrence && report.in_space && vanishes;
    Ok(Report::new("construct", params, &coefficient_rows(&u), pass))
}

#[derive(Serialize)]
struct DecomposeParams {
    n: usize,
    input: String,
    bicaloric: bool,
    recurrence: bool,
    time_degree: usize,
    vandermonde: bool,
}

/// Splits a polynomial into powers of `t` and checks the coefficient recurrence.
pub fn cmd_decompose(input: &str, n: usize) -> Result<Report, CliError> {
    positive_n(n)?;
    let u = parse_poly(input, n)?;
    let dec = decompose(&u);
    let samples = default_samples(dec.time_degree());
    let vandermonde = dec.coefficients().iter().enumerate().all(|(j, pj)| {
        vandermonde_extract(&u, &samples, j, &rat(1, 1)).map(|v| v == *pj).unwrap_or(false)
    });
    let bicaloric = u.heat_op().is_zero();
    let recurrence = verify_recurrence(&dec);
    let params = DecomposeParams {
        n,
        input: u.to_string(),
        bicaloric,
        recurrence,
        time_degree: dec.time_degree(),
        vandermonde,
    };
    Ok(Report::new("decompose", params, &coefficient_rows(&u), bicaloric && recurrence && vandermonde))
}

#[derive(Serialize)]
struct SweepParams {
    n: usize,
    seed: String,
    solution: String,
    eps: f64,
    mode: &'static str,
    bound_factor: f64,
}

#[derive(Serialize)]
struct CaloricSweepRow {
    r: f64,
    combined: f64,
    hessian: f64,
    time_derivative: f64,
    grad_laplacian: f64,
    grad_time_derivative: f64,
}

#[derive(Serialize)]
struct BiharmonicSweepRow {
    r: f64,
    ratio: f64,
}

/// Reverse-Poincaré ratios over a list of radii.
///
/// In the default mode the seed is extended to a bicaloric solution; with
/// `biharmonic` the seed itself must be a `t`-free biharmonic polynomial and
/// the spatial ratio is reported. Fails (exit 1) if any column exceeds
/// [`BOUND_FACTOR`] times its value at the first radius.
pub fn cmd_rp_sweep(seed: &str, n: usize, eps: f64, radii: &[f64], biharmonic: bool) -> Result<Report, CliError> {
    positive_n(n)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(usage(format!("--eps must lie in (0, 1), got {eps}")));
    }
    if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(usage("--r needs a nonempty list of positive radii"));
    }
    let q = parse_poly(seed, n)?;
    if q.space_degree().finite().unwrap_or(0) == 0 && !q.contains_t() {
        return Err(usage(format!(
            "seed {q} is constant: every higher-order energy vanishes and the sweep is degenerate"
        )));
    }
    let spec = CylinderSpec::new(n, radii[0], eps).map_err(|e| usage(e.to_string()))?;
    let mode = if biharmonic { "biharmonic" } else { "caloric" };
    if biharmonic {
        let values = rp_biharmonic_sweep(&q, &spec, radii).map_err(|e| usage(e.to_string()))?;
        let rows: Vec<BiharmonicSweepRow> =
            radii.iter().zip(&values).map(|(&r, &ratio)| BiharmonicSweepRow { r, ratio }).collect();
        let params = SweepParams { n, seed: q.to_string(), solution: q.to_string(), eps, mode, bound_factor: BOUND_FACTOR };
        return Ok(Report::new("rp-sweep", params, &rows, bounded_by_first(&values, BOUND_FACTOR)));
    }
    let u = caloric_extension(&q).map_err(|e| usage(e.to_string()))?;
    let sweep = rp_sweep(&u, &spec, radii).map_err(|e| usage(e.to_string()))?;
    let rows: Vec<CaloricSweepRow> = sweep
        .iter()
        .map(|s| CaloricSweepRow {
            r: s.r,
            combined: s.combined,
            hessian: s.components.hessian,
            time_derivative: s.components.time_derivative,
            grad_laplacian: s.components.grad_laplacian,
            grad_time_derivative: s.components.grad_time_derivative,
        })
        .collect();
    let combined: Vec<f64> = sweep.iter().map(|s| s.combined).collect();
    let pass = bounded_by_first(&combined, BOUND_FACTOR)
        && (0..4).all(|k| {
            let col: Vec<f64> = sweep.iter().map(|s| s.components.as_array()[k]).collect();
            bounded_by_first(&col, BOUND_FACTOR)
        });
    let params = SweepParams { n, seed: q.to_string(), solution: u.to_string(), eps, mode, bound_factor: BOUND_FACTOR };
    Ok(Report::new("rp-sweep", params, &rows, pass))
}
