//! Ancient bicaloric polynomials: construction, decomposition in powers of
//! `t`, coefficient extraction from time samples, and growth classification.
//!
//! A bicaloric polynomial `u = p_0 + t p_1 + ... + t^d p_d` satisfies
//! `bilaplacian(p_d) = 0` and `bilaplacian(p_j) = -(j + 1) p_{j+1}`, so it is
//! determined by `p_0` through the terminating series
//! `u = sum_m (-t)^m / m! * bilaplacian^m(p_0)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactla::{vandermonde_coefficients, LinAlgError};
use crate::spaces::{basis_biparabolic, operator_matrix, Operator, SpaceError};
use crate::{rat, Degree, Grading, Poly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AncientError {
    #[error("seed must not contain t: {0}")]
    SeedContainsT(String),
    #[error("not a solution of u_t + bilaplacian(u) = 0: {0}")]
    NotBicaloric(String),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("coefficient index {j} exceeds sample degree {degree}")]
    IndexOutOfRange { j: usize, degree: usize },
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("u is not in P_(4*{k}, 4*{l})")]
    NotInSpace { k: u32, l: u32 },
    #[error("time degree {time_degree} exceeds min(k, l + 1) = {bound}")]
    TimeDegreeBound { time_degree: u32, bound: u32 },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn factorial(m: u32) -> Rational {
    (1..=m).fold(Rational::one(), |acc, k| acc * rat(k.into(), 1))
}

/// The bicaloric polynomial equal to `q` at `t = 0`:
/// `sum_m (-t)^m / m! * bilaplacian^m(q)`.
pub fn caloric_extension(q: &Poly) -> Result<Poly, AncientError> {
    if q.contains_t() {
        return Err(AncientError::SeedContainsT(q.to_string()));
    }
    let mut out = Poly::zero(q.dimension());
    let mut power = q.clone();
    let mut m = 0u32;
    while !power.is_zero() {
        let sign = if m.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        out = &out + &power.shift_t(m).scale(&(sign / factorial(m)));
        power = power.bilaplacian();
        m += 1;
    }
    Ok(out)
}

/// Same result as [`caloric_extension`], obtained by solving for the kernel
/// element of `d/dt + bilaplacian` on each biparabolic degree whose `t = 0`
/// part is the matching homogeneous piece of `q`.
pub fn caloric_extension_by_solve(q: &Poly) -> Result<Poly, AncientError> {
    if q.contains_t() {
        return Err(AncientError::SeedContainsT(q.to_string()));
    }
    let n = q.dimension();
    let mut out = Poly::zero(n);
    for (d, piece) in q.components(Grading::Space) {
        let d = i64::from(d);
        let domain = basis_biparabolic(n, d);
        let codomain = basis_biparabolic(n, d - 4);
        let heat = operator_matrix(Operator::HeatOp, &domain, &codomain)?;
        let target = domain.coordinates(&piece)?;
        // rows: heat_op(u) = 0, then the t-free coordinates of u equal those of the piece
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for r in 0..heat.rows() {
            rows.push(heat.row(r).to_vec());
            rhs.push(Rational::zero());
        }
        for (i, m) in domain.monomials().iter().enumerate() {
            if m.t_exponent() == 0 {
                let mut row = vec![Rational::zero(); domain.dim()];
                row[i] = Rational::one();
                rows.push(row);
                rhs.push(target[i].clone());
            }
        }
        let system = crate::exactla::RationalMatrix::from_rows(rows)?;
        let coords = system
            .solve(&rhs)?
            .expect("bicaloric extension of a homogeneous piece always exists");
        out = &out + &domain.poly_from_coordinates(&coords);
    }
    Ok(out)
}

/// A preimage of `u` under `d/dt + bilaplacian`:
/// `t u - t^2/2 L u + t^3/6 L^2 u - ...` with `L = d/dt + bilaplacian`.
pub fn inverse_heatop(u: &Poly) -> Poly {
    let mut out = Poly::zero(u.dimension());
    let mut power = u.clone();
    let mut m = 1u32;
    while !power.is_zero() {
        let sign = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
        out = &out + &power.shift_t(m).scale(&(sign / factorial(m)));
        power = power.heat_op();
        m += 1;
    }
    out
}

/// `u = p_0(x) + t p_1(x) + ... + t^d p_d(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    coefficients: Vec<Poly>,
}

impl Decomposition {
    pub fn new(coefficients: Vec<Poly>) -> Self {
        assert!(!coefficients.is_empty(), "a decomposition has at least p_0");
        Decomposition { coefficients }
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    /// Index of the last coefficient.
    pub fn time_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn reconstitute(&self) -> Poly {
        let n = self.coefficients[0].dimension();
        self.coefficients
            .iter()
            .enumerate()
            .fold(Poly::zero(n), |acc, (j, p)| &acc + &p.shift_t(j as u32))
    }
}

/// Collects powers of `t`. The zero polynomial decomposes as `[0]`.
pub fn decompose(u: &Poly) -> Decomposition {
    let d = u.time_degree().finite().unwrap_or(0);
    Decomposition::new((0..=d).map(|j| u.t_coefficient(j)).collect())
}

/// `bilaplacian(p_d) = 0` and `bilaplacian(p_j) = -(j + 1) p_{j+1}` for `j < d`.
pub fn verify_recurrence(dec: &Decomposition) -> bool {
    let ps = dec.coefficients();
    let d = dec.time_degree();
    if !ps[d].bilaplacian().is_zero() {
        return false;
    }
    (0..d).all(|j| ps[j].bilaplacian() == ps[j + 1].scale(&-rat(j as i64 + 1, 1)))
}

/// `t_i = -1 + (i + 1) / (2(d + 2))`, `d + 1` points strictly inside `(-1, -1/2)`.
pub fn default_samples(d: usize) -> Vec<Rational> {
    let denom = 2 * (d as i64 + 2);
    (0..=d as i64).map(|i| rat(-1, 1) + rat(i + 1, denom)).collect()
}

/// Recovers `p_j` from time slices: `R^{-4j} * sum_i b[i][j] * u(x, R^4 t_i)`.
///
/// Uses all supplied samples, so any count above the time degree works.
pub fn vandermonde_extract(
    u: &Poly,
    samples: &[Rational],
    j: usize,
    scale: &Rational,
) -> Result<Poly, AncientError> {
    let time_degree = u.time_degree().finite().unwrap_or(0) as usize;
    if samples.len() < time_degree + 1 {
        return Err(AncientError::TooFewSamples { needed: time_degree + 1, got: samples.len() });
    }
    let degree = samples.len() - 1;
    if j > degree {
        return Err(AncientError::IndexOutOfRange { j, degree });
    }
    if *scale <= Rational::zero() {
        return Err(AncientError::NonPositiveScale(scale.clone()));
    }
    let b = vandermonde_coefficients(samples, degree)?;
    let r4 = num_traits::pow(scale.clone(), 4);
    let mut acc = Poly::zero(u.dimension());
    for (i, t) in samples.iter().enumerate() {
        acc = &acc + &u.substitute_t(&(&r4 * t)).scale(&b[i][j]);
    }
    Ok(acc.scale(&num_traits::pow(r4, j).recip()))
}

/// Growth classification of a bicaloric polynomial against `P_(4k, 4l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub k: u32,
    pub l: u32,
    pub time_degree: u32,
    pub growth: (Degree, Degree),
    pub in_space: bool,
}

/// `u` lies in `P_(4k, 4l)` iff its biparabolic degree is at most `4k` and
/// every gradient component has biparabolic degree at most `4l`.
pub fn membership(u: &Poly, k: u32, l: u32) -> Result<MembershipReport, AncientError> {
    if !u.heat_op().is_zero() {
        return Err(AncientError::NotBicaloric(u.to_string()));
    }
    let growth = u.growth_degrees();
    let in_space = growth.0.at_most(4 * i64::from(k)) && growth.1.at_most(4 * i64::from(l));
    let time_degree = u.time_degree().finite().unwrap_or(0);
    if in_space {
        let bound = k.min(l + 1);
        if time_degree > bound {
            return Err(AncientError::TimeDegreeBound { time_degree, bound });
        }
    }
    Ok(MembershipReport { k, l, time_degree, growth, in_space })
}

/// Smallest `m` with `8m > 8k + 8l + volume_growth + 6`.
pub fn vanishing_order(k: u32, l: u32, volume_growth: u32) -> u32 {
    (8 * k + 8 * l + volume_growth + 6) / 8 + 1
}

/// Checks symbolically that `d^m/dt^m u = 0` for `m = vanishing_order(k, l, n)`.
pub fn check_vanishing(u: &Poly, k: u32, l: u32, n: u32) -> Result<bool, AncientError> {
    if !membership(u, k, l)?.in_space {
        return Err(AncientError::NotInSpace { k, l });
    }
    let mut v = u.clone();
    for _ in 0..vanishing_order(k, l, n) {
        v = v.partial(Var::T);
    }
    Ok(v.is_zero())
}

/// Degree bounds on the coefficients of `u` in `P_(4k, 4l)`: each nonzero
/// `p_j` has degree at most `4(k - j)`, its gradient degree is at most
/// `4(l - j)` for `j <= l`, and `p_{l+1}` (if present) is constant.
pub fn check_coefficient_bounds(u: &Poly, k: u32, l: u32) -> bool {
    let dec = decompose(u);
    dec.coefficients().iter().enumerate().all(|(j, p)| {
        let j = j as i64;
        let (k, l) = (i64::from(k), i64::from(l));
        let (deg, grad) = p.growth_degrees();
        let value_ok = p.is_zero() || deg.at_most(4 * (k - j));
        let grad_ok = if j <= l {
            grad.at_most(4 * (l - j))
        } else {
            grad == Degree::NegInfinity
        };
        value_ok && grad_ok
    })
}

/// Smallest `(k, l)` with `u` in `P_(4k, 4l)`.
pub fn minimal_growth_class(u: &Poly) -> (u32, u32) {
    let ceil4 = |d: Degree| d.finite().map_or(0, |d| d.div_ceil(4));
    let (d, dg) = u.growth_degrees();
    (ceil4(d), ceil4(dg))
}
