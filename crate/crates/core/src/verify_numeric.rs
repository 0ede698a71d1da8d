//! Cylinder integrals of polynomials and reverse-Poincaré ratios.
//!
//! Integrals over `Q_r = B_r(c) x [-r^4, 0]` are evaluated exactly: each
//! monomial moment of the ball is `rational * pi^(n/2 rounded down)`, the
//! time integral is rational, and the radius and center are converted from
//! `f64` to their exact binary rationals first. Only the final value is
//! rounded. Ratios of energies share the same power of pi, so they are
//! exact rationals before conversion.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::{Poly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("invalid cylinder: {0}")]
    InvalidSpec(String),
    #[error("polynomial has {found} spatial variables, cylinder has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a solution of u_t + bilaplacian(u) = 0: {0}")]
    NotBicaloric(String),
    #[error("not a t-free biharmonic polynomial: {0}")]
    NotBiharmonic(String),
    #[error("ratio undefined: the lower-order energy vanishes (u = 0)")]
    ZeroSolution,
}

/// A heat cylinder `B_r(center) x [-r^4, 0]` together with the inner
/// fraction `epsilon` used for the smaller cylinder `Q_{epsilon r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderSpec {
    n: usize,
    center: Vec<f64>,
    r: f64,
    epsilon: f64,
}

impl CylinderSpec {
    /// Cylinder centered at the origin.
    pub fn new(n: usize, r: f64, epsilon: f64) -> Result<Self, NumericError> {
        Self::with_center(vec![0.0; n], r, epsilon)
    }

    pub fn with_center(center: Vec<f64>, r: f64, epsilon: f64) -> Result<Self, NumericError> {
        if center.is_empty() {
            return Err(NumericError::InvalidSpec("need at least one spatial variable".into()));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(NumericError::InvalidSpec(format!("radius must be positive, got {r}")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(NumericError::InvalidSpec(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(NumericError::InvalidSpec("center must be finite".into()));
        }
        Ok(CylinderSpec { n: center.len(), center, r, epsilon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    /// Same cylinder with a different outer radius.
    pub fn with_radius(&self, r: f64) -> Result<Self, NumericError> {
        Self::with_center(self.center.clone(), r, self.epsilon)
    }

    fn radius(&self, region: Region) -> Rational {
        let r = exact(self.r);
        match region {
            Region::Outer => r,
            Region::Inner => r * exact(self.epsilon),
        }
    }

    fn exact_center(&self) -> Vec<Rational> {
        self.center.iter().map(|&c| exact(c)).collect()
    }
}

fn exact(v: f64) -> Rational {
    Rational::from_float(v).expect("finite by construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `Q_{epsilon r}`
    Inner,
    /// `Q_r`
    Outer,
}

/// `rational * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactIntegral {
    pub rational: Rational,
    pub pi_power: u32,
}

impl ExactIntegral {
    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

/// `Gamma(k / 2)` for `k >= 1` as `(rational, carries sqrt(pi))`.
fn gamma_half(k: u32) -> (Rational, bool) {
    let fact = |m: u32| (1..=m).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()));
    if k.is_multiple_of(2) {
        (fact(k / 2 - 1), false)
    } else {
        let m = (k - 1) / 2;
        let four_m = num_traits::pow(Rational::from_integer(4.into()), m as usize);
        (fact(2 * m) / (four_m * fact(m)), true)
    }
}

/// Rational part of `integral over the unit ball in R^n of y^alpha`; the full
/// value is this times `pi^(n / 2)` (integer division).
fn unit_ball_moment(alpha: &[u32]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let n = alpha.len() as u32;
    let total: u32 = alpha.iter().sum::<u32>() + n;
    let num = alpha.iter().fold(Rational::from_integer(2.into()), |acc, &a| acc * gamma_half(a + 1).0);
    let (den, _) = gamma_half(total);
    num / (den * Rational::from_integer(total.into()))
}

fn centered(p: &Poly, spec: &CylinderSpec) -> Result<Poly, NumericError> {
    if p.dimension() != spec.n {
        return Err(NumericError::DimensionMismatch { expected: spec.n, found: p.dimension() });
    }
    if spec.center.iter().all(|&c| c == 0.0) {
        Ok(p.clone())
    } else {
        Ok(p.translate(&spec.exact_center()).expect("dimensions checked"))
    }
}

fn integrate_centered(p: &Poly, rho: &Rational, with_time: bool) -> Rational {
    let n = p.dimension() as u32;
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        if !with_time && m.t_exponent() > 0 {
            continue;
        }
        let moment = unit_ball_moment(m.x_exponents());
        if moment.is_zero() {
            continue;
        }
        let mut v = c * moment * num_traits::pow(rho.clone(), (m.space_degree() + n) as usize);
        if with_time {
            let e = m.t_exponent();
            let sign = if e % 2 == 0 { Rational::one() } else { -Rational::one() };
            v = v * sign * num_traits::pow(rho.clone(), 4 * (e as usize + 1))
                / Rational::from_integer((e + 1).into());
        }
        acc += v;
    }
    acc
}

/// Exact `integral of p over Q` for the inner or outer cylinder of `spec`.
pub fn cylinder_integral_exact(
    p: &Poly,
    spec: &CylinderSpec,
    region: Region,
) -> Result<ExactIntegral, NumericError> {
    let q = centered(p, spec)?;
    Ok(ExactIntegral {
        rational: integrate_centered(&q, &spec.radius(region), true),
        pi_power: spec.n as u32 / 2,
    })
}

pub fn cylinder_integral(p: &Poly, spec: &CylinderSpec, region: Region) -> Result<f64, NumericError> {
    Ok(cylinder_integral_exact(p, spec, region)?.to_f64())
}

/// Exact `integral of p over B_rho(center)` for a `t`-free `p`.
pub fn ball_integral_exact(
    p: &Poly,
    spec: &CylinderSpec,
    region: Region,
) -> Result<ExactIntegral, NumericError> {
    if p.contains_t() {
        return Err(NumericError::NotBiharmonic(p.to_string()));
    }
    let q = centered(p, spec)?;
    Ok(ExactIntegral {
        rational: integrate_centered(&q, &spec.radius(region), false),
        pi_power: spec.n as u32 / 2,
    })
}

/// The six space-time energies of a solution over one cylinder.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EnergyBundle {
    pub e_u: f64,
    pub e_grad: f64,
    pub e_hess: f64,
    pub e_graddelta: f64,
    pub e_ut: f64,
    pub e_gradut: f64,
}

#[derive(Clone, Debug)]
struct ExactEnergies {
    e_u: Rational,
    e_grad: Rational,
    e_hess: Rational,
    e_graddelta: Rational,
    e_ut: Rational,
    e_gradut: Rational,
    pi_power: u32,
}

impl ExactEnergies {
    fn to_bundle(&self) -> EnergyBundle {
        let f = |v: &Rational| ExactIntegral { rational: v.clone(), pi_power: self.pi_power }.to_f64();
        EnergyBundle {
            e_u: f(&self.e_u),
            e_grad: f(&self.e_grad),
            e_hess: f(&self.e_hess),
            e_graddelta: f(&self.e_graddelta),
            e_ut: f(&self.e_ut),
            e_gradut: f(&self.e_gradut),
        }
    }
}

fn sum_of_squares<'a>(ps: impl IntoIterator<Item = &'a Poly>, n: usize) -> Poly {
    ps.into_iter().fold(Poly::zero(n), |acc, p| &acc + &(p * p))
}

/// Squared-derivative integrands of a solution, shared across radii.
struct Integrands {
    u2: Poly,
    grad2: Poly,
    hess2: Poly,
    graddelta2: Poly,
    ut2: Poly,
    gradut2: Poly,
}

impl Integrands {
    fn new(u: &Poly) -> Self {
        let n = u.dimension();
        let ut = u.partial(Var::T);
        let hess = u.hessian();
        Integrands {
            u2: u * u,
            grad2: sum_of_squares(&u.gradient(), n),
            hess2: sum_of_squares(hess.iter().flatten(), n),
            graddelta2: sum_of_squares(&u.laplacian().gradient(), n),
            ut2: &ut * &ut,
            gradut2: sum_of_squares(&ut.gradient(), n),
        }
    }

    fn integrate(&self, spec: &CylinderSpec, region: Region, with_time: bool) -> Result<ExactEnergies, NumericError> {
        let rho = spec.radius(region);
        let go = |p: &Poly| -> Result<Rational, NumericError> {
            Ok(integrate_centered(&centered(p, spec)?, &rho, with_time))
        };
        Ok(ExactEnergies {
            e_u: go(&self.u2)?,
            e_grad: go(&self.grad2)?,
            e_hess: go(&self.hess2)?,
            e_graddelta: go(&self.graddelta2)?,
            e_ut: go(&self.ut2)?,
            e_gradut: go(&self.gradut2)?,
            pi_power: spec.n as u32 / 2,
        })
    }
}

fn require_bicaloric(u: &Poly, spec: &CylinderSpec) -> Result<(), NumericError> {
    if u.dimension() != spec.n {
        return Err(NumericError::DimensionMismatch { expected: spec.n, found: u.dimension() });
    }
    if !u.heat_op().is_zero() {
        return Err(NumericError::NotBicaloric(u.to_string()));
    }
    Ok(())
}

/// Energies on the inner cylinder `Q_{epsilon r}` and the outer cylinder `Q_r`.
pub fn energy_bundle(u: &Poly, spec: &CylinderSpec) -> Result<(EnergyBundle, EnergyBundle), NumericError> {
    require_bicaloric(u, spec)?;
    let ig = Integrands::new(u);
    Ok((
        ig.integrate(spec, Region::Inner, true)?.to_bundle(),
        ig.integrate(spec, Region::Outer, true)?.to_bundle(),
    ))
}

/// Each higher-order term divided by `int_{Q_r} u^2 + r^2 int_{Q_r} |grad u|^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentRatios {
    /// `r^4 int |hess u|^2`
    pub hessian: f64,
    /// `r^8 int u_t^2`
    pub time_derivative: f64,
    /// `r^6 int |grad laplacian u|^2`
    pub grad_laplacian: f64,
    /// `r^10 int |grad u_t|^2`
    pub grad_time_derivative: f64,
}

impl ComponentRatios {
    pub fn as_array(&self) -> [f64; 4] {
        [self.hessian, self.time_derivative, self.grad_laplacian, self.grad_time_derivative]
    }
}

struct ExactRatios {
    combined: Rational,
    parts: [Rational; 4],
}

fn exact_ratios(ig: &Integrands, spec: &CylinderSpec, with_time: bool) -> Result<ExactRatios, NumericError> {
    let inner = ig.integrate(spec, Region::Inner, with_time)?;
    let outer = ig.integrate(spec, Region::Outer, with_time)?;
    let r = exact(spec.r);
    let rp = |e: usize| num_traits::pow(r.clone(), e);
    let denom = &outer.e_u + rp(2) * &outer.e_grad;
    if denom.is_zero() {
        return Err(NumericError::ZeroSolution);
    }
    let parts = [
        rp(4) * &inner.e_hess / &denom,
        rp(8) * &inner.e_ut / &denom,
        rp(6) * &inner.e_graddelta / &denom,
        rp(10) * &inner.e_gradut / &denom,
    ];
    let combined = parts.iter().fold(Rational::zero(), |acc, p| acc + p);
    Ok(ExactRatios { combined, parts })
}

fn f(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `[r^4 (int |hess u|^2 + r^2 int |grad lap u|^2) + r^8 (int u_t^2 + r^2 int |grad u_t|^2)]`
/// over `Q_{epsilon r}`, divided by `int_{Q_r} u^2 + r^2 int_{Q_r} |grad u|^2`.
pub fn rp_ratio(u: &Poly, spec: &CylinderSpec) -> Result<f64, NumericError> {
    require_bicaloric(u, spec)?;
    Ok(f(&exact_ratios(&Integrands::new(u), spec, true)?.combined))
}

pub fn rp_component_ratios(u: &Poly, spec: &CylinderSpec) -> Result<ComponentRatios, NumericError> {
    require_bicaloric(u, spec)?;
    let ex = exact_ratios(&Integrands::new(u), spec, true)?;
    Ok(ComponentRatios {
        hessian: f(&ex.parts[0]),
        time_derivative: f(&ex.parts[1]),
        grad_laplacian: f(&ex.parts[2]),
        grad_time_derivative: f(&ex.parts[3]),
    })
}

/// Time-independent ratio for a biharmonic `u(x)`:
/// `r^4 (int_{B_{eps r}} |hess u|^2 + r^2 int_{B_{eps r}} |grad lap u|^2)`
/// over `int_{B_r} u^2 + r^2 int_{B_r} |grad u|^2`.
pub fn rp_biharmonic_ratio(u: &Poly, spec: &CylinderSpec) -> Result<f64, NumericError> {
    if u.dimension() != spec.n {
        return Err(NumericError::DimensionMismatch { expected: spec.n, found: u.dimension() });
    }
    if u.contains_t() || !u.bilaplacian().is_zero() {
        return Err(NumericError::NotBiharmonic(u.to_string()));
    }
    let ex = exact_ratios(&Integrands::new(u), spec, false)?;
    Ok(f(&(&ex.parts[0] + &ex.parts[2])))
}

/// Ratios of one solution at one outer radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub combined: f64,
    pub components: ComponentRatios,
}

/// Evaluates all ratios over a list of radii, in parallel, keeping input order.
pub fn rp_sweep(u: &Poly, spec: &CylinderSpec, radii: &[f64]) -> Result<Vec<SweepRow>, NumericError> {
    require_bicaloric(u, spec)?;
    let ig = Integrands::new(u);
    radii
        .par_iter()
        .map(|&r| {
            let s = spec.with_radius(r)?;
            let ex = exact_ratios(&ig, &s, true)?;
            Ok(SweepRow {
                r,
                combined: f(&ex.combined),
                components: ComponentRatios {
                    hessian: f(&ex.parts[0]),
                    time_derivative: f(&ex.parts[1]),
                    grad_laplacian: f(&ex.parts[2]),
                    grad_time_derivative: f(&ex.parts[3]),
                },
            })
        })
        .collect()
}

/// Spatial ratios of a biharmonic polynomial over a list of radii.
pub fn rp_biharmonic_sweep(u: &Poly, spec: &CylinderSpec, radii: &[f64]) -> Result<Vec<f64>, NumericError> {
    radii
        .par_iter()
        .map(|&r| rp_biharmonic_ratio(u, &spec.with_radius(r)?))
        .collect()
}

/// `max(values) <= factor * values[0]`. An all-zero series passes.
pub fn bounded_by_first(values: &[f64], factor: f64) -> bool {
    let Some(&base) = values.first() else {
        return true;
    };
    values.iter().all(|v| v.is_finite() && *v >= 0.0) && values.iter().all(|&v| v <= factor * base)
}
