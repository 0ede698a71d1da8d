//! Exact computer algebra for polynomially bounded biharmonic and ancient
//! bicaloric polynomials on `R^n`.
//!
//! * [`polyalg`]: sparse polynomials in `x1..xn, t` with differential operators.
//! * [`exactla`]: rational RREF, rank, kernels, solves and Vandermonde inverses.
//! * [`spaces`]: graded bases, operator matrices, kernel dimensions and the
//!   dimension formulas for biharmonic and bicaloric polynomial spaces.
//! * [`ancient`]: caloric extension, decomposition in powers of `t`, and
//!   growth classification of ancient solutions.
//! * [`verify_numeric`]: cylinder quadrature and reverse-Poincaré ratios.

pub mod ancient;
pub mod exactla;
pub mod polyalg;
pub mod spaces;
pub mod verify_numeric;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub use polyalg::{Degree, Grading, Monomial, Poly, PolyError, Var};

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
