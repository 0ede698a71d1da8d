//! Exact sparse polynomials in `x1..xn` and `t` over the rationals.
//!
//! Everything downstream (operator matrices, ancient solutions, quadrature)
//! is built on [`Poly`], so this module keeps the representation canonical:
//! no stored zero coefficients and every monomial carries exactly `n`
//! spatial exponents.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: {left} vs {right} spatial variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} at position {position} is out of range for n = {n}")]
    VariableOutOfRange { index: usize, n: usize, position: usize },
}

/// A differentiation variable. Spatial indices are zero based: `X(0)` is `x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    T,
}

/// How monomials are grouped into homogeneous pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Sum of spatial exponents; `t` is ignored.
    Space,
    /// `4 * (t exponent) + (sum of spatial exponents)`.
    Biparabolic,
}

impl Grading {
    pub fn degree_of(self, m: &Monomial) -> u32 {
        match self {
            Grading::Space => m.space_degree(),
            Grading::Biparabolic => m.biparabolic_degree(),
        }
    }
}

/// Polynomial degree with `-inf` for the zero polynomial.
///
/// Variant order makes `NegInfinity` the least element, so `max` over
/// terms is total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self <= bound`, where `-inf` is below every integer.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => i64::from(d) <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial `sum c_m * m` over monomials in `n` spatial variables and `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Poly::monomial(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let n = m.dimension();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { n, terms }
    }

    /// The coordinate polynomial `x_{i+1}` or `t`.
    ///
    /// Panics if a spatial index is out of range.
    pub fn var(n: usize, v: Var) -> Self {
        let m = match v {
            Var::X(i) => {
                assert!(i < n, "x{} out of range for n = {n}", i + 1);
                Monomial::one(n).with_x(i, 1)
            }
            Var::T => Monomial::one(n).with_t(1),
        };
        Poly::monomial(m, Rational::one())
    }

    /// Builds a canonical polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            assert_eq!(m.dimension(), n, "monomial dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Parses the text grammar `[coef][*][factor(*factor)*]` joined by `+`/`-`.
    pub fn parse(text: &str, n: usize) -> Result<Poly, PolyError> {
        parse::parse(text, n)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains_t(&self) -> bool {
        self.terms.keys().any(|m| m.t_exponent() > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<(), PolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let (e, lowered) = match v {
                Var::X(i) if i < self.n => {
                    let e = m.x_exponents()[i];
                    (e, if e > 0 { Some(m.with_x(i, e - 1)) } else { None })
                }
                Var::X(_) => (0, None),
                Var::T => {
                    let e = m.t_exponent();
                    (e, if e > 0 { Some(m.with_t(e - 1)) } else { None })
                }
            };
            if let Some(lm) = lowered {
                out.add_term(lm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// `sum_i d^2/dx_i^2`.
    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            for (i, &e) in m.x_exponents().iter().enumerate() {
                if e >= 2 {
                    let factor = Rational::from_integer((e * (e - 1)).into());
                    out.add_term(m.with_x(i, e - 2), c * factor);
                }
            }
        }
        out
    }

    pub fn bilaplacian(&self) -> Poly {
        self.laplacian().laplacian()
    }

    /// `d/dt + laplacian(laplacian(.))`; zero exactly on bicaloric polynomials.
    pub fn heat_op(&self) -> Poly {
        &self.partial(Var::T) + &self.bilaplacian()
    }

    /// Spatial gradient (no `t` component).
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.n).map(|i| self.partial(Var::X(i))).collect()
    }

    /// Spatial Hessian, row-major.
    pub fn hessian(&self) -> Vec<Vec<Poly>> {
        self.gradient()
            .iter()
            .map(|g| (0..self.n).map(|j| g.partial(Var::X(j))).collect())
            .collect()
    }

    fn max_degree(&self, grading: Grading) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(grading.degree_of(m)))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn biparabolic_degree(&self) -> Degree {
        self.max_degree(Grading::Biparabolic)
    }

    pub fn space_degree(&self) -> Degree {
        self.max_degree(Grading::Space)
    }

    /// Highest power of `t` present.
    pub fn time_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.t_exponent()))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// `(biparabolic degree of p, max biparabolic degree over the gradient components)`.
    ///
    /// For polynomials these are the growth exponents of `|u|` and `|grad u|`
    /// over the cylinders `B_R x [-R^4, 0]`.
    pub fn growth_degrees(&self) -> (Degree, Degree) {
        let grad = self
            .gradient()
            .iter()
            .map(Poly::biparabolic_degree)
            .max()
            .unwrap_or(Degree::NegInfinity);
        (self.biparabolic_degree(), grad)
    }

    pub fn homogeneous_component(&self, j: u32, grading: Grading) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| grading.degree_of(m) == j)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// All nonzero homogeneous pieces keyed by degree.
    pub fn components(&self, grading: Grading) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(grading.degree_of(m))
                .or_insert_with(|| Poly::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Coefficient of `t^j` as a `t`-free polynomial.
    pub fn t_coefficient(&self, j: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.t_exponent() == j)
                .map(|(m, c)| (m.with_t(0), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `t^j`.
    pub fn shift_t(&self, j: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_t(m.t_exponent() + j), c.clone()))
                .collect(),
        }
    }

    /// `p(x, value)`.
    pub fn substitute_t(&self, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let tv = num_traits::pow(value.clone(), m.t_exponent() as usize);
            out.add_term(m.with_t(0), c * tv);
        }
        out
    }

    /// `p(lambda * x, lambda^4 * t)`.
    pub fn parabolic_rescale(&self, lambda: &Rational) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let f = num_traits::pow(lambda.clone(), m.biparabolic_degree() as usize);
                    (m.clone(), c * f)
                })
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `p(x + shift, t)`.
    pub fn translate(&self, shift: &[Rational]) -> Result<Poly, PolyError> {
        if shift.len() != self.n {
            return Err(PolyError::DimensionMismatch { left: self.n, right: shift.len() });
        }
        let linear: Vec<Poly> = shift
            .iter()
            .enumerate()
            .map(|(i, s)| &Poly::var(self.n, Var::X(i)) + &Poly::constant(self.n, s.clone()))
            .collect();
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = Poly::monomial(Monomial::one(self.n).with_t(m.t_exponent()), c.clone());
            for (i, &e) in m.x_exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &linear[i].pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at a space-time point in floating point.
    pub fn eval_f64(&self, x: &[f64], t: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN) * t.powi(m.t_exponent() as i32);
                for (xi, &e) in x.iter().zip(m.x_exponents()) {
                    v *= xi.powi(e as i32);
                }
                v
            })
            .sum()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_constant() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn ring_examples() {
        assert!(p("x1", 1).checked_add(&p("-x1", 1)).unwrap().is_zero());
        assert_eq!(&p("x1 + x2", 2) * &p("x1 - x2", 2), p("x1^2 - x2^2", 2));
        assert_eq!(p("3*x1^2", 1).scale(&q(1, 3)), p("x1^2", 1));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = p("x1", 1).checked_add(&p("x1", 2)).unwrap_err();
        assert_eq!(err, PolyError::DimensionMismatch { left: 1, right: 2 });
        assert!(p("x1", 1).checked_mul(&p("x1", 2)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x1^3", 1).partial(Var::X(0)), p("3*x1^2", 1));
        assert_eq!(p("t^2*x1", 1).partial(Var::T), p("2*t*x1", 1));
        assert!(p("7", 2).partial(Var::X(1)).is_zero());
    }

    #[test]
    fn operators() {
        assert_eq!(p("x1^2 + x2^2", 2).laplacian(), p("4", 2));
        assert_eq!(p("x1^4", 1).bilaplacian(), p("24", 1));
        assert!(p("x1^4 - 24*t", 1).heat_op().is_zero());
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(p("x1^2*x2", 2).gradient(), vec![p("2*x1*x2", 2), p("x1^2", 2)]);
        assert!(p("t^3", 3).gradient().iter().all(Poly::is_zero));
        assert_eq!(p("x1^4 - 24*t", 1).gradient(), vec![p("4*x1^3", 1)]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p("t*x1^2", 1).biparabolic_degree(), Degree::Finite(6));
        assert_eq!(
            p("x1^4 - 24*t", 1).growth_degrees(),
            (Degree::Finite(4), Degree::Finite(3))
        );
        assert_eq!(p("1", 1).biparabolic_degree(), Degree::Finite(0));
        assert_eq!(Poly::zero(2).biparabolic_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(Degree::NegInfinity.at_most(-5));
    }

    #[test]
    fn homogeneous_components() {
        assert_eq!(p("x1^2 + x1", 1).homogeneous_component(2, Grading::Space), p("x1^2", 1));
        assert_eq!(
            p("x1^4 - 24*t", 1).homogeneous_component(4, Grading::Biparabolic),
            p("x1^4 - 24*t", 1)
        );
        assert!(p("5", 1).homogeneous_component(3, Grading::Space).is_zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(p("x1^4 - 24*t", 1).to_string(), "x1^4 - 24*t");
        assert_eq!(
            p("20160*t^2 + x1^8 - 1680*t*x1^4", 1).to_string(),
            "x1^8 - 1680*t*x1^4 + 20160*t^2"
        );
        assert_eq!(p("7 + 1/2*x1*x2^3", 2).to_string(), "1/2*x1*x2^3 + 7");
        assert_eq!(p("-x1 + 2", 1).to_string(), "-x1 + 2");
        assert_eq!(Poly::zero(3).to_string(), "0");
    }

    #[test]
    fn substitution_and_rescaling() {
        let u = p("x1^4 - 24*t", 1);
        assert_eq!(u.substitute_t(&q(-1, 2)), p("x1^4 + 12", 1));
        assert_eq!(u.parabolic_rescale(&q(2, 1)), p("16*x1^4 - 384*t", 1));
        assert_eq!(p("x1^2", 1).translate(&[q(1, 1)]).unwrap(), p("x1^2 + 2*x1 + 1", 1));
        assert_eq!(u.t_coefficient(1), p("-24", 1));
        assert_eq!(p("x1", 1).shift_t(2), p("t^2*x1", 1));
    }

    #[test]
    fn eval_matches_exact() {
        let u = p("x1^4 - 24*t + 1/2*x1*x2", 2);
        assert!((u.eval_f64(&[2.0, 3.0], -0.5) - (16.0 + 12.0 + 3.0)).abs() < 1e-12);
    }
}
