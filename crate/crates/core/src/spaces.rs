//! Graded polynomial spaces and the kernels of `laplacian^2` and `d/dt + laplacian^2`.
//!
//! `A_j^n` is spanned by spatial monomials of degree `j`; the biparabolic
//! space of degree `d` is `A_d + t A_{d-4} + t^2 A_{d-8} + ...`. Operators are
//! turned into exact matrices between these monomial bases, and every
//! dimension is available both from a closed formula and from kernel ranks.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactla::RationalMatrix;
use crate::{Grading, Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("{op:?} does not map {domain_mode:?} degree {domain} into {codomain_mode:?} degree {codomain}")]
    GradeMismatch {
        op: Operator,
        domain_mode: Grading,
        domain: i64,
        codomain_mode: Grading,
        codomain: i64,
    },
    #[error("bases live in different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("monomial {0} is not in the basis")]
    NotInSpan(String),
    #[error("{quantity}(n = {n}, d = {d}): closed formula gives {formula}, kernel ranks give {oracle}")]
    FormulaMismatch { quantity: &'static str, n: usize, d: usize, formula: usize, oracle: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Ordered monomial basis of one graded piece.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    n: usize,
    degree: i64,
    mode: Grading,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for SpaceBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.degree == other.degree
            && self.mode == other.mode
            && self.monomials == other.monomials
    }
}

impl SpaceBasis {
    fn new(n: usize, degree: i64, mode: Grading, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SpaceBasis { n, degree, mode, monomials, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mode(&self) -> Grading {
        self.mode
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p` in this basis; fails if `p` has a term outside it.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Rational>, SpaceError> {
        if p.dimension() != self.n {
            return Err(SpaceError::DimensionMismatch(self.n, p.dimension()));
        }
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let i = self.position(m).ok_or_else(|| SpaceError::NotInSpan(m.to_string()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_from_coordinates(&self, coords: &[Rational]) -> Poly {
        Poly::from_terms(
            self.n,
            self.monomials.iter().cloned().zip(coords.iter().cloned()),
        )
    }
}

/// Exponent vectors of total degree `j` in `n` variables, `x1` exponent descending.
fn exponent_vectors(n: usize, j: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![j]];
    }
    let mut out = Vec::new();
    for first in (0..=j).rev() {
        for mut rest in exponent_vectors(n - 1, j - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Basis of `A_j^n`, homogeneous spatial polynomials of degree `j`.
///
/// Empty for `j < 0`. Panics if `n == 0`.
pub fn basis_a(n: usize, j: i64) -> SpaceBasis {
    assert!(n >= 1, "need at least one spatial variable");
    let monomials = if j < 0 {
        Vec::new()
    } else {
        exponent_vectors(n, j as u32).into_iter().map(|x| Monomial::new(x, 0)).collect()
    };
    SpaceBasis::new(n, j, Grading::Space, monomials)
}

/// Basis of the biparabolic degree-`d` space, highest power of `t` first.
pub fn basis_biparabolic(n: usize, d: i64) -> SpaceBasis {
    assert!(n >= 1, "need at least one spatial variable");
    let mut monomials = Vec::new();
    if d >= 0 {
        for m in (0..=d / 4).rev() {
            let j = (d - 4 * m) as u32;
            monomials.extend(exponent_vectors(n, j).into_iter().map(|x| Monomial::new(x, m as u32)));
        }
    }
    SpaceBasis::new(n, d, Grading::Biparabolic, monomials)
}

/// `C(j + n - 1, n - 1)`, or 0 for `j < 0`.
pub fn dim_a(n: usize, j: i64) -> usize {
    if j < 0 {
        return 0;
    }
    let k = n - 1;
    let top = j as usize + k;
    (0..k).fold(1usize, |acc, i| acc * (top - i) / (i + 1))
}

/// Linear operators realized as matrices between graded bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Laplacian,
    Bilaplacian,
    HeatOp,
}

impl Operator {
    pub fn apply(self, p: &Poly) -> Poly {
        match self {
            Operator::Laplacian => p.laplacian(),
            Operator::Bilaplacian => p.bilaplacian(),
            Operator::HeatOp => p.heat_op(),
        }
    }

    /// How much the operator lowers the degree of its grading.
    pub fn degree_drop(self) -> i64 {
        match self {
            Operator::Laplacian => 2,
            Operator::Bilaplacian | Operator::HeatOp => 4,
        }
    }
}

/// Matrix of `op` with columns indexed by `domain` and rows by `codomain`.
pub fn operator_matrix(
    op: Operator,
    domain: &SpaceBasis,
    codomain: &SpaceBasis,
) -> Result<RationalMatrix, SpaceError> {
    if domain.n != codomain.n {
        return Err(SpaceError::DimensionMismatch(domain.n, codomain.n));
    }
    let mode_ok = domain.mode == codomain.mode
        && (op != Operator::HeatOp || domain.mode == Grading::Biparabolic);
    if !mode_ok || codomain.degree != domain.degree - op.degree_drop() {
        return Err(SpaceError::GradeMismatch {
            op,
            domain_mode: domain.mode,
            domain: domain.degree,
            codomain_mode: codomain.mode,
            codomain: codomain.degree,
        });
    }
    let mut mat = RationalMatrix::zeros(codomain.dim(), domain.dim());
    for (col, m) in domain.monomials.iter().enumerate() {
        let image = op.apply(&Poly::monomial(m.clone(), Rational::from_integer(1.into())));
        for (im, c) in image.terms() {
            let row = codomain.position(im).ok_or_else(|| SpaceError::NotInSpan(im.to_string()))?;
            mat.set(row, col, c.clone());
        }
    }
    Ok(mat)
}

fn onto(op: Operator, domain: SpaceBasis, codomain: SpaceBasis) -> bool {
    let target = codomain.dim();
    operator_matrix(op, &domain, &codomain).expect("grades chosen to match").rank() == target
}

/// Is `laplacian: A_{d+2} -> A_d` onto?
pub fn check_delta_onto(n: usize, d: usize) -> bool {
    let d = d as i64;
    onto(Operator::Laplacian, basis_a(n, d + 2), basis_a(n, d))
}

/// Is `laplacian^2: A_{d+4} -> A_d` onto?
pub fn check_bilaplacian_onto(n: usize, d: usize) -> bool {
    let d = d as i64;
    onto(Operator::Bilaplacian, basis_a(n, d + 4), basis_a(n, d))
}

/// Is `d/dt + laplacian^2` onto from biparabolic degree `d + 4` to `d`?
pub fn check_heatop_onto(n: usize, d: usize) -> bool {
    let d = d as i64;
    onto(Operator::HeatOp, basis_biparabolic(n, d + 4), basis_biparabolic(n, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// Kernel of `laplacian^2` on `A_d`.
    Biharmonic,
    /// Kernel of `d/dt + laplacian^2` on biparabolic degree `d`.
    Bicaloric,
}

impl KernelKind {
    fn spaces(self, n: usize, d: i64) -> (Operator, SpaceBasis, SpaceBasis) {
        match self {
            KernelKind::Biharmonic => (Operator::Bilaplacian, basis_a(n, d), basis_a(n, d - 4)),
            KernelKind::Bicaloric => {
                (Operator::HeatOp, basis_biparabolic(n, d), basis_biparabolic(n, d - 4))
            }
        }
    }

    fn matrix(self, n: usize, d: usize) -> (SpaceBasis, RationalMatrix) {
        let (op, domain, codomain) = self.spaces(n, d as i64);
        let m = operator_matrix(op, &domain, &codomain).expect("grades chosen to match");
        (domain, m)
    }
}

/// An explicit basis of one graded kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedKernel {
    pub n: usize,
    pub degree: usize,
    pub kind: KernelKind,
    pub basis: Vec<Poly>,
}

impl GradedKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn graded_kernel(kind: KernelKind, n: usize, d: usize) -> GradedKernel {
    let (domain, m) = kind.matrix(n, d);
    let basis = m.kernel().vectors.iter().map(|v| domain.poly_from_coordinates(v)).collect();
    GradedKernel { n, degree: d, kind, basis }
}

/// Homogeneous biharmonic polynomials of degree `d`.
///
/// For `d < 4` the codomain is trivial and the kernel is all of `A_d`.
pub fn kernel_biharmonic(n: usize, d: usize) -> GradedKernel {
    graded_kernel(KernelKind::Biharmonic, n, d)
}

/// Bicaloric polynomials homogeneous of biparabolic degree `d`.
pub fn kernel_bicaloric(n: usize, d: usize) -> GradedKernel {
    graded_kernel(KernelKind::Bicaloric, n, d)
}

/// Kernel dimension from the rank of the operator matrix.
pub fn kernel_dim(kind: KernelKind, n: usize, d: usize) -> usize {
    let (_, m) = kind.matrix(n, d);
    m.cols() - m.rank()
}

/// `[kernel_dim(kind, n, j) for j in 0..=d_max]`, computed in parallel.
pub fn kernel_dims(kind: KernelKind, n: usize, d_max: usize) -> Vec<usize> {
    (0..=d_max).into_par_iter().map(|j| kernel_dim(kind, n, j)).collect()
}

/// `dim A_d + dim A_{d-1} + dim A_{d-2} + dim A_{d-3}`.
pub fn dim_h_formula(n: usize, d: usize) -> usize {
    let d = d as i64;
    (0..4).map(|i| dim_a(n, d - i)).sum()
}

/// `sum_{j <= d} dim A_j`.
pub fn dim_p_formula(n: usize, d: usize) -> usize {
    (0..=d as i64).map(|j| dim_a(n, j)).sum()
}

fn cross_checked(
    quantity: &'static str,
    n: usize,
    d: usize,
    formula: usize,
    oracle: usize,
) -> Result<usize, SpaceError> {
    if formula == oracle {
        Ok(formula)
    } else {
        Err(SpaceError::FormulaMismatch { quantity, n, d, formula, oracle })
    }
}

/// Dimension of biharmonic polynomials of degree at most `d`, checked
/// against the summed kernel ranks.
pub fn dim_h(n: usize, d: usize) -> Result<usize, SpaceError> {
    let oracle = kernel_dims(KernelKind::Biharmonic, n, d).iter().sum();
    cross_checked("dim_H", n, d, dim_h_formula(n, d), oracle)
}

/// Dimension of bicaloric polynomials of biparabolic degree at most `d`,
/// checked against the summed kernel ranks.
pub fn dim_p(n: usize, d: usize) -> Result<usize, SpaceError> {
    let oracle = kernel_dims(KernelKind::Bicaloric, n, d).iter().sum();
    cross_checked("dim_P", n, d, dim_p_formula(n, d), oracle)
}

/// Both sides of the sharpness identity
/// `dim P_{4d,4d-1} = sum_{i=0}^{d} dim H_{4(d-i),4(d-i)-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessCheck {
    pub n: usize,
    pub d: usize,
    pub lhs: usize,
    pub rhs: usize,
    /// `dim H` at degrees `4d, 4(d-1), ..., 0`; the last entry is the constants.
    pub terms: Vec<usize>,
    pub equal: bool,
}

pub fn check_sharpness(n: usize, d: usize) -> Result<SharpnessCheck, SpaceError> {
    if n == 0 || d == 0 {
        return Err(SpaceError::InvalidArgument(format!(
            "sharpness needs n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let top = 4 * d;
    let bicaloric = kernel_dims(KernelKind::Bicaloric, n, top);
    let biharmonic = kernel_dims(KernelKind::Biharmonic, n, top);
    let lhs = cross_checked("dim_P", n, top, dim_p_formula(n, top), bicaloric.iter().sum())?;
    let mut terms = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let deg = 4 * (d - i);
        let oracle = biharmonic[..=deg].iter().sum();
        terms.push(cross_checked("dim_H", n, deg, dim_h_formula(n, deg), oracle)?);
    }
    let rhs = terms.iter().sum();
    Ok(SharpnessCheck { n, d, lhs, rhs, terms, equal: lhs == rhs })
}
