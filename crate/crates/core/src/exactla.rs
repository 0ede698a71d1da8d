//! Exact linear algebra over the rationals.
//!
//! Elimination pivots on the first nonzero entry of each column, so results
//! are deterministic. Storage is dense, but row operations only touch the
//! nonzero columns of the pivot row, which keeps the sparse operator
//! matrices of [`crate::spaces`] cheap to reduce.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate sample value {0}")]
    DuplicateSample(Rational),
    #[error("expected {expected} sample values, found {found}")]
    SampleCount { expected: usize, found: usize },
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// A basis of the null space of a matrix, as coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub ambient_dim: usize,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = RationalMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { rows: nrows, cols, entries })
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form and its strictly increasing pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        (m, pivots)
    }

    fn reduce_in_place(&mut self) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if found != prow {
                for c in 0..cols {
                    self.entries.swap(found * cols + c, prow * cols + c);
                }
            }
            let inv = self.get(prow, col).recip();
            let mut support = Vec::new();
            for c in col..cols {
                let e = &mut self.entries[prow * cols + c];
                if !e.is_zero() {
                    *e *= &inv;
                    support.push((c, e.clone()));
                }
            }
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for (c, v) in &support {
                    self.entries[r * cols + c] -= &factor * v;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null-space basis: one vector per free column, with that column set to 1.
    pub fn kernel(&self) -> KernelBasis {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<Vec<Rational>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, free).clone();
                }
                v
            })
            .collect();
        debug_assert_eq!(vectors.len() + pivots.len(), self.cols);
        KernelBasis { vectors, ambient_dim: self.cols }
    }

    /// One exact solution of `self * x = rhs` (free variables zero), or `None`
    /// if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
        if rhs.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: rhs.len() });
        }
        let width = self.cols + 1;
        let mut aug = RationalMatrix::zeros(self.rows, width);
        for (r, value) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, value.clone());
        }
        let pivots = aug.reduce_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<RationalMatrix>, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let size = self.rows;
        let mut aug = RationalMatrix::zeros(size, 2 * size);
        for r in 0..size {
            for c in 0..size {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, size + r, Rational::one());
        }
        let pivots = aug.reduce_in_place();
        if pivots.len() < size || pivots[size - 1] != size - 1 {
            return Ok(None);
        }
        let mut inv = RationalMatrix::zeros(size, size);
        for r in 0..size {
            for c in 0..size {
                inv.set(r, c, aug.get(r, size + c).clone());
            }
        }
        Ok(Some(inv))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Coefficients `b[i][j]` with `sum_i b[i][j] * samples[i]^m = delta(j, m)`
/// for `0 <= j, m <= d`.
///
/// Column `j` extracts the `t^j` coefficient of a degree-`d` polynomial in `t`
/// from its values at the samples. Any `d + 1` distinct values work.
pub fn vandermonde_coefficients(
    samples: &[Rational],
    d: usize,
) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    if samples.len() != d + 1 {
        return Err(LinAlgError::SampleCount { expected: d + 1, found: samples.len() });
    }
    for (i, a) in samples.iter().enumerate() {
        if samples[..i].contains(a) {
            return Err(LinAlgError::DuplicateSample(a.clone()));
        }
    }
    let rows = samples
        .iter()
        .map(|s| (0..=d).map(|m| num_traits::pow(s.clone(), m)).collect())
        .collect();
    let v = RationalMatrix::from_rows(rows)?;
    let inv = v.inverse()?.expect("Vandermonde matrix with distinct nodes is invertible");
    Ok((0..=d).map(|i| (0..=d).map(|j| inv.get(j, i).clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ints(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = RationalMatrix::identity(3).rref();
        assert_eq!(r, RationalMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = ints(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let v = RationalMatrix::from_rows(vec![
            vec![rat(1, 1), rat(-1, 1)],
            vec![rat(1, 1), rat(-1, 2)],
        ])
        .unwrap();
        let (r, p) = v.rref();
        assert_eq!(r, RationalMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_swaps_rows_for_pivot() {
        let (r, p) = ints(&[&[0, 1, 2], &[3, 0, 3]]).rref();
        assert_eq!(r, ints(&[&[1, 0, 1], &[0, 1, 2]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_and_rank() {
        let k = RationalMatrix::zeros(2, 3).kernel();
        assert_eq!(k.dim(), 3);
        assert_eq!(k.ambient_dim, 3);
        assert_eq!(ints(&[&[24]]).rank(), 1);

        let m = ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for v in &k.vectors {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(ints(&[&[24]]).solve(&[rat(24, 1)]).unwrap(), Some(vec![rat(1, 1)]));
        assert_eq!(ints(&[&[1, 1], &[1, 1]]).solve(&[rat(1, 1), rat(2, 1)]).unwrap(), None);
        assert_eq!(
            ints(&[&[1, 1]]).solve(&[rat(1, 1), rat(2, 1)]),
            Err(LinAlgError::DimensionMismatch { expected: 1, found: 2 })
        );
        // free variables set to zero
        assert_eq!(
            ints(&[&[0, 2, 4]]).solve(&[rat(6, 1)]).unwrap(),
            Some(vec![rat(0, 1), rat(3, 1), rat(0, 1)])
        );
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert_eq!(ints(&[&[1, 2], &[2, 4]]).inverse().unwrap(), None);
        let inv = ints(&[&[2, 1], &[1, 1]]).inverse().unwrap().unwrap();
        assert_eq!(inv, ints(&[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn vandermonde_examples() {
        let b = vandermonde_coefficients(&[rat(-1, 1), rat(-1, 2)], 1).unwrap();
        assert_eq!(b[0][0], rat(-1, 1));
        assert_eq!(b[1][0], rat(2, 1));
        assert_eq!(vandermonde_coefficients(&[rat(-1, 1)], 0).unwrap(), vec![vec![rat(1, 1)]]);
        assert_eq!(
            vandermonde_coefficients(&[rat(-1, 1), rat(-1, 1)], 1),
            Err(LinAlgError::DuplicateSample(rat(-1, 1)))
        );
        assert_eq!(
            vandermonde_coefficients(&[rat(-1, 1)], 1),
            Err(LinAlgError::SampleCount { expected: 2, found: 1 })
        );
    }
}
