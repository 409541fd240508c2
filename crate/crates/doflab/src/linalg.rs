//! Minimal dense linear algebra over exact rationals and complex floats.
//!
//! Decoding reduces to solving moderately sized linear systems (at most a few
//! dozen rows), so a straightforward Gauss–Jordan elimination is all that is
//! needed. The same code runs over exact rationals (no tolerance, first
//! nonzero pivot) and over `Complex64` (partial pivoting by magnitude, with
//! an explicit tolerance for rank decisions).

use crate::rational::Rat;
use num::complex::Complex64;
use num::Zero;
use std::ops::{Index, IndexMut};

/// Scalar operations shared by exact and floating arithmetic.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    /// Magnitude for pivot selection; any positive constant for exact types
    /// (pivoting then keeps the first nonzero candidate).
    fn magnitude(&self) -> f64;
    /// Zero test; `tol` is ignored by exact types.
    fn is_zero_tol(&self, tol: f64) -> bool;
    /// Equality up to `tol` (exact equality for exact types).
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        Rat::from_integer(1.into())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn magnitude(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol * other.norm().max(1.0)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// One row as a slice.
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    acc = acc.add(&a.mul(x));
                }
                acc
            })
            .collect()
    }
}

impl<T> Index<[usize; 2]> for Matrix<T> {
    type Output = T;
    fn index(&self, [r, c]: [usize; 2]) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<[usize; 2]> for Matrix<T> {
    fn index_mut(&mut self, [r, c]: [usize; 2]) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Outcome of a linear solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport<T> {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Whether the system has any solution.
    pub consistent: bool,
    /// The solution, present iff the system is consistent and the rank equals
    /// the number of unknowns (unique solution).
    pub solution: Option<Vec<T>>,
}

/// Solves `a * x = rhs` by Gauss–Jordan elimination with partial pivoting,
/// reporting rank, consistency, and — when unique — the solution.
pub fn solve<T: Scalar>(a: &Matrix<T>, rhs: &[T], tol: f64) -> SolveReport<T> {
    assert_eq!(rhs.len(), a.rows(), "rhs length must match row count");
    let rows = a.rows();
    let cols = a.cols();
    // Augmented working copy.
    let mut w: Vec<Vec<T>> = (0..rows)
        .map(|r| {
            let mut row: Vec<T> = a.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        // Best pivot among the remaining rows; strict comparison keeps the
        // first candidate for exact scalars (all magnitudes equal).
        let mut best: Option<(usize, f64)> = None;
        for r in pivot_row..rows {
            if !w[r][col].is_zero_tol(tol) {
                let m = w[r][col].magnitude();
                if best.map_or(true, |(_, bm)| m > bm) {
                    best = Some((r, m));
                }
            }
        }
        let Some((r, _)) = best else { continue };
        w.swap(pivot_row, r);
        let inv = w[pivot_row][col].clone();
        for c in col..=cols {
            w[pivot_row][c] = w[pivot_row][c].div(&inv);
        }
        for r in 0..rows {
            if r != pivot_row && !w[r][col].is_zero_tol(tol) {
                let factor = w[r][col].clone();
                for c in col..=cols {
                    let delta = factor.mul(&w[pivot_row][c]);
                    w[r][c] = w[r][c].sub(&delta);
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    let rank = pivot_cols.len();
    let consistent = (rank..rows).all(|r| w[r][cols].is_zero_tol(tol));
    let solution = if consistent && rank == cols {
        let mut x = vec![T::zero(); cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            x[c] = w[i][cols].clone();
        }
        Some(x)
    } else {
        None
    };
    SolveReport {
        rank,
        consistent,
        solution,
    }
}
