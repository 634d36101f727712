//! Dense complex least squares by Householder QR.

use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// `|R_jj|` ratio below which the system is treated as rank deficient.
pub const RANK_TOLERANCE: f64 = 1e-13;

/// Overdetermined system `A x ≈ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLinearSystem {
    matrix: DMatrix<Complex64>,
    rhs: DVector<Complex64>,
}

/// Minimizer of `‖A x - b‖₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresSolution {
    pub solution: Vec<Complex64>,
    /// `‖A x - b‖₂` for the unscaled system.
    pub residual_norm: f64,
    /// `(max |R_jj| / min |R_jj|)²` of the column-scaled factor, an estimate
    /// of the normal-equation condition number.
    pub condition_estimate: f64,
}

impl DenseLinearSystem {
    /// `rows × cols` system from a row-major entry function.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        entry: impl FnMut(usize, usize) -> Complex64,
        rhs: Vec<Complex64>,
    ) -> Result<Self> {
        if rhs.len() != rows {
            return Err(Error::InvalidParameter(format!(
                "right-hand side has {} entries, expected {rows}",
                rhs.len()
            )));
        }
        Self::new(DMatrix::from_fn(rows, cols, entry), DVector::from_vec(rhs))
    }

    /// Builds from row vectors, all of equal length.
    pub fn from_rows(rows: &[Vec<Complex64>], rhs: Vec<Complex64>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j], rhs)
    }

    pub fn new(matrix: DMatrix<Complex64>, rhs: DVector<Complex64>) -> Result<Self> {
        if matrix.nrows() < matrix.ncols() || matrix.ncols() == 0 {
            return Err(Error::InvalidParameter(format!(
                "system must be overdetermined and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if rhs.len() != matrix.nrows() {
            return Err(Error::InvalidParameter("dimension mismatch".into()));
        }
        Ok(DenseLinearSystem { matrix, rhs })
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rhs(&self) -> &DVector<Complex64> {
        &self.rhs
    }

    /// `A x - b`.
    pub fn residual(&self, x: &[Complex64]) -> Vec<Complex64> {
        let x = DVector::from_column_slice(x);
        (&self.matrix * x - &self.rhs).iter().copied().collect()
    }
}

/// Solves `min ‖A x - b‖₂` with every column scaled to unit maximum modulus
/// before factorization.
pub fn solve_least_squares(sys: &DenseLinearSystem) -> Result<LeastSquaresSolution> {
    let n = sys.cols();
    let scales: Vec<f64> = sys
        .matrix
        .column_iter()
        .map(|c| {
            let m = c.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
            if m > 0.0 {
                1.0 / m
            } else {
                1.0
            }
        })
        .collect();
    let mut scaled = sys.matrix.clone();
    for (j, s) in scales.iter().enumerate() {
        scaled.column_mut(j).scale_mut(*s);
    }

    let qr = scaled.qr();
    let r = qr.r();
    let diag: Vec<f64> = (0..n).map(|j| r[(j, j)].norm()).collect();
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let ratio = if dmax > 0.0 { dmin / dmax } else { 0.0 };
    if ratio < RANK_TOLERANCE {
        return Err(Error::RankDeficient { ratio });
    }

    let mut y = qr.q().adjoint() * &sys.rhs;
    if !r.solve_upper_triangular_mut(&mut y) {
        return Err(Error::RankDeficient { ratio });
    }
    let solution: Vec<Complex64> = y.iter().zip(&scales).map(|(v, s)| v * s).collect();
    let residual_norm = sys
        .residual(&solution)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(LeastSquaresSolution {
        solution,
        residual_norm,
        condition_estimate: (1.0 / ratio).powi(2),
    })
}
