use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance (relative to the largest entry) for accepting a matrix as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Dense square Hermitian matrix, row-major.
///
/// Only constructors that enforce `a[i][j] == conj(a[j][i])` exist, so every
/// value of this type is exactly Hermitian with a real diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Builds the matrix from its upper triangle; `upper(i, j)` is called for `i < j`
    /// and `diag(i)` supplies the (real) diagonal.
    pub fn from_upper(
        n: usize,
        mut diag: impl FnMut(usize) -> f64,
        mut upper: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut m = HermitianMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(diag(i), 0.0);
            for j in i + 1..n {
                let z = upper(i, j);
                m.data[i * n + j] = z;
                m.data[j * n + i] = z.conj();
            }
        }
        m
    }

    /// Validates a row-major `n x n` buffer and symmetrizes away rounding noise.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let scale = rows
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(1.0_f64, f64::max);
        let tol = HERMITIAN_TOLERANCE * scale;
        for i in 0..n {
            for j in i..n {
                let a = rows[i][j];
                let b = rows[j][i];
                if !(a.re.is_finite() && a.im.is_finite()) || (a - b.conj()).norm() > tol {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(HermitianMatrix::from_upper(
            n,
            |i| rows[i][i].re,
            |i, j| (rows[i][j] + rows[j][i].conj()) * 0.5,
        ))
    }

    pub fn from_real_symmetric(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        HermitianMatrix::from_rows(&rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise modulus `|A|`.
    pub fn modulus(&self) -> HermitianMatrix {
        HermitianMatrix {
            n: self.n,
            data: self.data.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect(),
        }
    }

    /// Entrywise product with a real symmetric matrix of the same order.
    pub fn hadamard_real(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(HermitianMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * b.re)
                .collect(),
        })
    }

    /// The matrix with row and column `k` removed.
    pub fn principal_submatrix(&self, k: usize) -> HermitianMatrix {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        HermitianMatrix::from_upper(
            keep.len(),
            |i| self.get(keep[i], keep[i]).re,
            |i, j| self.get(keep[i], keep[j]),
        )
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &HermitianMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}
