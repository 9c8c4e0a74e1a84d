//! Hermitian eigensolver and the spectral balance predicates.
//!
//! A Hermitian `M = X + iY` is diagonalized through its real symmetric
//! embedding `[[X, -Y], [Y, X]]` with cyclic Jacobi. Every eigenvalue of `M`
//! appears twice in the embedding; sorted eigenvalues are paired at
//! positions `(2k, 2k + 1)`.

use num_complex::Complex64;

use crate::distance::{classical_distance_matrix, distance_matrices, is_order_independent, VertexOrder};
use crate::error::{Error, Result};
use crate::graph::GainGraph;
use crate::matrix::HermitianMatrix;

/// Default tolerance for every spectral comparison.
pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;
const CONVERGENCE: f64 = 1e-11;
const PAIRING: f64 = 1e-9;

/// Eigenvalues of a Hermitian matrix in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum { eigenvalues }
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    /// `max(|mu_1|, |mu_n|)`; zero for the empty spectrum.
    pub fn spectral_radius(&self) -> f64 {
        match (self.smallest(), self.largest()) {
            (Some(lo), Some(hi)) => lo.abs().max(hi.abs()),
            _ => 0.0,
        }
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Row-major real symmetric matrix used by the Jacobi kernel.
struct Symmetric {
    n: usize,
    a: Vec<f64>,
}

impl Symmetric {
    fn embed(m: &HermitianMatrix) -> Self {
        let n = m.order();
        let size = 2 * n;
        let mut a = vec![0.0; size * size];
        for i in 0..n {
            for j in 0..n {
                let z = m.get(i, j);
                a[i * size + j] = z.re;
                a[(i + n) * size + (j + n)] = z.re;
                a[i * size + (j + n)] = -z.im;
                a[(i + n) * size + j] = z.im;
            }
        }
        Symmetric { n: size, a }
    }

    fn off_norm(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += self.a[p * n + q] * self.a[p * n + q];
                }
            }
        }
        s.sqrt()
    }

    /// Cyclic Jacobi until the off-diagonal Frobenius norm is at most `tol`.
    /// Returns the diagonal and, if requested, the accumulated rotations (columns).
    fn diagonalize(mut self, tol: f64, vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
        let n = self.n;
        let mut v = vectors.then(|| {
            let mut v = vec![0.0; n * n];
            for i in 0..n {
                v[i * n + i] = 1.0;
            }
            v
        });
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if self.off_norm() <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    self.rotate(p, q, v.as_deref_mut());
                }
            }
        }
        if !converged && self.off_norm() > tol {
            return Err(Error::Numerical(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        let diag = (0..n).map(|i| self.a[i * n + i]).collect();
        Ok((diag, v))
    }

    fn rotate(&mut self, p: usize, q: usize, v: Option<&mut [f64]>) {
        let n = self.n;
        let apq = self.a[p * n + q];
        if apq == 0.0 {
            return;
        }
        let app = self.a[p * n + p];
        let aqq = self.a[q * n + q];
        let theta = (aqq - app) / (2.0 * apq);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        for k in 0..n {
            if k == p || k == q {
                continue;
            }
            let akp = self.a[k * n + p];
            let akq = self.a[k * n + q];
            let new_kp = c * akp - s * akq;
            let new_kq = s * akp + c * akq;
            self.a[k * n + p] = new_kp;
            self.a[p * n + k] = new_kp;
            self.a[k * n + q] = new_kq;
            self.a[q * n + k] = new_kq;
        }
        self.a[p * n + p] = app - t * apq;
        self.a[q * n + q] = aqq + t * apq;
        self.a[p * n + q] = 0.0;
        self.a[q * n + p] = 0.0;
        if let Some(v) = v {
            for k in 0..n {
                let vkp = v[k * n + p];
                let vkq = v[k * n + q];
                v[k * n + p] = c * vkp - s * vkq;
                v[k * n + q] = s * vkp + c * vkq;
            }
        }
    }
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &HermitianMatrix) -> Result<Spectrum> {
    let norm = m.frobenius_norm();
    let (diag, _) = Symmetric::embed(m).diagonalize(CONVERGENCE * norm, false)?;
    pair_eigenvalues(diag, norm).map(Spectrum::new)
}

fn pair_eigenvalues(mut doubled: Vec<f64>, norm: f64) -> Result<Vec<f64>> {
    doubled.sort_by(f64::total_cmp);
    let tol = PAIRING * norm.max(1.0);
    doubled
        .chunks(2)
        .map(|pair| {
            if (pair[0] - pair[1]).abs() > tol {
                Err(Error::Numerical(format!(
                    "unpaired eigenvalues {} and {}",
                    pair[0], pair[1]
                )))
            } else {
                Ok(0.5 * (pair[0] + pair[1]))
            }
        })
        .collect()
}

/// Eigenvalues with an orthonormal set of complex eigenvectors, so that
/// `M = Q diag(values) Q^H`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Eigenvectors as columns: `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    /// `Q diag(values) Q^H`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.values.len();
        HermitianMatrix::from_upper(
            n,
            |i| {
                (0..n)
                    .map(|k| self.values[k] * self.vectors[k][i].norm_sqr())
                    .sum()
            },
            |i, j| {
                (0..n)
                    .map(|k| self.vectors[k][i] * self.vectors[k][j].conj() * self.values[k])
                    .sum()
            },
        )
    }
}

/// Eigendecomposition via the real embedding.
///
/// Each embedded eigenvector `(a; b)` maps to the complex eigenvector
/// `a + ib`; the `2n` candidates span every eigenspace twice over, so `n`
/// of them are chosen by pivoted complex Gram-Schmidt.
pub fn eigh(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.order();
    let norm = m.frobenius_norm();
    let (diag, v) = Symmetric::embed(m).diagonalize(CONVERGENCE * norm, true)?;
    let v = v.expect("vectors requested");
    let size = 2 * n;
    let mut residuals: Vec<Vec<Complex64>> = (0..size)
        .map(|col| {
            (0..n)
                .map(|i| Complex64::new(v[i * size + col], v[(i + n) * size + col]))
                .collect()
        })
        .collect();
    let mut used = vec![false; size];
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for _ in 0..n {
        let (best, best_norm) = (0..size)
            .filter(|&k| !used[k])
            .map(|k| (k, residuals[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("candidates remain");
        if best_norm < 1e-6 {
            return Err(Error::Numerical("eigenvector basis is rank deficient".into()));
        }
        used[best] = true;
        let q: Vec<Complex64> = residuals[best].iter().map(|z| z / best_norm).collect();
        for k in 0..size {
            if used[k] {
                continue;
            }
            let dot: Complex64 = q.iter().zip(&residuals[k]).map(|(a, b)| a.conj() * b).sum();
            for (r, qi) in residuals[k].iter_mut().zip(&q) {
                *r -= dot * qi;
            }
        }
        values.push(diag[best]);
        vectors.push(q);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(EigenDecomposition {
        values: idx.iter().map(|&k| values[k]).collect(),
        vectors: idx.iter().map(|&k| vectors[k].clone()).collect(),
    })
}

/// Sorted spectra agree entrywise within `tol`.
pub fn cospectral(m1: &HermitianMatrix, m2: &HermitianMatrix, tol: f64) -> Result<bool> {
    if m1.order() != m2.order() {
        return Err(Error::Dimension {
            expected: m1.order(),
            found: m2.order(),
        });
    }
    Ok(eigenvalues_hermitian(m1)?.approx_eq(&eigenvalues_hermitian(m2)?, tol))
}

fn largest(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?.largest().unwrap_or(0.0))
}

fn radius(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?.spectral_radius())
}

/// `lambda_max(A(Phi)) == lambda_max(A(G))`, which holds exactly for balanced graphs.
pub fn balance_by_largest_eigenvalue(g: &GainGraph, tol: f64) -> Result<bool> {
    g.require_connected()?;
    let a = g.adjacency();
    Ok((largest(&a)? - largest(&a.modulus())?).abs() <= tol)
}

/// `rho(A(Phi)) == rho(A(G))`, which holds exactly when `Phi` or `-Phi` is balanced.
pub fn balance_or_antibalance_by_radius(g: &GainGraph, tol: f64) -> Result<bool> {
    g.require_connected()?;
    let a = g.adjacency();
    Ok((radius(&a)? - radius(&a.modulus())?).abs() <= tol)
}

fn order_independent_dmax(g: &GainGraph) -> Result<HermitianMatrix> {
    g.require_connected()?;
    if !is_order_independent(g)?.independent {
        return Err(Error::Precondition(
            "graph is order dependent, so D^max is not well defined".into(),
        ));
    }
    Ok(distance_matrices(g, &VertexOrder::standard(g.order()))?.dmax)
}

/// `D^max(Phi)` cospectral with `D(G)`; requires order independence.
pub fn distance_spectral_balance(g: &GainGraph, tol: f64) -> Result<bool> {
    let dmax = order_independent_dmax(g)?;
    cospectral(&dmax, &classical_distance_matrix(g)?, tol)
}

/// Largest eigenvalues of `D^max(Phi)` and `D(G)` agree; requires order independence.
pub fn distance_largest_eigenvalue_balance(g: &GainGraph, tol: f64) -> Result<bool> {
    let dmax = order_independent_dmax(g)?;
    Ok((largest(&dmax)? - largest(&classical_distance_matrix(g)?)?).abs() <= tol)
}
