//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::ComplexMatrix;

/// Tolerance on `max |M - M†|` accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Largest dimension the eigensolver accepts.
pub const MAX_DIM: usize = 8;

/// Convergence target on the off-diagonal Frobenius norm.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Result of [`eig_hermitian`]: eigenvalues sorted in descending order and
/// the matching orthonormal eigenvectors as matrix columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// Rank-1 projector `|k><k|` onto eigenvector `k`.
    pub fn projector(&self, k: usize) -> ComplexMatrix {
        let v = self.eigenvector(k);
        let n = v.len();
        let mut p = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = v[i] * v[j].conj();
            }
        }
        p
    }

    /// Rebuilds `V diag(λ) V†`; used to cross-check the decomposition.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut m = ComplexMatrix::zeros(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += self.eigenvalues[k]
                        * self.eigenvectors[(i, k)]
                        * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        m
    }
}

/// Diagonalizes a Hermitian matrix of dimension at most 8.
///
/// Cyclic Jacobi: each rotation exactly diagonalizes the 2x2 Hermitian
/// block at (p, q), and sweeps repeat until the off-diagonal Frobenius
/// norm drops below 1e-14 (at most 100 sweeps).
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { max_dev: dev });
    }

    // Symmetrize so the sub-tolerance asymmetry cannot bias the rotations.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        if a.off_diagonal_norm_sqr() < OFF_DIAGONAL_TOL * OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(diag[src]);
        for row in 0..n {
            eigenvectors[(row, dst)] = v[(row, src)];
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation: diagonalizes the Hermitian 2x2 block
/// [[α, β], [β̄, γ]] at indices (p, q) and applies the similarity
/// transform to `a` while accumulating it into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let beta_sqr = beta.norm_sqr();
    if beta_sqr == 0.0 {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let half_gap = 0.5 * (alpha - gamma);
    let radius = (half_gap * half_gap + beta_sqr).sqrt();

    // t± = λ± − α, evaluated without cancellation.
    let t_plus = if half_gap > 0.0 {
        beta_sqr / (half_gap + radius)
    } else {
        radius - half_gap
    };
    let t_minus = if half_gap < 0.0 {
        -beta_sqr / (radius - half_gap)
    } else {
        -(half_gap + radius)
    };

    // Orthonormal eigenvectors (β, t±) of the block form the rotation columns.
    let n_plus = (beta_sqr + t_plus * t_plus).sqrt();
    let n_minus = (beta_sqr + t_minus * t_minus).sqrt();
    let r_pp = beta / n_plus;
    let r_qp = Complex64::new(t_plus / n_plus, 0.0);
    let r_pq = beta / n_minus;
    let r_qq = Complex64::new(t_minus / n_minus, 0.0);

    let n = a.dim();

    // a ← R† a R, touching only rows/columns p and q.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * r_pp + aiq * r_qp;
        a[(i, q)] = aip * r_pq + aiq * r_qq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = r_pp.conj() * apj + r_qp.conj() * aqj;
        a[(q, j)] = r_pq.conj() * apj + r_qq.conj() * aqj;
    }
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // v ← v R.
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * r_pp + viq * r_qp;
        v[(i, q)] = vip * r_pq + viq * r_qq;
    }
}
