//! Validated quantum states and the operations that move them around.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::eig::{eig_hermitian, HERMITICITY_TOL};
use crate::qcore::matrix::ComplexMatrix;

/// Tolerance on `|Tr ρ - 1|`.
pub(crate) const TRACE_TOL: f64 = 1e-12;

/// Eigenvalues of a candidate density matrix may undershoot zero by at most
/// this much; anything in `[-PSD_FLOOR, 0)` is clamped to zero on
/// construction.
pub(crate) const PSD_FLOOR: f64 = 1e-10;

const UNITARITY_TOL: f64 = 1e-12;

/// Which tensor factor of a qubit pair to keep when tracing out the other.
/// The system qubit is always the left factor (basis |system, ancilla>).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    System,
    Ancilla,
}

/// A Hermitian, unit-trace, positive-semidefinite operator on a 2- or
/// 4-dimensional Hilbert space.
///
/// Construction validates all three properties; eigenvalues in
/// `[-1e-10, 0)` are treated as rounding debris and clamped to zero.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let dim = mat.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedStateDimension { got: dim });
        }
        let herm_dev = mat.hermiticity_deviation();
        if herm_dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { max_dev: herm_dev });
        }
        let trace = mat.trace();
        let trace_dev = (trace - Complex64::ONE).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::NotUnitTrace { dev: trace_dev });
        }
        let eig = eig_hermitian(&mat)?;
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -PSD_FLOOR {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
        }
        if min < 0.0 {
            // Clamp the debris and renormalize the trace it carried.
            let clamped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
            let total: f64 = clamped.iter().sum();
            let eigenvalues: Vec<f64> = clamped.iter().map(|&l| l / total).collect();
            let mut mat = ComplexMatrix::zeros(dim);
            for k in 0..dim {
                if eigenvalues[k] == 0.0 {
                    continue;
                }
                for i in 0..dim {
                    for j in 0..dim {
                        mat[(i, j)] += eigenvalues[k]
                            * eig.eigenvectors[(i, k)]
                            * eig.eigenvectors[(j, k)].conj();
                    }
                }
            }
            return Ok(Self { mat, eigenvalues });
        }
        Ok(Self {
            mat,
            eigenvalues: eig.eigenvalues,
        })
    }

    /// Projector onto a pure state.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        Self::new(state.projector_matrix())
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64))
    }

    /// `|+><+|`, the fixed system preparation of the controlled-phase
    /// experiment.
    pub fn plus_state() -> Self {
        Self::from_pure(&PureState::plus()).expect("|+><+| is a valid state")
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Spectrum in descending order, computed once at construction.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `Tr(ρ M)`, the expectation value of an operator.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<Complex64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: op.dim(),
            });
        }
        Ok((&self.mat * op).trace())
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).sum()
    }
}

/// A normalized state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let dev = (norm_sqr.sqrt() - 1.0).abs();
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension { expected: 1, got: 0 });
        }
        if dev > TRACE_TOL {
            return Err(Error::NotNormalized { dev });
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state `|k>` in the given dimension.
    pub fn computational(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidOutcome { index: k, count: dim });
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[k] = Complex64::ONE;
        Ok(Self { amplitudes })
    }

    /// `(|0> + |1>)/√2`.
    pub fn plus() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: vec![s, s],
        }
    }

    /// `(|0> - |1>)/√2`.
    pub fn minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        }
    }

    /// `cos θ |0> + sin θ |1>`.
    pub fn real_superposition(theta: f64) -> Self {
        Self {
            amplitudes: vec![
                Complex64::new(theta.cos(), 0.0),
                Complex64::new(theta.sin(), 0.0),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `|v><v|` as a raw matrix.
    pub fn projector_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        m
    }

    /// Tensor product `|self> ⊗ |other>`, left factor first.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }
}

/// Partial trace of a raw 4x4 matrix over one qubit. No validation is
/// performed; use [`partial_trace`] for density matrices.
pub fn partial_trace_matrix(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let mut sum = Complex64::ZERO;
            for k in 0..2 {
                let (row, col) = match keep {
                    // Joint index is 2*system + ancilla.
                    Subsystem::System => (2 * i + k, 2 * j + k),
                    Subsystem::Ancilla => (2 * k + i, 2 * k + j),
                };
                sum += m[(row, col)];
            }
            out[(i, j)] = sum;
        }
    }
    Ok(out)
}

/// Reduced state of one qubit of a two-qubit density matrix.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    DensityMatrix::new(partial_trace_matrix(rho.mat(), keep)?)
}

/// `U ρ U†` for a unitary `U`.
pub fn apply_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: u.dim(),
        });
    }
    let dev = u.unitarity_deviation();
    if dev > UNITARITY_TOL {
        return Err(Error::NotUnitary { max_dev: dev });
    }
    DensityMatrix::new(&(u * rho.mat()) * &u.dagger())
}

/// Trace distance `½ Tr |a - b|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let diff = a.mat() - b.mat();
    let eig = eig_hermitian(&diff)?;
    Ok(0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

/// Uhlmann fidelity `(Tr √(√a b √a))²`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim();
    let eig_a = eig_hermitian(a.mat())?;
    let mut sqrt_a = ComplexMatrix::zeros(n);
    for k in 0..n {
        let root = eig_a.eigenvalues[k].max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                sqrt_a[(i, j)] += root * eig_a.eigenvectors[(i, k)] * eig_a.eigenvectors[(j, k)].conj();
            }
        }
    }
    let inner = &(&sqrt_a * b.mat()) * &sqrt_a;
    let eig_inner = eig_hermitian(&inner)?;
    let root_sum: f64 = eig_inner
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum();
    Ok((root_sum * root_sum).min(1.0))
}
