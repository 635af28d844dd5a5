//! Hermitian observables with a cached spectral decomposition.

use num_complex::Complex64;

use crate::error::Result;
use crate::qcore::eig::eig_hermitian;
use crate::qcore::matrix::ComplexMatrix;

/// A Hermitian operator `Σ_k o_k |k><k|` together with its eigenvalues and
/// rank-1 eigenprojectors, which downstream maps dephase against.
///
/// Repeated eigenvalues are allowed; dephasing then acts on the stored
/// fine-grained eigenbasis rather than on spectral subspaces.
#[derive(Debug, Clone)]
pub struct Observable {
    mat: ComplexMatrix,
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
}

impl Observable {
    /// Builds an observable from a Hermitian matrix of dimension at most 8.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let eig = eig_hermitian(&mat)?;
        let projectors = (0..mat.dim()).map(|k| eig.projector(k)).collect();
        Ok(Self {
            mat,
            eigenvalues: eig.eigenvalues,
            projectors,
        })
    }

    pub fn pauli_x() -> Self {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::ONE;
        m[(1, 0)] = Complex64::ONE;
        Self::new(m).expect("Pauli X is Hermitian")
    }

    pub fn pauli_y() -> Self {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        Self::new(m).expect("Pauli Y is Hermitian")
    }

    pub fn pauli_z() -> Self {
        Self::new(ComplexMatrix::from_diag(&[1.0, -1.0])).expect("Pauli Z is Hermitian")
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Eigenvalues in descending order; index `k` matches `projector(k)`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn projector(&self, k: usize) -> &ComplexMatrix {
        &self.projectors[k]
    }
}
