//! Dense square complex matrices in row-major storage.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A square matrix of double-precision complex entries.
///
/// This is the carrier for every operator in the crate: density matrices,
/// observables, unitaries and projectors. Storage is row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds a matrix from nested rows. Fails unless the input is square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidDimension { expected: 1, got: 0 });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rows as nested vectors, mostly for bindings and debugging output.
    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Multiplies every entry by a complex scalar.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Multiplies every entry by a real scalar.
    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Kronecker product; `self` indexes the left (slow) factor, so for a
    /// system-ancilla pair the system matrix goes on the left and the joint
    /// basis is ordered |00>, |01>, |10>, |11> = |system, ancilla>.
    pub fn tensor(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let a = self[(i, j)];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry-wise absolute deviation from Hermiticity, `max |M - M†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entry-wise absolute deviation from unitarity, `max |U·U† - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self * &self.dagger();
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                dev = dev.max((product[(i, j)] - target).norm());
            }
        }
        dev
    }

    /// Largest entry-wise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Squared Frobenius norm of the off-diagonal part.
    pub(crate) fn off_diagonal_norm_sqr(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self[(i, j)].norm_sqr();
                }
            }
        }
        sum
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix addition: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix subtraction: dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product: dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = i2.tensor(&i2);
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
    }

    #[test]
    fn z_tensor_identity_is_diagonal_expansion() {
        let z = ComplexMatrix::from_diag(&[1.0, -1.0]);
        let i2 = ComplexMatrix::identity(2);
        let expected = ComplexMatrix::from_diag(&[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(z.tensor(&i2).max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn plus_projector_tensor_zero_projector() {
        // |+><+| ⊗ |0><0| has 1/2 at (0,0), (0,2), (2,0), (2,2).
        let h = c(0.5, 0.0);
        let plus = ComplexMatrix::from_rows(&[vec![h, h], vec![h, h]]).unwrap();
        let zero = ComplexMatrix::from_diag(&[1.0, 0.0]);
        let t = plus.tensor(&zero);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i == 0 || i == 2) && (j == 0 || j == 2) {
                    h
                } else {
                    Complex64::ZERO
                };
                assert_eq!(t[(i, j)], expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn tensor_triple_product_is_associative() {
        // 2x2x2 against the direct 8x8 index expansion.
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.5), c(0.0, -1.0)], vec![c(2.0, 0.0), c(0.3, 0.3)]])
            .unwrap();
        let b = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let d = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.5, 0.5)], vec![c(0.5, -0.5), c(-0.5, 0.0)]])
            .unwrap();

        let left = a.tensor(&b).tensor(&d);
        let right = a.tensor(&b.tensor(&d));
        assert!(left.max_abs_diff(&right) <= 1e-15);

        let mut direct = ComplexMatrix::zeros(8);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        for m in 0..2 {
                            for n in 0..2 {
                                direct[(4 * i + 2 * k + m, 4 * j + 2 * l + n)] =
                                    a[(i, j)] * b[(k, l)] * d[(m, n)];
                            }
                        }
                    }
                }
            }
        }
        assert!(left.max_abs_diff(&direct) <= 1e-15);
    }

    #[test]
    fn dagger_and_trace() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 2.0), c(3.0, 4.0)], vec![c(5.0, 6.0), c(7.0, 8.0)]])
            .unwrap();
        let d = m.dagger();
        assert_eq!(d[(0, 1)], c(5.0, -6.0));
        assert_eq!(m.trace(), c(8.0, 10.0));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let rows = vec![vec![Complex64::ONE], vec![Complex64::ONE, Complex64::ZERO]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
