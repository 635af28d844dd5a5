//! Seeded random states, operators and unitaries for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qcore::matrix::ComplexMatrix;
use crate::qcore::observable::Observable;
use crate::qcore::state::{DensityMatrix, PureState};

fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn random_ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = standard_complex(rng);
        }
    }
    g
}

/// Random Hermitian matrix `(G + G†)/2` with O(1) entries.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_ginibre(dim, rng);
    (&g + &g.dagger()).scale_re(0.5)
}

/// Haar-distributed random pure state.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return PureState::new(v.into_iter().map(|a| a / norm).collect())
                .expect("normalized by construction");
        }
    }
}

/// Random full-rank mixed state `G G† / Tr(G G†)` (Hilbert-Schmidt ensemble).
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    loop {
        let g = random_ginibre(dim, rng);
        let gram = &g * &g.dagger();
        let trace = gram.trace().re;
        if trace > 1e-6 {
            return DensityMatrix::new(gram.scale_re(1.0 / trace))
                .expect("Gram matrices are PSD with unit trace after scaling");
        }
    }
}

/// Random unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = random_ginibre(dim, rng);
        if let Some(u) = gram_schmidt(&g) {
            return u;
        }
    }
}

/// Random observable with a non-degenerate O(1) spectrum.
pub fn random_observable<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Observable {
    Observable::new(random_hermitian(dim, rng)).expect("input is Hermitian by construction")
}

/// Random Hermitian matrix rescaled to unit trace (generally not PSD);
/// the raw material for physical-projection tests.
pub fn random_unit_trace_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let h = random_hermitian(dim, rng);
    let shift = (1.0 - h.trace().re) / dim as f64;
    &h + &ComplexMatrix::identity(dim).scale_re(shift)
}

fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let overlap: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let c = cols[k][i];
                cols[j][i] -= overlap * c;
            }
        }
        let norm = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for a in cols[j].iter_mut() {
            *a /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u[(i, j)] = cols[j][i];
        }
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for dim in [2usize, 4] {
            for _ in 0..10 {
                let u = random_unitary(dim, &mut rng);
                assert!(u.unitarity_deviation() <= 1e-12);
                let rho = random_density(dim, &mut rng);
                assert!(rho.eigenvalues().iter().all(|&l| l >= 0.0));
                let psi = random_pure(dim, &mut rng);
                assert_eq!(psi.dim(), dim);
                let h = random_unit_trace_hermitian(dim, &mut rng);
                assert!((h.trace().re - 1.0).abs() <= 1e-12);
                assert!(h.hermiticity_deviation() <= 1e-12);
            }
        }
    }

    #[test]
    fn same_seed_reproduces_the_stream() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        let ma = random_hermitian(4, &mut a);
        let mb = random_hermitian(4, &mut b);
        assert_eq!(ma.max_abs_diff(&mb), 0.0);
    }
}
