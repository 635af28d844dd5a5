//! Complex linear algebra and quantum-state primitives for small dimensions.

mod eig;
mod matrix;
mod observable;
pub mod random;
mod state;

pub use eig::{eig_hermitian, EigenDecomposition, HERMITICITY_TOL, MAX_DIM};
pub use matrix::ComplexMatrix;
pub use observable::Observable;
pub use state::{
    apply_unitary, fidelity, partial_trace, partial_trace_matrix, trace_distance, DensityMatrix,
    PureState, Subsystem,
};
