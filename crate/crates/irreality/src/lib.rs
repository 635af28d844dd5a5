//! Exact simulation and analysis of qubit weak measurements.
//!
//! The crate is organised in four layers:
//!
//! - [`qcore`]: dense complex linear algebra for dimensions up to 8, with
//!   validated [`DensityMatrix`] / [`Observable`] / [`PureState`] types,
//!   tensor products, partial traces and a Jacobi Hermitian eigensolver.
//! - [`measures`]: von Neumann entropy, the dephasing map `Φ_O`, the weak
//!   collapse `C^ε_k` and outcome-averaged monitoring map `M^ε_O`, the
//!   entropic irreality of an observable, reality-change reports and the
//!   bipartite information ledger.
//! - [`weakmeas`]: the controlled-phase weak-measurement circuit with
//!   pure or mixed meter preparations, strength calibration
//!   `ε = 1 − cos 2θ`, optional loss channels and parameter sweeps.
//! - [`tomography`]: seeded finite-shot simulation of two-qubit Pauli
//!   tomography, linear inversion, projection onto physical states, and
//!   maximum-likelihood reconstruction.
//!
//! [`verify`] bundles the library's self-consistency properties into a
//! runnable report, which the `irreality` CLI exposes as `verify`.

pub mod error;
pub mod measures;
pub mod qcore;
pub mod tomography;
pub mod verify;
pub mod weakmeas;

pub use error::{Error, Result};
pub use measures::{InformationDelta, InformationLedger, RealityReport};
pub use qcore::{ComplexMatrix, DensityMatrix, Observable, PureState, Subsystem};
pub use weakmeas::{ExperimentResult, MeterSpec, NoiseKind, NoiseScaling, NoiseSpec};
