//! Self-check suite: every structural identity the library is built on,
//! runnable on demand.
//!
//! Each property draws seeded random states, evaluates one identity and
//! reports pass/fail with a worst-case figure. Properties that are
//! *expected* to move under a configured loss channel (total-information
//! conservation) degrade to informational reports instead of failures.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, LN_2};

use crate::measures::{
    dephasing_map, delta_reality, information_ledger, monitoring_map, shannon_binary_entropy,
};
use crate::qcore::random::{random_density, random_observable, random_unitary};
use crate::qcore::{apply_unitary, partial_trace, trace_distance, DensityMatrix, Observable, Subsystem};
use crate::weakmeas::{run_experiment, MeterSpec, NoiseKind, NoiseSpec};

/// Outcome of one verified property.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    /// Informational reports describe expected behaviour (for example
    /// information leakage under a configured loss channel) and never
    /// fail the suite.
    pub informational: bool,
    pub detail: String,
}

/// Configuration of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Loss channel applied inside the circuit-level properties.
    pub noise: NoiseSpec,
    /// Test hook: offset added to the calibrated strength in the
    /// circuit-map equivalence check. Any nonzero value must make that
    /// property fail; it exists so the check itself can be validated.
    pub tamper_epsilon: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            noise: NoiseSpec::none(),
            tamper_epsilon: 0.0,
        }
    }
}

/// Runs every property and returns the reports in a fixed order.
pub fn run_suite(opts: &VerifyOptions) -> Vec<PropertyReport> {
    vec![
        commutation_property(opts),
        bound_property(opts),
        monotonicity_property(opts),
        conservation_property(opts),
        circuit_map_equivalence(opts),
        closed_form_oracle(),
        complementarity_property(),
    ]
}

/// True when every non-informational property passed.
pub fn suite_passed(reports: &[PropertyReport]) -> bool {
    reports.iter().all(|r| r.passed || r.informational)
}

/// `Φ_O ∘ M^ε_O = M^ε_O ∘ Φ_O` over 200 random draws.
fn commutation_property(opts: &VerifyOptions) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let dim = if rng.random::<bool>() { 2 } else { 4 };
        let rho = random_density(dim, &mut rng);
        let obs = random_observable(dim, &mut rng);
        let eps: f64 = rng.random_range(0.0..=1.0);
        let a = dephasing_map(&monitoring_map(&rho, &obs, eps).unwrap(), &obs).unwrap();
        let b = monitoring_map(&dephasing_map(&rho, &obs).unwrap(), &obs, eps).unwrap();
        worst = worst.max(a.mat().max_abs_diff(b.mat()));
    }
    PropertyReport {
        name: "commutation",
        passed: worst <= 1e-12,
        informational: false,
        detail: format!("max |Φ(M(ρ)) - M(Φ(ρ))| = {worst:.3e} over 200 draws (tol 1e-12)"),
    }
}

/// `ΔR ≥ ε·I(O|ρ)` over 200 random draws, with the equality cases at
/// ε = 0 and at ε = 1 for ρ = |+><+|.
fn bound_property(opts: &VerifyOptions) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let mut worst_violation: f64 = 0.0;
    for _ in 0..200 {
        let rho = random_density(2, &mut rng);
        let obs = random_observable(2, &mut rng);
        let eps: f64 = rng.random_range(0.0..=1.0);
        let report = delta_reality(&obs, &rho, eps).unwrap();
        worst_violation = worst_violation.max(report.bound_rhs - report.delta_reality);
        // ε = 0: both sides vanish for every state.
        let at_zero = delta_reality(&obs, &rho, 0.0).unwrap();
        worst_violation = worst_violation.max(at_zero.delta_reality.abs());
    }
    // ε = 1 with ρ = |+><+| saturates the bound at ln 2.
    let z = Observable::pauli_z();
    let saturated = delta_reality(&z, &DensityMatrix::plus_state(), 1.0).unwrap();
    let gap = (saturated.delta_reality - LN_2)
        .abs()
        .max((saturated.bound_rhs - LN_2).abs());
    let passed = worst_violation <= 1e-10 && gap <= 1e-10;
    PropertyReport {
        name: "bound",
        passed,
        informational: false,
        detail: format!(
            "max bound violation {worst_violation:.3e}, saturation gap at ε=1 {gap:.3e} (tol 1e-10)"
        ),
    }
}

/// `ΔR(ε)` is non-decreasing in ε on a 101-point grid.
fn monotonicity_property(opts: &VerifyOptions) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(2));
    let mut worst_drop: f64 = 0.0;
    for _ in 0..10 {
        let rho = random_density(2, &mut rng);
        let obs = random_observable(2, &mut rng);
        let mut prev = 0.0;
        for i in 0..=100 {
            let eps = i as f64 / 100.0;
            let dr = delta_reality(&obs, &rho, eps).unwrap().delta_reality;
            if i > 0 {
                worst_drop = worst_drop.max(prev - dr);
            }
            prev = dr;
        }
    }
    PropertyReport {
        name: "monotonicity",
        passed: worst_drop <= 1e-10,
        informational: false,
        detail: format!("max decrease of ΔR along ε grids = {worst_drop:.3e} (tol 1e-10)"),
    }
}

/// Total information is conserved under unitary evolution. With a loss
/// channel configured the conservation is expected to break downwards;
/// that case is reported informationally with the observed leak.
fn conservation_property(opts: &VerifyOptions) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(3));
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let rho = random_density(4, &mut rng);
        let u = random_unitary(4, &mut rng);
        let rotated = apply_unitary(&rho, &u).unwrap();
        let before = information_ledger(&rho).unwrap().i_total;
        let after = information_ledger(&rotated).unwrap().i_total;
        worst = worst.max((before - after).abs());
    }
    if opts.noise.kind == NoiseKind::None {
        return PropertyReport {
            name: "conservation",
            passed: worst <= 1e-10,
            informational: false,
            detail: format!("max |ΔI_tot| under random unitaries = {worst:.3e} (tol 1e-10)"),
        };
    }
    // Lossy configuration: the unitary part must still conserve, and the
    // configured channel may only leak information outwards.
    let plus = DensityMatrix::plus_state();
    let mut max_gain: f64 = 0.0;
    let mut max_leak: f64 = 0.0;
    for i in 0..=10 {
        let theta = FRAC_PI_4 * i as f64 / 10.0;
        let result = run_experiment(&plus, &MeterSpec::pure(theta).unwrap(), &opts.noise).unwrap();
        let delta = result.ledger_after.i_total - result.ledger_before.i_total;
        max_gain = max_gain.max(delta);
        max_leak = max_leak.max(-delta);
    }
    PropertyReport {
        name: "conservation",
        passed: worst <= 1e-10 && max_gain <= 1e-10,
        informational: true,
        detail: format!(
            "expected-violation under {:?}: up to {max_leak:.4} nats leak to the environment \
             (no gain observed, unitary part conserved to {worst:.3e})",
            opts.noise.kind
        ),
    }
}

/// Tracing the meter out of the controlled-phase circuit realizes
/// `M^ε_Z` with `ε = 1 − cos 2θ`, for 50 random system states and 11
/// angles. The `tamper_epsilon` hook shifts the calibration to prove the
/// check can fail.
fn circuit_map_equivalence(opts: &VerifyOptions) -> PropertyReport {
    let z = Observable::pauli_z();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(4));
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let rho = random_density(2, &mut rng);
        for i in 0..=10 {
            let theta = FRAC_PI_4 * i as f64 / 10.0;
            let spec = MeterSpec::pure(theta).unwrap();
            let result = run_experiment(&rho, &spec, &NoiseSpec::none()).unwrap();
            let reduced = partial_trace(&result.rho_sa_out, Subsystem::System).unwrap();
            let eps = (spec.epsilon() + opts.tamper_epsilon).clamp(0.0, 1.0);
            let mapped = monitoring_map(&rho, &z, eps).unwrap();
            worst = worst.max(trace_distance(&reduced, &mapped).unwrap());
        }
    }
    PropertyReport {
        name: "circuit-map-equivalence",
        passed: worst <= 1e-12,
        informational: false,
        detail: format!(
            "max trace distance circuit vs monitoring map = {worst:.3e} (tol 1e-12)"
        ),
    }
}

/// `ΔR(ε)` for the `|+>` system equals the binary entropy of `ε/2` on a
/// 101-point grid.
fn closed_form_oracle() -> PropertyReport {
    let z = Observable::pauli_z();
    let plus = DensityMatrix::plus_state();
    let mut worst: f64 = 0.0;
    for i in 0..=100 {
        let eps = i as f64 / 100.0;
        let dr = delta_reality(&z, &plus, eps).unwrap().delta_reality;
        let expected = shannon_binary_entropy(eps / 2.0).unwrap();
        worst = worst.max((dr - expected).abs());
    }
    PropertyReport {
        name: "closed-form-oracle",
        passed: worst <= 1e-12,
        informational: false,
        detail: format!("max |ΔR - h(ε/2)| over 101 points = {worst:.3e} (tol 1e-12)"),
    }
}

/// Unitary pure-input case: the context gain mirrors the system loss and
/// both equal the reality change of the reduced system.
fn complementarity_property() -> PropertyReport {
    let plus = DensityMatrix::plus_state();
    let mut worst_sum: f64 = 0.0;
    let mut worst_match: f64 = 0.0;
    for i in 0..=10 {
        let theta = FRAC_PI_4 * i as f64 / 10.0;
        let result =
            run_experiment(&plus, &MeterSpec::pure(theta).unwrap(), &NoiseSpec::none()).unwrap();
        let delta = result.information_delta();
        worst_sum = worst_sum.max(delta.total().abs());
        worst_match = worst_match.max((delta.system.abs() - result.report.delta_reality).abs());
    }
    PropertyReport {
        name: "complementarity",
        passed: worst_sum <= 1e-10 && worst_match <= 1e-10,
        informational: false,
        detail: format!(
            "max |Δcontext + Δsystem| = {worst_sum:.3e}, max ||Δsystem| - ΔR| = {worst_match:.3e} (tol 1e-10)"
        ),
    }
}
