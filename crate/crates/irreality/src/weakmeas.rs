//! The controlled-phase weak-measurement circuit.
//!
//! A system qubit (kept in `|+>` in the reference experiment) couples to a
//! meter qubit through `U = |0><0| ⊗ I + |1><1| ⊗ Z`. The meter is prepared
//! in `|ψ(θ)> = cos θ |0> + sin θ |1>`, optionally mixed with its orthogonal
//! partner `|ψ(θ+π/2)>` with weight `p`, which sets the measurement
//! strength `ε = 1 − cos 2θ` and the initial meter entropy `S_m = H(p)`.
//! Tracing out the meter realizes the monitoring map `M^ε_Z` on the system.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{
    delta_information, information_ledger, irreality, von_neumann_entropy, InformationLedger,
    RealityReport,
};
use crate::qcore::{
    apply_unitary, partial_trace, partial_trace_matrix, ComplexMatrix, DensityMatrix, Observable,
    PureState, Subsystem,
};

/// Meter preparation: angle `θ ∈ [0, π/4]` and mixing weight `p ∈ [0, 1]`
/// of `|ψ(θ)>` against its orthogonal partner. `p = 1` is the pure-meter
/// experiment.
#[derive(Debug, Clone, Copy)]
pub struct MeterSpec {
    theta: f64,
    mixing_p: f64,
}

impl MeterSpec {
    pub fn new(theta: f64, mixing_p: f64) -> Result<Self> {
        let quarter_pi = std::f64::consts::FRAC_PI_4;
        if !(0.0..=quarter_pi).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                min: 0.0,
                max: quarter_pi,
            });
        }
        if !(0.0..=1.0).contains(&mixing_p) {
            return Err(Error::OutOfRange {
                name: "mixing_p",
                value: mixing_p,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self { theta, mixing_p })
    }

    /// Pure meter at the given angle.
    pub fn pure(theta: f64) -> Result<Self> {
        Self::new(theta, 1.0)
    }

    /// Convenience constructor; the experimental angles are quoted in
    /// degrees.
    pub fn from_degrees(theta_deg: f64, mixing_p: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), mixing_p)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mixing_p(&self) -> f64 {
        self.mixing_p
    }

    /// Measurement strength `ε = 1 − cos 2θ`, bijective on the θ range.
    pub fn epsilon(&self) -> f64 {
        1.0 - (2.0 * self.theta).cos()
    }

    /// Initial meter entropy `S_m = H(p)` in nats.
    pub fn meter_entropy(&self) -> f64 {
        crate::measures::shannon_binary_entropy(self.mixing_p)
            .expect("mixing_p validated at construction")
    }
}

/// Which loss channel acts on the joint state after the coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// Closed-system evolution.
    None,
    /// System-side dephasing in the Z basis.
    SystemDephasing,
    /// System-side depolarizing towards `I/2`.
    SystemDepolarizing,
    /// Depolarizing loss that grows with the measurement strength,
    /// `κ(ε) = κ0·ε`, regardless of the configured scaling.
    JointLossScaling,
}

/// How the base strength `κ0` depends on the measurement strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseScaling {
    Constant,
    LinearInEpsilon,
}

/// A one-parameter loss model applied to the joint state after the
/// controlled-phase coupling.
#[derive(Debug, Clone, Copy)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub kappa0: f64,
    pub scaling: NoiseScaling,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, kappa0: f64, scaling: NoiseScaling) -> Result<Self> {
        if !(0.0..=1.0).contains(&kappa0) {
            return Err(Error::OutOfRange {
                name: "kappa0",
                value: kappa0,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            kind,
            kappa0,
            scaling,
        })
    }

    /// No noise at all.
    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            kappa0: 0.0,
            scaling: NoiseScaling::Constant,
        }
    }

    /// Effective strength at measurement strength ε; always in `[0, 1]`.
    pub fn effective_kappa(&self, epsilon: f64) -> f64 {
        match (self.kind, self.scaling) {
            (NoiseKind::None, _) => 0.0,
            (NoiseKind::JointLossScaling, _) => self.kappa0 * epsilon,
            (_, NoiseScaling::Constant) => self.kappa0,
            (_, NoiseScaling::LinearInEpsilon) => self.kappa0 * epsilon,
        }
    }

    /// Applies the channel to a two-qubit state.
    pub fn apply(&self, rho_sa: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
        if rho_sa.dim() != 4 {
            return Err(Error::InvalidDimension {
                expected: 4,
                got: rho_sa.dim(),
            });
        }
        let kappa = self.effective_kappa(epsilon);
        if kappa == 0.0 {
            return Ok(rho_sa.clone());
        }
        let mixed = match self.kind {
            NoiseKind::None => return Ok(rho_sa.clone()),
            NoiseKind::SystemDephasing => {
                let mut sum = ComplexMatrix::zeros(4);
                for k in 0..2 {
                    let mut proj = ComplexMatrix::zeros(2);
                    proj[(k, k)] = Complex64::ONE;
                    let big = proj.tensor(&ComplexMatrix::identity(2));
                    sum = &sum + &(&(&big * rho_sa.mat()) * &big);
                }
                sum
            }
            NoiseKind::SystemDepolarizing | NoiseKind::JointLossScaling => {
                let meter_marginal = partial_trace_matrix(rho_sa.mat(), Subsystem::Ancilla)?;
                ComplexMatrix::identity(2)
                    .scale_re(0.5)
                    .tensor(&meter_marginal)
            }
        };
        DensityMatrix::new(&rho_sa.mat().scale_re(1.0 - kappa) + &mixed.scale_re(kappa))
    }
}

/// Everything produced by one run of the circuit.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    /// Calibrated measurement strength `1 − cos 2θ`.
    pub epsilon: f64,
    /// Initial meter entropy `H(p)` in nats.
    pub s_m: f64,
    /// Joint output state after the coupling (and any configured loss).
    pub rho_sa_out: DensityMatrix,
    /// Reality change of `Z` on the reduced system state.
    pub report: RealityReport,
    pub ledger_before: InformationLedger,
    pub ledger_after: InformationLedger,
}

impl ExperimentResult {
    /// Signed information redistribution between the input and output
    /// ledgers.
    pub fn information_delta(&self) -> crate::measures::InformationDelta {
        delta_information(&self.ledger_before, &self.ledger_after)
            .expect("ledgers from the same experiment share dimensions")
    }
}

/// Meter state `p |ψ(θ)><ψ(θ)| + (1-p) |ψ(θ+π/2)><ψ(θ+π/2)|`.
pub fn meter_state(spec: &MeterSpec) -> DensityMatrix {
    let primary = PureState::real_superposition(spec.theta());
    let orthogonal = PureState::real_superposition(spec.theta() + std::f64::consts::FRAC_PI_2);
    let p = spec.mixing_p();
    let mat = &primary.projector_matrix().scale_re(p)
        + &orthogonal.projector_matrix().scale_re(1.0 - p);
    DensityMatrix::new(mat).expect("convex mixture of orthogonal projectors")
}

/// The controlled-phase coupling `|0><0| ⊗ I + |1><1| ⊗ Z`, i.e.
/// `diag(1, 1, 1, -1)` in the `|system, ancilla>` basis. Unitary,
/// Hermitian and self-inverse.
pub fn cphase_unitary() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, 1.0, 1.0, -1.0])
}

/// Couples the system to the meter, applies the configured loss, and
/// reports the reality change of `Z` together with both information
/// ledgers.
pub fn run_experiment(
    system: &DensityMatrix,
    spec: &MeterSpec,
    noise: &NoiseSpec,
) -> Result<ExperimentResult> {
    if system.dim() != 2 {
        return Err(Error::InvalidDimension {
            expected: 2,
            got: system.dim(),
        });
    }
    let epsilon = spec.epsilon();
    let meter = meter_state(spec);
    let joint_in = DensityMatrix::new(system.mat().tensor(meter.mat()))?;
    let ledger_before = information_ledger(&joint_in)?;

    let coupled = apply_unitary(&joint_in, &cphase_unitary())?;
    let rho_sa_out = noise.apply(&coupled, epsilon)?;
    let ledger_after = information_ledger(&rho_sa_out)?;

    let system_out = partial_trace(&rho_sa_out, Subsystem::System)?;
    let z = Observable::pauli_z();
    let irreality_before = irreality(&z, system)?;
    let irreality_after = irreality(&z, &system_out)?;
    let mut dr = von_neumann_entropy(&system_out) - von_neumann_entropy(system);
    if dr < 0.0 && dr >= -1e-10 {
        dr = 0.0;
    }
    let report = RealityReport {
        irreality_before,
        irreality_after,
        delta_reality: dr,
        delta_information: -dr,
        epsilon,
        bound_rhs: epsilon * irreality_before,
    };
    Ok(ExperimentResult {
        epsilon,
        s_m: spec.meter_entropy(),
        rho_sa_out,
        report,
        ledger_before,
        ledger_after,
    })
}

/// Runs the pure-meter experiment across a grid of coupling angles.
pub fn sweep_strength(
    system: &DensityMatrix,
    theta_grid: &[f64],
    noise: &NoiseSpec,
) -> Result<Vec<ExperimentResult>> {
    theta_grid
        .iter()
        .map(|&theta| run_experiment(system, &MeterSpec::pure(theta)?, noise))
        .collect()
}

/// Runs the mixed-meter experiment at fixed angle across a grid of mixing
/// weights; results are keyed by `s_m = H(p)`.
pub fn sweep_meter_mixing(
    system: &DensityMatrix,
    theta: f64,
    p_grid: &[f64],
    noise: &NoiseSpec,
) -> Result<Vec<ExperimentResult>> {
    p_grid
        .iter()
        .map(|&p| run_experiment(system, &MeterSpec::new(theta, p)?, noise))
        .collect()
}

/// One branch of a projective meter readout.
#[derive(Debug, Clone)]
pub struct ReadoutOutcome {
    pub probability: f64,
    /// Normalized conditional system state; absent when the branch has
    /// zero probability.
    pub conditional_system: Option<DensityMatrix>,
}

/// Reads the meter out in the `{|+>, |->}` basis and returns, per branch,
/// the outcome probability and the conditional system state.
pub fn readout_plus_minus(rho_sa: &DensityMatrix) -> Result<[ReadoutOutcome; 2]> {
    if rho_sa.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: rho_sa.dim(),
        });
    }
    let branches = [PureState::plus(), PureState::minus()];
    let mut out = Vec::with_capacity(2);
    for branch in &branches {
        let projector = ComplexMatrix::identity(2).tensor(&branch.projector_matrix());
        let projected = &(&projector * rho_sa.mat()) * &projector;
        let probability = projected.trace().re.max(0.0);
        let conditional_system = if probability > 1e-12 {
            let reduced = partial_trace_matrix(&projected, Subsystem::System)?;
            Some(DensityMatrix::new(reduced.scale_re(1.0 / probability))?)
        } else {
            None
        };
        out.push(ReadoutOutcome {
            probability,
            conditional_system,
        });
    }
    let [plus, minus] = <[ReadoutOutcome; 2]>::try_from(out).expect("two branches");
    Ok([plus, minus])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{monitoring_map, shannon_binary_entropy};
    use crate::qcore::random::random_density;
    use crate::qcore::trace_distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, LN_2};

    // ε = 1 − cos 32° and ΔR = H((1 + cos 32°)/2), frozen from the closed
    // form for the θ = 16° pure-meter run.
    const EPS_16DEG: f64 = 0.15195190384357403;
    const DR_16DEG: f64 = 0.26882951521754524;

    #[test]
    fn meter_spec_validation_and_calibration() {
        assert!(MeterSpec::new(-0.1, 1.0).is_err());
        assert!(MeterSpec::new(1.0, 1.0).is_err());
        assert!(MeterSpec::new(0.3, 1.5).is_err());
        let spec = MeterSpec::pure(0.0).unwrap();
        assert_eq!(spec.epsilon(), 0.0);
        let spec = MeterSpec::pure(FRAC_PI_4).unwrap();
        assert!((spec.epsilon() - 1.0).abs() <= 1e-15);
        let spec = MeterSpec::from_degrees(16.0, 1.0).unwrap();
        assert!((spec.epsilon() - EPS_16DEG).abs() <= 1e-15);
        assert_eq!(spec.meter_entropy(), 0.0);
        let spec = MeterSpec::from_degrees(16.0, 0.5).unwrap();
        assert!((spec.meter_entropy() - LN_2).abs() <= 1e-15);
    }

    #[test]
    fn meter_state_reference_cases() {
        let zero = DensityMatrix::from_pure(&PureState::computational(2, 0).unwrap()).unwrap();
        let spec = MeterSpec::pure(0.0).unwrap();
        assert!(meter_state(&spec).mat().max_abs_diff(zero.mat()) <= 1e-15);

        let plus = DensityMatrix::plus_state();
        let spec = MeterSpec::pure(FRAC_PI_4).unwrap();
        assert!(meter_state(&spec).mat().max_abs_diff(plus.mat()) <= 1e-15);

        let spec = MeterSpec::from_degrees(16.0, 0.5).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(meter_state(&spec).mat().max_abs_diff(mixed.mat()) <= 1e-15);
    }

    #[test]
    fn meter_entropy_matches_state_entropy() {
        for (theta_deg, p) in [(5.0, 0.8), (16.0, 0.65), (30.0, 0.95), (44.0, 0.5)] {
            let spec = MeterSpec::from_degrees(theta_deg, p).unwrap();
            let s_state = crate::measures::von_neumann_entropy(&meter_state(&spec));
            assert!((s_state - spec.meter_entropy()).abs() <= 1e-12);
        }
    }

    #[test]
    fn cphase_is_self_inverse_and_acts_as_controlled_z() {
        let u = cphase_unitary();
        assert!(u.unitarity_deviation() <= 1e-15);
        let square = &u * &u;
        assert!(square.max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-15);

        // Control off: |0> ⊗ |ψ> untouched.
        let psi = PureState::real_superposition(0.3);
        let zero = PureState::computational(2, 0).unwrap();
        let inp = DensityMatrix::from_pure(&zero.tensor(&psi)).unwrap();
        let out = apply_unitary(&inp, &u).unwrap();
        assert!(out.mat().max_abs_diff(inp.mat()) <= 1e-15);

        // Control on: the meter |+> picks up a π rotation about z.
        let one = PureState::computational(2, 1).unwrap();
        let inp = DensityMatrix::from_pure(&one.tensor(&PureState::plus())).unwrap();
        let expected = DensityMatrix::from_pure(&one.tensor(&PureState::minus())).unwrap();
        let out = apply_unitary(&inp, &u).unwrap();
        assert!(out.mat().max_abs_diff(expected.mat()) <= 1e-15);
    }

    #[test]
    fn zero_strength_run_changes_nothing() {
        let plus = DensityMatrix::plus_state();
        let result =
            run_experiment(&plus, &MeterSpec::pure(0.0).unwrap(), &NoiseSpec::none()).unwrap();
        assert_eq!(result.report.delta_reality, 0.0);
        // Output stays a product state: no mutual information.
        assert!(result.ledger_after.i_mutual <= 1e-12);
        let delta = result.information_delta();
        assert!(delta.context.abs() <= 1e-12);
        assert!(delta.system.abs() <= 1e-12);
    }

    #[test]
    fn full_strength_run_is_maximally_entangling() {
        let plus = DensityMatrix::plus_state();
        let result = run_experiment(
            &plus,
            &MeterSpec::pure(FRAC_PI_4).unwrap(),
            &NoiseSpec::none(),
        )
        .unwrap();
        assert!((result.report.delta_reality - LN_2).abs() <= 1e-12);
        let delta = result.information_delta();
        assert!((delta.context - LN_2).abs() <= 1e-12);
        assert!((delta.system + LN_2).abs() <= 1e-12);
        // Direct 4x4 check: U(|+>⊗|+>) = (|0,+> + |1,->)/√2.
        let s = 0.5;
        let expected = PureState::new(vec![
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ])
        .unwrap();
        let expected = DensityMatrix::from_pure(&expected).unwrap();
        assert!(result.rho_sa_out.mat().max_abs_diff(expected.mat()) <= 1e-12);
    }

    #[test]
    fn weak_run_at_sixteen_degrees_matches_frozen_values() {
        let plus = DensityMatrix::plus_state();
        let result = run_experiment(
            &plus,
            &MeterSpec::from_degrees(16.0, 1.0).unwrap(),
            &NoiseSpec::none(),
        )
        .unwrap();
        assert!((result.epsilon - EPS_16DEG).abs() <= 1e-14);
        assert!((result.report.delta_reality - DR_16DEG).abs() <= 1e-12);
    }

    #[test]
    fn circuit_reduces_to_monitoring_map() {
        // The central consistency check: tracing out the meter realizes
        // M^ε_Z exactly, for any system state.
        let z = Observable::pauli_z();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let rho = random_density(2, &mut rng);
            for i in 0..=10 {
                let theta = FRAC_PI_4 * i as f64 / 10.0;
                let spec = MeterSpec::pure(theta).unwrap();
                let result = run_experiment(&rho, &spec, &NoiseSpec::none()).unwrap();
                let reduced = partial_trace(&result.rho_sa_out, Subsystem::System).unwrap();
                let mapped = monitoring_map(&rho, &z, spec.epsilon()).unwrap();
                assert!(trace_distance(&reduced, &mapped).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn strength_sweep_endpoints_bound_and_duality() {
        let plus = DensityMatrix::plus_state();
        let grid: Vec<f64> = (0..=10).map(|i| FRAC_PI_4 * i as f64 / 10.0).collect();
        let results = sweep_strength(&plus, &grid, &NoiseSpec::none()).unwrap();
        assert_eq!(results.len(), grid.len());
        assert_eq!(results[0].report.delta_reality, 0.0);
        assert!((results[10].report.delta_reality - LN_2).abs() <= 1e-12);
        let mut prev_eps = -1.0;
        for r in &results {
            assert!(r.epsilon > prev_eps, "ε must increase strictly with θ");
            prev_eps = r.epsilon;
            assert!(r.report.delta_reality >= r.epsilon * LN_2 - 1e-10);
            // Unitary case: the context gain mirrors the reality gain.
            let delta = r.information_delta();
            assert!((delta.context.abs() - r.report.delta_reality).abs() <= 1e-10);
        }
    }

    #[test]
    fn mixing_sweep_closed_form_and_symmetry() {
        let plus = DensityMatrix::plus_state();
        let theta = 16f64.to_radians();
        let cos2t = (2.0 * theta).cos();
        let p_grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let results = sweep_meter_mixing(&plus, theta, &p_grid, &NoiseSpec::none()).unwrap();
        for (r, &p) in results.iter().zip(&p_grid) {
            let coherence = (2.0 * p - 1.0) * cos2t;
            let expected = shannon_binary_entropy((1.0 + coherence) / 2.0).unwrap();
            assert!((r.report.delta_reality - expected).abs() <= 1e-12);
            assert!((r.s_m - shannon_binary_entropy(p).unwrap()).abs() <= 1e-15);
        }
        // Endpoints: pure meter recovers the frozen value, the maximal
        // mixture destroys all coherence.
        assert!((results[20].report.delta_reality - DR_16DEG).abs() <= 1e-12);
        assert!((results[10].report.delta_reality - LN_2).abs() <= 1e-12);
        assert!((results[0].report.delta_reality - DR_16DEG).abs() <= 1e-12);
        // ΔR is symmetric in p ↔ 1−p.
        for i in 0..=20 {
            let a = results[i].report.delta_reality;
            let b = results[20 - i].report.delta_reality;
            assert!((a - b).abs() <= 1e-12);
        }
        // ΔR(S_m) is non-decreasing on p ∈ [1/2, 1] (decreasing p direction).
        for i in 10..20 {
            assert!(
                results[i].report.delta_reality >= results[i + 1].report.delta_reality - 1e-12
            );
        }
    }

    #[test]
    fn readout_at_full_strength_gives_full_information() {
        let plus = DensityMatrix::plus_state();
        let result = run_experiment(
            &plus,
            &MeterSpec::pure(FRAC_PI_4).unwrap(),
            &NoiseSpec::none(),
        )
        .unwrap();
        let [branch_plus, branch_minus] = readout_plus_minus(&result.rho_sa_out).unwrap();
        assert!((branch_plus.probability - 0.5).abs() <= 1e-12);
        assert!((branch_minus.probability - 0.5).abs() <= 1e-12);
        let zero = DensityMatrix::from_pure(&PureState::computational(2, 0).unwrap()).unwrap();
        let one = DensityMatrix::from_pure(&PureState::computational(2, 1).unwrap()).unwrap();
        let cond_plus = branch_plus.conditional_system.unwrap();
        let cond_minus = branch_minus.conditional_system.unwrap();
        assert!(cond_plus.mat().max_abs_diff(zero.mat()) <= 1e-12);
        assert!(cond_minus.mat().max_abs_diff(one.mat()) <= 1e-12);
    }

    #[test]
    fn noise_only_leaks_information() {
        let plus = DensityMatrix::plus_state();
        let kinds = [
            NoiseKind::SystemDephasing,
            NoiseKind::SystemDepolarizing,
            NoiseKind::JointLossScaling,
        ];
        for kind in kinds {
            let noise = NoiseSpec::new(kind, 0.25, NoiseScaling::Constant).unwrap();
            for i in 0..=8 {
                let theta = FRAC_PI_4 * i as f64 / 8.0;
                let r = run_experiment(&plus, &MeterSpec::pure(theta).unwrap(), &noise).unwrap();
                assert!(
                    r.ledger_after.i_total <= r.ledger_before.i_total + 1e-10,
                    "{kind:?} increased the total information"
                );
                let delta = r.information_delta();
                assert!(delta.total() <= 1e-10);
            }
        }
    }

    #[test]
    fn joint_loss_scaling_grows_with_strength() {
        let noise = NoiseSpec::new(NoiseKind::JointLossScaling, 0.1, NoiseScaling::Constant).unwrap();
        assert_eq!(noise.effective_kappa(0.0), 0.0);
        assert!((noise.effective_kappa(1.0) - 0.1).abs() <= 1e-15);
        assert!((noise.effective_kappa(0.5) - 0.05).abs() <= 1e-15);
        assert!(NoiseSpec::new(NoiseKind::SystemDephasing, 1.5, NoiseScaling::Constant).is_err());
    }
}
