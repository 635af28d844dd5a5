//! Entropies, dephasing and weak-monitoring maps, the irreality of an
//! observable, reality-change reports and bipartite information ledgers.
//!
//! All entropic quantities are in nats. Bits are a presentation-layer
//! conversion (divide by `ln 2`) so that the additive identities between
//! these quantities stay exact.

use crate::error::{Error, Result};
use crate::qcore::{partial_trace, ComplexMatrix, DensityMatrix, Observable, Subsystem};

/// Values in `[-NEG_CLAMP, 0)` produced by eigensolver rounding are
/// reported as exactly zero.
const NEG_CLAMP: f64 = 1e-10;

/// Agreement required between the two algebraic routes to the same
/// reality change.
const CROSS_CHECK_TOL: f64 = 1e-10;

fn clamp_tiny_negative(x: f64) -> f64 {
    if x < 0.0 && x >= -NEG_CLAMP {
        0.0
    } else {
        x
    }
}

/// Von Neumann entropy `S(ρ) = -Σ λ ln λ` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum();
    clamp_tiny_negative(s)
}

/// Shannon binary entropy `H(p) = -p ln p - (1-p) ln(1-p)` in nats.
pub fn shannon_binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.ln();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).ln();
    }
    Ok(h)
}

/// Dephasing map `Φ_O(ρ) = Σ_k <k|ρ|k> |k><k|`: removes every coherence
/// of `ρ` in the eigenbasis of the observable.
pub fn dephasing_map(rho: &DensityMatrix, obs: &Observable) -> Result<DensityMatrix> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: obs.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for p in obs.projectors() {
        out = &out + &(&(p * rho.mat()) * p);
    }
    DensityMatrix::new(out)
}

/// Outcome probability `p_k = <k|ρ|k>` for eigenbasis index `k`.
pub fn outcome_probability(rho: &DensityMatrix, obs: &Observable, k: usize) -> Result<f64> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: obs.dim(),
        });
    }
    if k >= obs.projectors().len() {
        return Err(Error::InvalidOutcome {
            index: k,
            count: obs.projectors().len(),
        });
    }
    Ok(clamp_tiny_negative(
        (obs.projector(k) * rho.mat()).trace().re,
    ))
}

/// Weak collapse `C^ε_k(ρ) = (1-ε)ρ + ε|k><k|` for outcome `k`: a convex
/// slide from no back-action (ε = 0) to the projective case (ε = 1).
pub fn weak_collapse(
    rho: &DensityMatrix,
    obs: &Observable,
    k: usize,
    epsilon: f64,
) -> Result<DensityMatrix> {
    check_epsilon(epsilon)?;
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: obs.dim(),
        });
    }
    if k >= obs.projectors().len() {
        return Err(Error::InvalidOutcome {
            index: k,
            count: obs.projectors().len(),
        });
    }
    let out = &rho.mat().scale_re(1.0 - epsilon) + &obs.projector(k).scale_re(epsilon);
    DensityMatrix::new(out)
}

/// Unsorted monitoring map `M^ε_O(ρ) = Σ_k p_k C^ε_k(ρ)`, the average
/// post-measurement state when outcomes are not recorded.
///
/// This evaluates the outcome-weighted sum literally; the algebraic
/// identity `M^ε_O(ρ) = (1-ε)ρ + ε Φ_O(ρ)` is verified in tests rather
/// than assumed here.
pub fn monitoring_map(rho: &DensityMatrix, obs: &Observable, epsilon: f64) -> Result<DensityMatrix> {
    check_epsilon(epsilon)?;
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: obs.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in 0..obs.projectors().len() {
        let p_k = outcome_probability(rho, obs, k)?;
        if p_k == 0.0 {
            continue;
        }
        let collapsed = weak_collapse(rho, obs, k, epsilon)?;
        out = &out + &collapsed.mat().scale_re(p_k);
    }
    DensityMatrix::new(out)
}

/// Irreality `I(O|ρ) = S(Φ_O(ρ)) - S(ρ)` in nats: the entropy cost of
/// making the observable's value definite. Zero iff measuring `O` leaves
/// the state untouched.
pub fn irreality(obs: &Observable, rho: &DensityMatrix) -> Result<f64> {
    let dephased = dephasing_map(rho, obs)?;
    Ok(clamp_tiny_negative(
        von_neumann_entropy(&dephased) - von_neumann_entropy(rho),
    ))
}

/// Before/after irreality of one observable under monitoring, the reality
/// change and its information dual, plus the concavity bound `ε·I(O|ρ)`.
#[derive(Debug, Clone, Copy)]
pub struct RealityReport {
    /// `I(O|ρ)` of the input state, nats.
    pub irreality_before: f64,
    /// `I(O|ρ')` of the unconditional output state, nats.
    pub irreality_after: f64,
    /// `ΔR = S(ρ') - S(ρ)`, nats. For the exact monitoring map this equals
    /// `irreality_before - irreality_after`.
    pub delta_reality: f64,
    /// Information change paired with `delta_reality`. Reports built from
    /// the closed-form pipeline store the dual `-ΔR`; tomography estimates
    /// store the `S(M^ε_O(ρ)) - S(ρ'_SA)` estimator instead.
    pub delta_information: f64,
    /// Measurement strength ε.
    pub epsilon: f64,
    /// Right-hand side `ε·I(O|ρ)` of the reality-gain bound.
    pub bound_rhs: f64,
}

/// Applies the monitoring map and reports the resulting reality change.
///
/// Both routes of the reality-change identity are evaluated: the irreality
/// difference `I(O|ρ) - I(O|M^ε_O(ρ))` and the entropy gain
/// `S(M^ε_O(ρ)) - S(ρ)`. They must agree (this is the commutation property
/// of the monitoring map); disagreement is a numerical failure and panics.
pub fn delta_reality(obs: &Observable, rho: &DensityMatrix, epsilon: f64) -> Result<RealityReport> {
    let monitored = monitoring_map(rho, obs, epsilon)?;
    let irr_before = irreality(obs, rho)?;
    let irr_after = irreality(obs, &monitored)?;
    let via_irreality = irr_before - irr_after;
    let via_entropy = von_neumann_entropy(&monitored) - von_neumann_entropy(rho);
    assert!(
        (via_irreality - via_entropy).abs() <= CROSS_CHECK_TOL,
        "reality-change routes disagree: {via_irreality} vs {via_entropy}"
    );
    let dr = clamp_tiny_negative(via_entropy);
    Ok(RealityReport {
        irreality_before: irr_before,
        irreality_after: irr_after,
        delta_reality: dr,
        delta_information: -dr,
        epsilon,
        bound_rhs: epsilon * irr_before,
    })
}

/// The three-way information decomposition of a two-qubit state:
/// local system and ancilla contents `ln d - S` plus the mutual
/// information, all in nats.
#[derive(Debug, Clone, Copy)]
pub struct InformationLedger {
    pub i_system: f64,
    pub i_ancilla: f64,
    pub i_mutual: f64,
    /// `i_system + i_ancilla + i_mutual`, exact by construction.
    pub i_total: f64,
    pub d_system: usize,
    pub d_ancilla: usize,
}

/// Computes the information ledger of a 4-dimensional bipartite state,
/// with marginals taken by partial trace.
pub fn information_ledger(rho_sa: &DensityMatrix) -> Result<InformationLedger> {
    if rho_sa.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: rho_sa.dim(),
        });
    }
    let rho_s = partial_trace(rho_sa, Subsystem::System)?;
    let rho_a = partial_trace(rho_sa, Subsystem::Ancilla)?;
    let s_joint = von_neumann_entropy(rho_sa);
    let s_sys = von_neumann_entropy(&rho_s);
    let s_anc = von_neumann_entropy(&rho_a);
    let ln2 = std::f64::consts::LN_2;
    let i_system = clamp_tiny_negative(ln2 - s_sys);
    let i_ancilla = clamp_tiny_negative(ln2 - s_anc);
    let i_mutual = clamp_tiny_negative(s_sys + s_anc - s_joint);
    Ok(InformationLedger {
        i_system,
        i_ancilla,
        i_mutual,
        i_total: i_system + i_ancilla + i_mutual,
        d_system: 2,
        d_ancilla: 2,
    })
}

/// Signed information redistribution between two ledgers.
#[derive(Debug, Clone, Copy)]
pub struct InformationDelta {
    /// Change of the measurement context: `Δi_mutual + Δi_ancilla`.
    pub context: f64,
    /// Change of the local system content: `Δi_system`.
    pub system: f64,
}

impl InformationDelta {
    /// Net change of the total content; zero when the coupling is unitary.
    pub fn total(&self) -> f64 {
        self.context + self.system
    }
}

/// Information redistribution from `before` to `after`. When the total
/// content is conserved, `context = -system` exactly.
pub fn delta_information(
    before: &InformationLedger,
    after: &InformationLedger,
) -> Result<InformationDelta> {
    if before.d_system != after.d_system || before.d_ancilla != after.d_ancilla {
        return Err(Error::DimensionMismatch {
            left: before.d_system * before.d_ancilla,
            right: after.d_system * after.d_ancilla,
        });
    }
    Ok(InformationDelta {
        context: (after.i_mutual - before.i_mutual) + (after.i_ancilla - before.i_ancilla),
        system: after.i_system - before.i_system,
    })
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random::{random_density, random_observable};
    use crate::qcore::PureState;
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn plus() -> DensityMatrix {
        DensityMatrix::plus_state()
    }

    fn zero() -> DensityMatrix {
        DensityMatrix::from_pure(&PureState::computational(2, 0).unwrap()).unwrap()
    }

    fn mixed() -> DensityMatrix {
        DensityMatrix::maximally_mixed(2).unwrap()
    }

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::new(vec![
            Complex64::new(s, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(s, 0.0),
        ])
        .unwrap();
        DensityMatrix::from_pure(&psi).unwrap()
    }

    #[test]
    fn entropy_of_reference_states() {
        assert!(von_neumann_entropy(&plus()).abs() <= 1e-12);
        assert!((von_neumann_entropy(&mixed()) - LN_2).abs() <= 1e-12);
        let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[0.75, 0.25])).unwrap();
        // Closed-form binary entropy at p = 3/4.
        let expected = -(0.75f64.ln() * 0.75 + 0.25f64.ln() * 0.25);
        assert!((von_neumann_entropy(&rho) - expected).abs() <= 1e-12);
        assert!((expected - 0.562335).abs() <= 1e-6);
    }

    #[test]
    fn shannon_entropy_endpoints_and_symmetry() {
        assert_eq!(shannon_binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(shannon_binary_entropy(1.0).unwrap(), 0.0);
        assert!((shannon_binary_entropy(0.5).unwrap() - LN_2).abs() <= 1e-15);
        let h = shannon_binary_entropy(0.25).unwrap();
        assert!((h - 0.562335144618808).abs() <= 1e-12);
        for p in [0.1, 0.3, 0.47] {
            let a = shannon_binary_entropy(p).unwrap();
            let b = shannon_binary_entropy(1.0 - p).unwrap();
            assert!((a - b).abs() <= 1e-15);
        }
        assert!(matches!(
            shannon_binary_entropy(1.2),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            shannon_binary_entropy(-0.1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn dephasing_reference_cases() {
        let z = Observable::pauli_z();
        let x = Observable::pauli_x();
        // Eigenstate is a fixed point.
        let out = dephasing_map(&zero(), &z).unwrap();
        assert!(out.mat().max_abs_diff(zero().mat()) <= 1e-14);
        // Equal superposition dephases to the maximal mixture.
        let out = dephasing_map(&plus(), &z).unwrap();
        assert!(out.mat().max_abs_diff(mixed().mat()) <= 1e-14);
        // |0><0| in the X eigenbasis has weight 1/2 on each projector.
        let out = dephasing_map(&zero(), &x).unwrap();
        assert!(out.mat().max_abs_diff(mixed().mat()) <= 1e-14);
    }

    #[test]
    fn dephasing_preserves_populations_and_commutes_with_obs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for dim in [2usize, 4] {
            for _ in 0..20 {
                let rho = random_density(dim, &mut rng);
                let obs = random_observable(dim, &mut rng);
                let out = dephasing_map(&rho, &obs).unwrap();
                for (k, p) in obs.projectors().iter().enumerate() {
                    let before = (p * rho.mat()).trace().re;
                    let after = (p * out.mat()).trace().re;
                    assert!((before - after).abs() <= 1e-12, "population {k} moved");
                }
                let comm =
                    (out.mat() * obs.mat()).max_abs_diff(&(obs.mat() * out.mat()));
                assert!(comm <= 1e-10);
            }
        }
    }

    #[test]
    fn weak_collapse_reference_cases() {
        let z = Observable::pauli_z();
        // Projective limit lands on the outcome projector.
        let out = weak_collapse(&plus(), &z, 0, 1.0).unwrap();
        assert!(out.mat().max_abs_diff(zero().mat()) <= 1e-14);
        // Zero strength delivers no change.
        let out = weak_collapse(&plus(), &z, 1, 0.0).unwrap();
        assert!(out.mat().max_abs_diff(plus().mat()) <= 1e-14);
        // Direct convex combination at ε = 1/2 on |+><+|.
        let out = weak_collapse(&plus(), &z, 0, 0.5).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.75, 0.0), Complex64::new(0.25, 0.0)],
            vec![Complex64::new(0.25, 0.0), Complex64::new(0.25, 0.0)],
        ])
        .unwrap();
        assert!(out.mat().max_abs_diff(&expected) <= 1e-14);
        // Out-of-range inputs.
        assert!(matches!(
            weak_collapse(&plus(), &z, 0, 1.5),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            weak_collapse(&plus(), &z, 2, 0.5),
            Err(Error::InvalidOutcome { .. })
        ));
    }

    #[test]
    fn monitoring_map_reference_cases() {
        let z = Observable::pauli_z();
        let out = monitoring_map(&plus(), &z, 0.0).unwrap();
        assert!(out.mat().max_abs_diff(plus().mat()) <= 1e-14);
        let out = monitoring_map(&plus(), &z, 1.0).unwrap();
        assert!(out.mat().max_abs_diff(mixed().mat()) <= 1e-14);
        let out = monitoring_map(&plus(), &z, 0.5).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.25, 0.0)],
            vec![Complex64::new(0.25, 0.0), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        assert!(out.mat().max_abs_diff(&expected) <= 1e-14);
    }

    #[test]
    fn monitoring_map_equals_convex_form() {
        // M^ε_O(ρ) = (1-ε)ρ + ε Φ_O(ρ): verified, not assumed.
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for dim in [2usize, 4] {
            for _ in 0..25 {
                let rho = random_density(dim, &mut rng);
                let obs = random_observable(dim, &mut rng);
                let eps: f64 = rng.random_range(0.0..=1.0);
                let lhs = monitoring_map(&rho, &obs, eps).unwrap();
                let dephased = dephasing_map(&rho, &obs).unwrap();
                let rhs = &rho.mat().scale_re(1.0 - eps) + &dephased.mat().scale_re(eps);
                assert!(lhs.mat().max_abs_diff(&rhs) <= 1e-12);
            }
        }
    }

    #[test]
    fn monitoring_commutes_with_dephasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let dim = if rng.random::<bool>() { 2 } else { 4 };
            let rho = random_density(dim, &mut rng);
            let obs = random_observable(dim, &mut rng);
            let eps: f64 = rng.random_range(0.0..=1.0);
            let a = dephasing_map(&monitoring_map(&rho, &obs, eps).unwrap(), &obs).unwrap();
            let b = monitoring_map(&dephasing_map(&rho, &obs).unwrap(), &obs, eps).unwrap();
            assert!(a.mat().max_abs_diff(b.mat()) <= 1e-12);
        }
    }

    #[test]
    fn irreality_reference_cases() {
        let z = Observable::pauli_z();
        assert_eq!(irreality(&z, &zero()).unwrap(), 0.0);
        assert!((irreality(&z, &plus()).unwrap() - LN_2).abs() <= 1e-12);
        assert_eq!(irreality(&z, &mixed()).unwrap(), 0.0);
    }

    #[test]
    fn irreality_vanishes_iff_dephasing_fixes_the_state() {
        let z = Observable::pauli_z();
        // Diagonal states: fixed points with zero irreality.
        for d in [[1.0, 0.0], [0.6, 0.4], [0.5, 0.5]] {
            let rho = DensityMatrix::new(ComplexMatrix::from_diag(&d)).unwrap();
            let dephased = dephasing_map(&rho, &z).unwrap();
            assert!(dephased.mat().max_abs_diff(rho.mat()) <= 1e-12);
            assert!(irreality(&z, &rho).unwrap() <= 1e-10);
        }
        // Coherent states: the map moves them and irreality is positive.
        for off in [0.1, 0.3, 0.5] {
            let mut m = ComplexMatrix::from_diag(&[0.5, 0.5]);
            m[(0, 1)] = Complex64::new(off, 0.0);
            m[(1, 0)] = Complex64::new(off, 0.0);
            let rho = DensityMatrix::new(m).unwrap();
            let dephased = dephasing_map(&rho, &z).unwrap();
            assert!(dephased.mat().max_abs_diff(rho.mat()) > 1e-10);
            assert!(irreality(&z, &rho).unwrap() > 1e-6);
        }
    }

    #[test]
    fn delta_reality_reference_cases() {
        let z = Observable::pauli_z();
        // Eigenstate: nothing changes at any strength.
        for eps in [0.0, 0.3, 1.0] {
            let report = delta_reality(&z, &zero(), eps).unwrap();
            assert!(report.delta_reality.abs() <= 1e-12);
        }
        // |+><+|: ΔR(ε) is the binary entropy of ε/2.
        for eps in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let report = delta_reality(&z, &plus(), eps).unwrap();
            let expected = shannon_binary_entropy(eps / 2.0).unwrap();
            assert!((report.delta_reality - expected).abs() <= 1e-12);
            assert!((report.delta_information + report.delta_reality).abs() <= 1e-15);
            assert!((report.bound_rhs - eps * LN_2).abs() <= 1e-12);
        }
        let report = delta_reality(&z, &plus(), 1.0).unwrap();
        assert!((report.delta_reality - LN_2).abs() <= 1e-12);
        // Frozen numbers at ε = 1/2.
        let report = delta_reality(&z, &plus(), 0.5).unwrap();
        assert!((report.delta_reality - 0.562335144618808).abs() <= 1e-12);
        assert!((report.bound_rhs - 0.346573590279973).abs() <= 1e-12);
    }

    #[test]
    fn delta_reality_is_bounded_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let rho = random_density(2, &mut rng);
            let obs = random_observable(2, &mut rng);
            let eps: f64 = rng.random_range(0.0..=1.0);
            let report = delta_reality(&obs, &rho, eps).unwrap();
            assert!(report.delta_reality >= report.bound_rhs - 1e-10);
        }
        // Non-decreasing in ε on a 101-point grid.
        for _ in 0..5 {
            let rho = random_density(2, &mut rng);
            let obs = random_observable(2, &mut rng);
            let mut prev = -1.0;
            for i in 0..=100 {
                let eps = i as f64 / 100.0;
                let dr = delta_reality(&obs, &rho, eps).unwrap().delta_reality;
                assert!(dr >= prev - 1e-10, "ΔR decreased at ε = {eps}");
                prev = dr;
            }
        }
    }

    #[test]
    fn ledger_reference_cases() {
        // Product of pure states: all information is local.
        let product = DensityMatrix::new(zero().mat().tensor(plus().mat())).unwrap();
        let ledger = information_ledger(&product).unwrap();
        assert!((ledger.i_system - LN_2).abs() <= 1e-12);
        assert!((ledger.i_ancilla - LN_2).abs() <= 1e-12);
        assert!(ledger.i_mutual.abs() <= 1e-12);
        assert!((ledger.i_total - 2.0 * LN_2).abs() <= 1e-12);
        // Bell state: all information is in the correlations.
        let ledger = information_ledger(&bell()).unwrap();
        assert!(ledger.i_system.abs() <= 1e-12);
        assert!(ledger.i_ancilla.abs() <= 1e-12);
        assert!((ledger.i_mutual - 2.0 * LN_2).abs() <= 1e-12);
        assert!((ledger.i_total - 2.0 * LN_2).abs() <= 1e-12);
        // Maximal mixture: no information anywhere.
        let ledger = information_ledger(&DensityMatrix::maximally_mixed(4).unwrap()).unwrap();
        assert_eq!(ledger.i_total, 0.0);
        // Wrong dimension.
        assert!(matches!(
            information_ledger(&mixed()),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn ledger_capacity_bounds_hold_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..50 {
            let rho = random_density(4, &mut rng);
            let ledger = information_ledger(&rho).unwrap();
            assert!(ledger.i_system >= 0.0 && ledger.i_system <= LN_2 + 1e-12);
            assert!(ledger.i_ancilla >= 0.0 && ledger.i_ancilla <= LN_2 + 1e-12);
            assert!(ledger.i_mutual >= 0.0 && ledger.i_mutual <= 2.0 * LN_2 + 1e-10);
            let sum = ledger.i_system + ledger.i_ancilla + ledger.i_mutual;
            assert_eq!(ledger.i_total, sum);
        }
    }

    #[test]
    fn delta_information_reference_cases() {
        let product = DensityMatrix::new(plus().mat().tensor(zero().mat())).unwrap();
        let ledger = information_ledger(&product).unwrap();
        let delta = delta_information(&ledger, &ledger).unwrap();
        assert_eq!(delta.context, 0.0);
        assert_eq!(delta.system, 0.0);
        // Maximally entangling step: one unit of local system information
        // moves entirely into the context.
        let before = information_ledger(&product).unwrap();
        let after = information_ledger(&bell()).unwrap();
        let delta = delta_information(&before, &after).unwrap();
        assert!((delta.system + LN_2).abs() <= 1e-12);
        assert!((delta.context - LN_2).abs() <= 1e-12);
        assert!(delta.total().abs() <= 1e-12);
    }
}
