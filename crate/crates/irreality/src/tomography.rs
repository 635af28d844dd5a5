//! Simulated finite-shot two-qubit state tomography.
//!
//! The protocol is the minimal complete 9-setting Pauli-product scheme
//! with projective two-outcome readout per qubit. Counts are drawn from
//! the exact Born probabilities with a named, seedable generator
//! (ChaCha8); setting `i` samples from stream `i` of the seed so tables
//! are reproducible regardless of evaluation order.
//!
//! Reconstruction offers plain linear inversion (Hermitian, unit trace,
//! not necessarily positive), projection onto the physical set, and an
//! `RρR` maximum-likelihood iteration with a dilution fallback that keeps
//! the log-likelihood non-decreasing.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::measures::{
    information_ledger, irreality, monitoring_map, von_neumann_entropy, InformationLedger,
    RealityReport,
};
use crate::qcore::{
    eig_hermitian, fidelity, partial_trace, ComplexMatrix, DensityMatrix, Observable, Subsystem,
    HERMITICITY_TOL,
};

/// Single-qubit measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];

    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            PauliBasis::X => {
                let mut m = ComplexMatrix::zeros(2);
                m[(0, 1)] = Complex64::ONE;
                m[(1, 0)] = Complex64::ONE;
                m
            }
            PauliBasis::Y => {
                let mut m = ComplexMatrix::zeros(2);
                m[(0, 1)] = Complex64::new(0.0, -1.0);
                m[(1, 0)] = Complex64::new(0.0, 1.0);
                m
            }
            PauliBasis::Z => ComplexMatrix::from_diag(&[1.0, -1.0]),
        }
    }

    /// Projectors onto the ±1 eigenspaces, `(I ± σ)/2`.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let sigma = self.matrix();
        let id = ComplexMatrix::identity(2);
        (
            (&id + &sigma).scale_re(0.5),
            (&id - &sigma).scale_re(0.5),
        )
    }

    pub fn label(&self) -> char {
        match self {
            PauliBasis::X => 'X',
            PauliBasis::Y => 'Y',
            PauliBasis::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'X' => Ok(PauliBasis::X),
            'Y' => Ok(PauliBasis::Y),
            'Z' => Ok(PauliBasis::Z),
            other => Err(Error::Parse {
                detail: format!("unknown Pauli basis label '{other}'"),
            }),
        }
    }
}

impl fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// One tomography setting: a Pauli basis on each qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementSetting {
    pub basis_s: PauliBasis,
    pub basis_a: PauliBasis,
}

impl MeasurementSetting {
    /// The full Pauli-product set in canonical order XX, XY, ..., ZZ.
    pub fn all() -> [MeasurementSetting; 9] {
        let mut out = [MeasurementSetting {
            basis_s: PauliBasis::X,
            basis_a: PauliBasis::X,
        }; 9];
        let mut idx = 0;
        for s in PauliBasis::ALL {
            for a in PauliBasis::ALL {
                out[idx] = MeasurementSetting {
                    basis_s: s,
                    basis_a: a,
                };
                idx += 1;
            }
        }
        out
    }

    /// Projector for outcome pair `o` in the order ++, +-, -+, --.
    pub fn outcome_projector(&self, o: usize) -> ComplexMatrix {
        let (sp, sm) = self.basis_s.projectors();
        let (ap, am) = self.basis_a.projectors();
        match o {
            0 => sp.tensor(&ap),
            1 => sp.tensor(&am),
            2 => sm.tensor(&ap),
            3 => sm.tensor(&am),
            _ => panic!("outcome index must be < 4"),
        }
    }
}

/// Exact Born probabilities of the four outcome pairs for one setting.
pub fn setting_probabilities(
    rho: &DensityMatrix,
    setting: &MeasurementSetting,
) -> Result<[f64; 4]> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let mut probs = [0.0; 4];
    for (o, slot) in probs.iter_mut().enumerate() {
        let p = (&setting.outcome_projector(o) * rho.mat()).trace().re;
        *slot = p.max(0.0);
    }
    let total: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= total;
    }
    Ok(probs)
}

/// Counts for the four outcome pairs of one setting.
#[derive(Debug, Clone, Copy)]
pub struct SettingCounts {
    pub setting: MeasurementSetting,
    /// Order ++, +-, -+, --; sums to the table's shots per setting.
    pub counts: [u64; 4],
}

/// Complete 9-setting count table produced by one simulated tomography run.
#[derive(Debug, Clone)]
pub struct CountTable {
    entries: Vec<SettingCounts>,
    shots_per_setting: u64,
    rng_seed: u64,
}

impl CountTable {
    pub fn entries(&self) -> &[SettingCounts] {
        &self.entries
    }

    pub fn shots_per_setting(&self) -> u64 {
        self.shots_per_setting
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    /// Serializes to CSV with the fixed header
    /// `setting_s,setting_a,n_pp,n_pm,n_mp,n_mm,shots,seed`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("setting_s,setting_a,n_pp,n_pm,n_mp,n_mm,shots,seed\n");
        for entry in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                entry.setting.basis_s,
                entry.setting.basis_a,
                entry.counts[0],
                entry.counts[1],
                entry.counts[2],
                entry.counts[3],
                self.shots_per_setting,
                self.rng_seed
            ));
        }
        out
    }

    /// Parses a table serialized by [`CountTable::to_csv`]. All nine
    /// settings must be present exactly once with consistent shot counts.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse {
            detail: "empty input".into(),
        })?;
        if header.trim() != "setting_s,setting_a,n_pp,n_pm,n_mp,n_mm,shots,seed" {
            return Err(Error::Parse {
                detail: format!("unexpected header '{header}'"),
            });
        }
        let mut seen: Vec<SettingCounts> = Vec::new();
        let mut shots: Option<u64> = None;
        let mut seed: Option<u64> = None;
        for line in lines {
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 8 {
                return Err(Error::Parse {
                    detail: format!("expected 8 fields, got {} in '{line}'", fields.len()),
                });
            }
            let parse_char = |s: &str| {
                s.chars().next().ok_or_else(|| Error::Parse {
                    detail: "empty basis label".into(),
                })
            };
            let basis_s = PauliBasis::from_label(parse_char(fields[0])?)?;
            let basis_a = PauliBasis::from_label(parse_char(fields[1])?)?;
            let mut counts = [0u64; 4];
            for (slot, field) in counts.iter_mut().zip(&fields[2..6]) {
                *slot = field.parse().map_err(|_| Error::Parse {
                    detail: format!("bad count '{field}'"),
                })?;
            }
            let row_shots: u64 = fields[6].parse().map_err(|_| Error::Parse {
                detail: format!("bad shots '{}'", fields[6]),
            })?;
            let row_seed: u64 = fields[7].parse().map_err(|_| Error::Parse {
                detail: format!("bad seed '{}'", fields[7]),
            })?;
            if counts.iter().sum::<u64>() != row_shots {
                return Err(Error::IncompleteData {
                    detail: format!("counts do not sum to shots in '{line}'"),
                });
            }
            match (shots, seed) {
                (None, None) => {
                    shots = Some(row_shots);
                    seed = Some(row_seed);
                }
                (Some(s), Some(d)) if s == row_shots && d == row_seed => {}
                _ => {
                    return Err(Error::IncompleteData {
                        detail: "inconsistent shots or seed across rows".into(),
                    })
                }
            }
            let setting = MeasurementSetting { basis_s, basis_a };
            if seen.iter().any(|e| e.setting == setting) {
                return Err(Error::IncompleteData {
                    detail: format!("duplicate setting {basis_s}{basis_a}"),
                });
            }
            seen.push(SettingCounts { setting, counts });
        }
        if seen.len() != 9 {
            return Err(Error::IncompleteData {
                detail: format!("expected 9 settings, got {}", seen.len()),
            });
        }
        // Canonical order regardless of row order in the file.
        let mut entries = Vec::with_capacity(9);
        for setting in MeasurementSetting::all() {
            let entry = seen
                .iter()
                .find(|e| e.setting == setting)
                .ok_or_else(|| Error::IncompleteData {
                    detail: format!("missing setting {}{}", setting.basis_s, setting.basis_a),
                })?;
            entries.push(*entry);
        }
        Ok(Self {
            entries,
            shots_per_setting: shots.unwrap_or(0),
            rng_seed: seed.unwrap_or(0),
        })
    }
}

/// Per-setting outcome frequencies: either empirical (from counts) or the
/// exact Born probabilities (the infinite-shot limit).
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    freqs: [[f64; 4]; 9],
}

impl FrequencyTable {
    pub fn from_counts(table: &CountTable) -> Self {
        let shots = table.shots_per_setting() as f64;
        let mut freqs = [[0.0; 4]; 9];
        for (row, entry) in freqs.iter_mut().zip(table.entries()) {
            for (slot, &n) in row.iter_mut().zip(&entry.counts) {
                *slot = n as f64 / shots;
            }
        }
        Self { freqs }
    }

    /// Exact Born probabilities of `rho`, the shots → ∞ limit of counting.
    pub fn exact(rho: &DensityMatrix) -> Result<Self> {
        let mut freqs = [[0.0; 4]; 9];
        for (row, setting) in freqs.iter_mut().zip(MeasurementSetting::all()) {
            *row = setting_probabilities(rho, &setting)?;
        }
        Ok(Self { freqs })
    }

    pub fn frequencies(&self) -> &[[f64; 4]; 9] {
        &self.freqs
    }
}

/// Draws a multinomial sample by chained binomials; the per-setting cost
/// is independent of the shot count.
fn sample_multinomial(rng: &mut ChaCha8Rng, shots: u64, probs: &[f64; 4]) -> [u64; 4] {
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut rest = 1.0f64;
    for k in 0..3 {
        if remaining == 0 || rest <= 0.0 {
            break;
        }
        let p = (probs[k] / rest).clamp(0.0, 1.0);
        counts[k] = if p >= 1.0 {
            remaining
        } else if p <= 0.0 {
            0
        } else {
            Binomial::new(remaining, p)
                .expect("binomial parameters validated")
                .sample(rng)
        };
        remaining -= counts[k];
        rest -= probs[k];
    }
    counts[3] = remaining;
    counts
}

/// Simulates one tomography run: for each of the nine settings, `shots`
/// outcomes are drawn from the exact Born probabilities. Setting `i` uses
/// stream `i` of a ChaCha8 generator seeded with `seed`, so the same
/// `(ρ, shots, seed)` always yields the identical table.
pub fn simulate_counts(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<CountTable> {
    if shots == 0 {
        return Err(Error::OutOfRange {
            name: "shots",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let mut entries = Vec::with_capacity(9);
    for (idx, setting) in MeasurementSetting::all().into_iter().enumerate() {
        let probs = setting_probabilities(rho, &setting)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        let counts = sample_multinomial(&mut rng, shots, &probs);
        entries.push(SettingCounts { setting, counts });
    }
    Ok(CountTable {
        entries,
        shots_per_setting: shots,
        rng_seed: seed,
    })
}

fn pauli_or_identity(idx: usize) -> ComplexMatrix {
    match idx {
        0 => ComplexMatrix::identity(2),
        1 => PauliBasis::X.matrix(),
        2 => PauliBasis::Y.matrix(),
        3 => PauliBasis::Z.matrix(),
        _ => unreachable!(),
    }
}

/// Linear inversion `ρ = ¼ Σ_ij <σ_i ⊗ σ_j> σ_i ⊗ σ_j` over the Pauli
/// basis including identities. Hermitian and unit-trace by construction,
/// but not necessarily positive.
pub fn linear_inversion(counts: &CountTable) -> ComplexMatrix {
    linear_inversion_from_frequencies(&FrequencyTable::from_counts(counts))
}

/// Linear inversion from a frequency table; feeding
/// [`FrequencyTable::exact`] recovers the state exactly.
pub fn linear_inversion_from_frequencies(table: &FrequencyTable) -> ComplexMatrix {
    let freqs = table.frequencies();
    let setting_index = |s: usize, a: usize| 3 * s + a;
    // Outcome signs in the order ++, +-, -+, --.
    const SIGN_S: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
    const SIGN_A: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

    let mut expectations = [[0.0f64; 4]; 4];
    expectations[0][0] = 1.0;
    for i in 0..3 {
        for j in 0..3 {
            let f = &freqs[setting_index(i, j)];
            expectations[i + 1][j + 1] = (0..4).map(|o| SIGN_S[o] * SIGN_A[o] * f[o]).sum();
        }
    }
    // Single-qubit expectations from marginalized counts, averaged over
    // the three settings that measure the same local Pauli.
    for i in 0..3 {
        let mut sum = 0.0;
        for j in 0..3 {
            let f = &freqs[setting_index(i, j)];
            sum += (0..4).map(|o| SIGN_S[o] * f[o]).sum::<f64>();
        }
        expectations[i + 1][0] = sum / 3.0;
    }
    for j in 0..3 {
        let mut sum = 0.0;
        for i in 0..3 {
            let f = &freqs[setting_index(i, j)];
            sum += (0..4).map(|o| SIGN_A[o] * f[o]).sum::<f64>();
        }
        expectations[0][j + 1] = sum / 3.0;
    }

    let mut rho = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            let weight = expectations[i][j] * 0.25;
            if weight == 0.0 {
                continue;
            }
            let term = pauli_or_identity(i).tensor(&pauli_or_identity(j));
            rho = &rho + &term.scale_re(weight);
        }
    }
    rho
}

/// Projects a Hermitian, unit-trace matrix onto the closest density
/// matrix in Frobenius norm.
///
/// The eigenbasis is kept and the eigenvalues are clamped water-filling
/// style: zero out the negative ones and spread their deficit uniformly
/// over the rest, repeating until everything is non-negative.
pub fn project_to_physical(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let herm_dev = m.hermiticity_deviation();
    if herm_dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian { max_dev: herm_dev });
    }
    let trace_dev = (m.trace() - Complex64::ONE).norm();
    if trace_dev > 1e-12 {
        return Err(Error::NotUnitTrace { dev: trace_dev });
    }
    let eig = eig_hermitian(m)?;
    let n = m.dim();
    if eig.eigenvalues.iter().all(|&l| l >= 0.0) {
        // Already physical: the projection is the identity.
        return DensityMatrix::new(m.clone());
    }

    let mut zeroed = vec![false; n];
    let mut adjusted = vec![0.0f64; n];
    loop {
        let active: Vec<usize> = (0..n).filter(|&i| !zeroed[i]).collect();
        assert!(!active.is_empty(), "projection cannot zero every eigenvalue");
        let active_sum: f64 = active.iter().map(|&i| eig.eigenvalues[i]).sum();
        let shift = (1.0 - active_sum) / active.len() as f64;
        let mut any_negative = false;
        for &i in &active {
            adjusted[i] = eig.eigenvalues[i] + shift;
            if adjusted[i] < 0.0 {
                any_negative = true;
            }
        }
        if !any_negative {
            break;
        }
        for &i in &active {
            if adjusted[i] < 0.0 {
                zeroed[i] = true;
                adjusted[i] = 0.0;
            }
        }
    }

    let mut out = ComplexMatrix::zeros(n);
    for k in 0..n {
        let weight = if zeroed[k] { 0.0 } else { adjusted[k] };
        if weight == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] +=
                    weight * eig.eigenvectors[(i, k)] * eig.eigenvectors[(j, k)].conj();
            }
        }
    }
    DensityMatrix::new(out)
}

/// How a density matrix estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionMethod {
    LinearInversion,
    ProjectedLinearInversion,
    Mle,
}

/// A physical state estimate with reconstruction metadata.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub rho_hat: DensityMatrix,
    pub method: ReconstructionMethod,
    /// Uhlmann fidelity against a known true state; populated by
    /// [`ReconstructionResult::with_fidelity_to`] in tests and
    /// calibration runs only.
    pub fidelity_to_truth: Option<f64>,
    pub iterations: usize,
    /// False when the likelihood iteration hit its cap before meeting the
    /// improvement tolerance; the last iterate is still reported.
    pub converged: bool,
}

impl ReconstructionResult {
    pub fn with_fidelity_to(mut self, truth: &DensityMatrix) -> Result<Self> {
        self.fidelity_to_truth = Some(fidelity(&self.rho_hat, truth)?);
        Ok(self)
    }
}

/// Linear inversion followed by projection onto the physical set: the
/// fast deterministic default.
pub fn projected_linear_inversion(counts: &CountTable) -> Result<ReconstructionResult> {
    let rho_hat = project_to_physical(&linear_inversion(counts))?;
    Ok(ReconstructionResult {
        rho_hat,
        method: ReconstructionMethod::ProjectedLinearInversion,
        fidelity_to_truth: None,
        iterations: 0,
        converged: true,
    })
}

/// Log-likelihood `Σ n_k ln p_k(ρ)` of a count table under a state.
pub fn log_likelihood(counts: &CountTable, rho: &DensityMatrix) -> Result<f64> {
    let mut total = 0.0;
    for entry in counts.entries() {
        let probs = setting_probabilities(rho, &entry.setting)?;
        for (o, &n) in entry.counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            total += n as f64 * probs[o].max(1e-300).ln();
        }
    }
    Ok(total)
}

fn weighted_log_likelihood(freqs: &FrequencyTable, rho: &DensityMatrix) -> Result<f64> {
    let mut total = 0.0;
    for (row, setting) in freqs.frequencies().iter().zip(MeasurementSetting::all()) {
        let probs = setting_probabilities(rho, &setting)?;
        for (o, &f) in row.iter().enumerate() {
            if f == 0.0 {
                continue;
            }
            total += f * probs[o].max(1e-300).ln();
        }
    }
    Ok(total / 9.0)
}

/// Maximum-likelihood reconstruction by the `R ρ R` fixed-point iteration.
pub fn mle_reconstruct(
    counts: &CountTable,
    max_iter: usize,
    tol: f64,
) -> Result<ReconstructionResult> {
    mle_from_frequencies(&FrequencyTable::from_counts(counts), max_iter, tol)
}

/// MLE from a frequency table; injecting [`FrequencyTable::exact`] makes
/// the true state the fixed point.
pub fn mle_from_frequencies(
    freqs: &FrequencyTable,
    max_iter: usize,
    tol: f64,
) -> Result<ReconstructionResult> {
    if max_iter == 0 {
        return Err(Error::OutOfRange {
            name: "max_iter",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let settings = MeasurementSetting::all();
    let mut rho = DensityMatrix::maximally_mixed(4)?;
    let mut ll = weighted_log_likelihood(freqs, &rho)?;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        iterations += 1;
        // R = Σ (f_k / p_k) Π_k over all 36 outcome projectors, weighted so
        // that R = I at the fixed point.
        let mut r = ComplexMatrix::zeros(4);
        for (row, setting) in freqs.frequencies().iter().zip(&settings) {
            let probs = setting_probabilities(&rho, setting)?;
            for (o, &f) in row.iter().enumerate() {
                if f == 0.0 {
                    continue;
                }
                let weight = f / probs[o].max(1e-12) / 9.0;
                r = &r + &setting.outcome_projector(o).scale_re(weight);
            }
        }

        // Full step first; dilute towards the identity until the
        // log-likelihood stops decreasing.
        let mut lambda = 1.0f64;
        let mut accepted = None;
        for _ in 0..60 {
            let step = if lambda >= 1.0 {
                r.clone()
            } else {
                &ComplexMatrix::identity(4).scale_re(1.0 - lambda) + &r.scale_re(lambda)
            };
            let raw = &(&step * rho.mat()) * &step;
            let trace = raw.trace().re;
            if trace <= 0.0 {
                lambda *= 0.5;
                continue;
            }
            let candidate = DensityMatrix::new(raw.scale_re(1.0 / trace))?;
            let candidate_ll = weighted_log_likelihood(freqs, &candidate)?;
            if candidate_ll >= ll - 1e-12 {
                accepted = Some((candidate, candidate_ll));
                break;
            }
            lambda *= 0.5;
        }
        let Some((next, next_ll)) = accepted else {
            // No admissible step left: we are at a stationary point.
            converged = true;
            break;
        };
        let improvement = next_ll - ll;
        rho = next;
        ll = next_ll;
        if improvement.abs() < tol {
            converged = true;
            break;
        }
    }

    Ok(ReconstructionResult {
        rho_hat: rho,
        method: ReconstructionMethod::Mle,
        fidelity_to_truth: None,
        iterations,
        converged,
    })
}

/// Estimates the reality change and information ledger from a
/// reconstructed joint state, under the stated assumption that the
/// initial entropies vanish.
///
/// `assumed_system`, `obs` and `epsilon` describe the nominal
/// preparation; they feed the `S(M^ε_O(ρ)) - S(ρ̂_SA)` information
/// estimator and the `ε·I(O|ρ)` bound. The reality change itself is the
/// plugin entropy of the reconstructed reduced system state (positively
/// biased at finite shots; reported raw).
pub fn estimate_quantities(
    rec: &ReconstructionResult,
    assumed_system: &DensityMatrix,
    obs: &Observable,
    epsilon: f64,
) -> Result<(RealityReport, InformationLedger)> {
    let reduced = partial_trace(&rec.rho_hat, Subsystem::System)?;
    let delta_reality = von_neumann_entropy(&reduced);
    let irreality_before = irreality(obs, assumed_system)?;
    let irreality_after = irreality(obs, &reduced)?;
    let monitored = monitoring_map(assumed_system, obs, epsilon)?;
    let delta_information =
        von_neumann_entropy(&monitored) - von_neumann_entropy(&rec.rho_hat);
    let report = RealityReport {
        irreality_before,
        irreality_after,
        delta_reality,
        delta_information,
        epsilon,
        bound_rhs: epsilon * irreality_before,
    };
    let ledger = information_ledger(&rec.rho_hat)?;
    Ok((report, ledger))
}
