use rand::Rng;

use super::{compile_marking_with, Emission, FilterSpec, MarkingCircuit};
use crate::error::{Error, Result};
use crate::statevec::StateVector;

/// Kept-branch probabilities at or below this count as annihilation. Bins that are zero
/// in exact arithmetic come out of a transform near `1e-33` in squared magnitude, and
/// renormalizing those would amplify rounding noise into a unit vector.
pub const ANNIHILATION_THRESHOLD: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    /// Renormalized data register, ancillas removed.
    pub state: StateVector,
    pub success_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledOutcome {
    pub state: StateVector,
    pub success_probability: f64,
    /// Preparations used, including the successful one.
    pub trials: usize,
}

/// `Σ |a_i|²` over the states `spec` marks, computed directly from the amplitudes.
pub fn marked_mass(state: &StateVector, spec: &FilterSpec) -> f64 {
    spec.marked_mask()
        .iter()
        .zip(state.amplitudes())
        .filter(|(m, _)| **m)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

pub fn apply_filter_project(state: &StateVector, spec: &FilterSpec) -> Result<FilterOutcome> {
    apply_filter_project_with(state, spec, Emission::Native)
}

/// Attach the ancillas, mark, keep the `keep_marked` branch and drop the ancillas.
pub fn apply_filter_project_with(state: &StateVector, spec: &FilterSpec, emission: Emission) -> Result<FilterOutcome> {
    let (circuit, marked) = prepare(state, spec, emission)?;
    let keep = spec.keep_marked;
    let p = kept_probability(&marked, &circuit, keep)?;
    let (projected, _) = marked.postselect(circuit.ancilla_index, keep)?;
    Ok(FilterOutcome {
        state: projected.release_top_qubits(spec.n, keep as usize)?,
        success_probability: p,
    })
}

/// Repeat preparation, marking and ancilla measurement until the kept outcome appears.
///
/// Every trial starts from the same pre-measurement state, which is therefore built once
/// and measured afresh on each trial. Outcomes are drawn from `rng`, so a seeded
/// generator makes the trial count reproducible.
pub fn apply_filter_sampled<R: Rng + ?Sized>(
    state: &StateVector,
    spec: &FilterSpec,
    rng: &mut R,
    max_trials: usize,
) -> Result<SampledOutcome> {
    let (circuit, marked) = prepare(state, spec, Emission::Native)?;
    let keep = spec.keep_marked;
    let p = kept_probability(&marked, &circuit, keep)?;
    for trial in 1..=max_trials {
        let (outcome, collapsed) = marked.sample_measurement(circuit.ancilla_index, rng)?;
        if outcome == keep {
            return Ok(SampledOutcome {
                state: collapsed.release_top_qubits(spec.n, keep as usize)?,
                success_probability: p,
                trials: trial,
            });
        }
    }
    Err(Error::RetryBudgetExhausted { max_trials })
}

fn prepare(state: &StateVector, spec: &FilterSpec, emission: Emission) -> Result<(MarkingCircuit, StateVector)> {
    if state.n_qubits() != spec.n {
        return Err(Error::ShapeMismatch(format!(
            "filter is for {} qubits, state has {}",
            spec.n,
            state.n_qubits()
        )));
    }
    let circuit = compile_marking_with(spec, emission)?;
    let marked = state
        .with_ancillas(1 + circuit.work_ancillas)?
        .apply_circuit(&circuit.ops)?;
    Ok((circuit, marked))
}

fn kept_probability(marked: &StateVector, circuit: &MarkingCircuit, keep: bool) -> Result<f64> {
    let p = marked.branch_probability(circuit.ancilla_index, keep)?;
    if p <= ANNIHILATION_THRESHOLD {
        return Err(Error::Annihilated { probability: p });
    }
    Ok(p)
}
