use serde::{Deserialize, Serialize};

use super::{FilterSpec, Pattern};
use crate::error::Result;
use crate::statevec::{Control, GateKind, GateOp};

/// How multi-controlled X gates are emitted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Emission {
    /// One gate per pattern with mixed-polarity controls.
    #[default]
    Native,
    /// Toffolis, CNOTs and X gates only. A `k`-control gate (`k >= 3`) becomes a V-chain of
    /// `k - 1` computing and `k - 2` uncomputing Toffolis over `k - 2` work ancillas placed
    /// above the marking ancilla. Zero-controls are wrapped in X gates.
    ToffoliDecomposed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkingCircuit {
    pub ops: Vec<GateOp>,
    pub n_data_qubits: usize,
    /// Always `n_data_qubits`.
    pub ancilla_index: usize,
    pub emission: Emission,
    /// Work ancillas at `ancilla_index + 1 ..`; zero for native emission.
    pub work_ancillas: usize,
}

impl MarkingCircuit {
    /// Data qubits, the marking ancilla and any work ancillas.
    pub fn total_qubits(&self) -> usize {
        self.n_data_qubits + 1 + self.work_ancillas
    }
}

pub fn compile_marking(spec: &FilterSpec) -> Result<MarkingCircuit> {
    compile_marking_with(spec, Emission::Native)
}

pub fn compile_marking_with(spec: &FilterSpec, emission: Emission) -> Result<MarkingCircuit> {
    spec.validate()?;
    let ancilla = spec.n;
    let patterns = spec.patterns();
    let (ops, work_ancillas) = match emission {
        Emission::Native => (patterns.iter().map(|p| GateOp::mcx(controls(p), ancilla)).collect(), 0),
        Emission::ToffoliDecomposed => {
            let work = patterns.iter().map(|p| p.0.len().saturating_sub(2)).max().unwrap_or(0);
            let ops = patterns
                .iter()
                .flat_map(|p| decomposed(p, ancilla, ancilla + 1))
                .collect();
            (ops, work)
        }
    };
    Ok(MarkingCircuit {
        ops,
        n_data_qubits: spec.n,
        ancilla_index: ancilla,
        emission,
        work_ancillas,
    })
}

fn controls(pattern: &Pattern) -> Vec<Control> {
    pattern
        .0
        .iter()
        .map(|c| Control {
            qubit: c.qubit,
            on_one: c.bit,
        })
        .collect()
}

fn decomposed(pattern: &Pattern, target: usize, first_work: usize) -> Vec<GateOp> {
    let flips: Vec<GateOp> = pattern
        .0
        .iter()
        .filter(|c| !c.bit)
        .map(|c| GateOp::x(c.qubit))
        .collect();
    let q: Vec<usize> = pattern.0.iter().map(|c| c.qubit).collect();
    let mut body = Vec::new();
    match q.len() {
        0 => body.push(GateOp::x(target)),
        1 => body.push(GateOp::cx(q[0], target)),
        2 => body.push(toffoli(q[0], q[1], target)),
        k => {
            let w = |i: usize| first_work + i;
            let mut compute = vec![toffoli(q[0], q[1], w(0))];
            for i in 1..k - 2 {
                compute.push(toffoli(q[i + 1], w(i - 1), w(i)));
            }
            body.extend(compute.iter().cloned());
            body.push(toffoli(q[k - 1], w(k - 3), target));
            body.extend(compute.into_iter().rev());
        }
    }
    flips.iter().cloned().chain(body).chain(flips.iter().cloned()).collect()
}

fn toffoli(a: usize, b: usize, target: usize) -> GateOp {
    GateOp::mcx([Control::one(a), Control::one(b)], target)
}

/// Gate tallies, bucketed by control count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    /// X gates with three or more controls.
    pub multi_controlled_x: usize,
    pub toffoli: usize,
    pub cnot: usize,
    pub x: usize,
    pub work_ancillas: usize,
}

pub fn gate_count(circuit: &MarkingCircuit) -> GateCounts {
    let mut counts = GateCounts {
        work_ancillas: circuit.work_ancillas,
        ..Default::default()
    };
    for op in circuit.ops.iter().filter(|op| op.kind == GateKind::PauliX) {
        match op.controls.len() {
            0 => counts.x += 1,
            1 => counts.cnot += 1,
            2 => counts.toffoli += 1,
            _ => counts.multi_controlled_x += 1,
        }
    }
    counts
}
