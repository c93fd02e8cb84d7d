use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statevec::{Control, GateOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    /// CNOT from qubit `2k` onto qubit `2k+1`.
    Cnot,
    /// SWAP of qubits `2k` and `2k+1`, all controlled by one switch ancilla.
    Cswap,
    /// SWAP of qubit `k` with qubit `k + n/2`; transposes row-major encodings.
    RowMajor,
}

/// A transpose circuit over `n_qubits` data qubits.
///
/// `enabled` is the switch. For [`SchemeKind::Cswap`] it selects the `U3` parameters on the
/// switch ancilla (qubit `n_qubits`): `U3(π, 0, π)` turns the swaps on and `U3(0, 0, 0)`
/// leaves the register alone. The other kinds include or omit their gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransposeScheme {
    pub kind: SchemeKind,
    pub n_qubits: usize,
    pub pairs: Vec<(usize, usize)>,
    pub enabled: bool,
}

fn check_even(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddQubitCount(n));
    }
    Ok(())
}

pub fn build_cnot_scheme(n: usize) -> Result<TransposeScheme> {
    check_even(n)?;
    Ok(TransposeScheme {
        kind: SchemeKind::Cnot,
        n_qubits: n,
        pairs: (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
        enabled: true,
    })
}

pub fn build_cswap_scheme(n: usize) -> Result<TransposeScheme> {
    check_even(n)?;
    Ok(TransposeScheme {
        kind: SchemeKind::Cswap,
        n_qubits: n,
        pairs: (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
        enabled: true,
    })
}

pub fn build_rowmajor_scheme(n: usize) -> Result<TransposeScheme> {
    check_even(n)?;
    Ok(TransposeScheme {
        kind: SchemeKind::RowMajor,
        n_qubits: n,
        pairs: (0..n / 2).map(|k| (k, k + n / 2)).collect(),
        enabled: true,
    })
}

pub fn build_scheme(kind: SchemeKind, n: usize) -> Result<TransposeScheme> {
    match kind {
        SchemeKind::Cnot => build_cnot_scheme(n),
        SchemeKind::Cswap => build_cswap_scheme(n),
        SchemeKind::RowMajor => build_rowmajor_scheme(n),
    }
}

impl TransposeScheme {
    pub fn with_enabled(mut self, enabled: bool) -> Self {
        self.enabled = enabled;
        self
    }

    /// Qubit index of the switch ancilla, if the scheme has one.
    pub fn switch_ancilla(&self) -> Option<usize> {
        (self.kind == SchemeKind::Cswap).then_some(self.n_qubits)
    }

    pub fn total_qubits(&self) -> usize {
        self.n_qubits + self.switch_ancilla().map_or(0, |_| 1)
    }

    pub fn validate(&self) -> Result<()> {
        check_even(self.n_qubits)?;
        let mut used = vec![false; self.n_qubits];
        for &(a, b) in &self.pairs {
            for q in [a, b] {
                if q >= self.n_qubits {
                    return Err(Error::InvalidScheme(format!("qubit {q} out of range")));
                }
                if std::mem::replace(&mut used[q], true) {
                    return Err(Error::InvalidScheme(format!("qubit {q} is in two pairs")));
                }
            }
        }
        Ok(())
    }

    /// Gates for the current switch setting.
    pub fn circuit(&self) -> Vec<GateOp> {
        match self.kind {
            SchemeKind::Cswap => {
                if self.enabled {
                    self.circuit_with_switch(PI, 0.0, PI)
                } else {
                    self.circuit_with_switch(0.0, 0.0, 0.0)
                }
            }
            SchemeKind::Cnot if self.enabled => self.pairs.iter().map(|&(c, t)| GateOp::cx(c, t)).collect(),
            SchemeKind::RowMajor if self.enabled => self.pairs.iter().map(|&(a, b)| GateOp::swap(a, b)).collect(),
            _ => Vec::new(),
        }
    }

    /// Controlled-SWAP circuit with explicit `U3` parameters on the switch ancilla.
    /// Other scheme kinds have no switch and return their plain circuit.
    pub fn circuit_with_switch(&self, theta: f64, phi: f64, lambda: f64) -> Vec<GateOp> {
        let Some(switch) = self.switch_ancilla() else {
            return self.clone().with_enabled(true).circuit();
        };
        std::iter::once(GateOp::u3(switch, theta, phi, lambda))
            .chain(
                self.pairs
                    .iter()
                    .map(|&(a, b)| GateOp::swap(a, b).controlled_by(Control::one(switch))),
            )
            .collect()
    }

    /// Basis permutation of the data register with the switch on, computed from the wiring
    /// by bit manipulation rather than by simulation.
    pub fn permutation(&self) -> Vec<usize> {
        (0..1usize << self.n_qubits)
            .map(|index| {
                self.pairs.iter().fold(index, |i, &(a, b)| {
                    let (bit_a, bit_b) = ((i >> a) & 1, (i >> b) & 1);
                    match self.kind {
                        SchemeKind::Cnot => i ^ (bit_a << b),
                        SchemeKind::Cswap | SchemeKind::RowMajor => {
                            if bit_a != bit_b {
                                i ^ (1 << a) ^ (1 << b)
                            } else {
                                i
                            }
                        }
                    }
                })
            })
            .collect()
    }
}
