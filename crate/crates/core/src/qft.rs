//! Exact quantum Fourier transform circuits and their dense reference matrices.
//!
//! Sign conventions, with `N = 2^n` and `ω = e^{2πi/N}`:
//!
//! | direction            | action on `|x⟩`                          | classical counterpart |
//! |----------------------|------------------------------------------|-----------------------|
//! | [`Direction::Forward`] (QFT) | `(1/√N) Σ_k ω^{xk} |k⟩`          | `√N · IDFT`           |
//! | [`Direction::Inverse`] (IQFT)| `(1/√N) Σ_k ω^{-xk} |k⟩`         | `DFT / √N`            |
//!
//! The filtering pipeline moves a signal into the frequency domain with the *inverse*
//! transform and back with the forward one, so the frequency amplitudes line up with an
//! unnormalized forward DFT divided by `√N`.
//!
//! Circuits end with the qubit-reversal swap layer, so their unitaries match the matrices
//! above in natural index order.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::statevec::{GateOp, StateVector};

/// Largest register [`dft_matrix_oracle`] will build.
pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Inverse => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierCircuit {
    pub n_qubits: usize,
    pub direction: Direction,
    pub ops: Vec<GateOp>,
}

impl FourierCircuit {
    pub fn hadamard_count(&self) -> usize {
        self.count(|op| matches!(op.kind, crate::statevec::GateKind::Hadamard))
    }

    pub fn phase_count(&self) -> usize {
        self.count(|op| matches!(op.kind, crate::statevec::GateKind::PhaseShift(_)))
    }

    pub fn swap_count(&self) -> usize {
        self.count(|op| matches!(op.kind, crate::statevec::GateKind::Swap(_)))
    }

    fn count(&self, pred: impl Fn(&GateOp) -> bool) -> usize {
        self.ops.iter().filter(|op| pred(op)).count()
    }
}

/// `π / 2^d` computed directly from the integer exponent.
fn ladder_angle(distance: usize) -> f64 {
    PI / (1u64 << distance) as f64
}

/// Forward or inverse transform on the `count` qubits starting at `first`. Those qubits
/// are read as an integer with `first` as the least significant bit.
pub fn build_fourier_on(first: usize, count: usize, direction: Direction) -> Result<FourierCircuit> {
    if count == 0 {
        return Err(Error::Capacity {
            requested: 0,
            max: crate::statevec::DEFAULT_MAX_QUBITS,
        });
    }
    let q = |k: usize| first + k;
    let mut ops = Vec::with_capacity(count * (count + 1) / 2 + count / 2);
    for j in (0..count).rev() {
        ops.push(GateOp::h(q(j)));
        for k in (0..j).rev() {
            ops.push(GateOp::cphase(q(k), q(j), ladder_angle(j - k)));
        }
    }
    for k in 0..count / 2 {
        ops.push(GateOp::swap(q(k), q(count - 1 - k)));
    }
    if direction == Direction::Inverse {
        ops = ops.iter().rev().map(GateOp::inverse).collect();
    }
    Ok(FourierCircuit {
        n_qubits: first + count,
        direction,
        ops,
    })
}

pub fn build_qft(n: usize) -> Result<FourierCircuit> {
    build_fourier_on(0, n, Direction::Forward)
}

pub fn build_iqft(n: usize) -> Result<FourierCircuit> {
    build_fourier_on(0, n, Direction::Inverse)
}

/// Dense `(1/√N)[ω^{±jk}]`, `+` for forward and `-` for inverse.
pub fn dft_matrix_oracle(n: usize, direction: Direction) -> Result<DMatrix<Complex64>> {
    if n == 0 || n > MAX_ORACLE_QUBITS {
        return Err(Error::DenseCap {
            n,
            max: MAX_ORACLE_QUBITS,
        });
    }
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    let roots: Vec<Complex64> = (0..dim)
        .map(|m| Complex64::from_polar(scale, direction.sign() * 2.0 * PI * m as f64 / dim as f64))
        .collect();
    Ok(DMatrix::from_fn(dim, dim, |j, k| roots[(j * k) % dim]))
}

/// Run the transform circuit of the given direction over the whole register.
pub fn apply_fourier(state: &StateVector, direction: Direction) -> Result<StateVector> {
    let circuit = build_fourier_on(0, state.n_qubits(), direction)?;
    state.apply_circuit(&circuit.ops)
}
