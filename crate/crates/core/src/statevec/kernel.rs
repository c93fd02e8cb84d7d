//! Amplitude update kernels.
//!
//! A gate on target qubits up to `h` only mixes amplitudes inside aligned blocks of
//! `2^(h+1)` indices, so any chunking of the array into power-of-two pieces at least that
//! large can be processed independently. Each amplitude pair is updated by the same
//! arithmetic regardless of the chunking, which keeps results bitwise identical between the
//! sequential and parallel paths.

use num_complex::Complex64;
use rayon::prelude::*;

use super::gate::{GateKind, GateOp};

/// States at least this long are updated in parallel.
pub(crate) const PARALLEL_THRESHOLD: usize = 1 << 14;
const MIN_PARALLEL_CHUNK: usize = 1 << 12;

struct Prepared {
    ctrl_mask: usize,
    ctrl_value: usize,
    action: Action,
}

enum Action {
    Pauli { bit: usize },
    Diagonal { bit: usize, phase: Complex64 },
    Dense { bit: usize, m: [[Complex64; 2]; 2] },
    Swap { a: usize, b: usize },
}

impl Prepared {
    fn new(op: &GateOp) -> Self {
        let (mut ctrl_mask, mut ctrl_value) = (0usize, 0usize);
        for c in &op.controls {
            ctrl_mask |= 1 << c.qubit;
            if c.on_one {
                ctrl_value |= 1 << c.qubit;
            }
        }
        let bit = 1usize << op.target;
        let action = match op.kind {
            GateKind::PauliX => Action::Pauli { bit },
            GateKind::PhaseShift(theta) => Action::Diagonal {
                bit,
                phase: Complex64::from_polar(1.0, theta),
            },
            GateKind::Swap(partner) => Action::Swap {
                a: bit,
                b: 1 << partner,
            },
            GateKind::Hadamard | GateKind::U3 { .. } => Action::Dense {
                bit,
                m: op.matrix().expect("single-target kind"),
            },
        };
        Prepared {
            ctrl_mask,
            ctrl_value,
            action,
        }
    }

    /// Smallest aligned block that contains every pair the gate mixes.
    fn block(&self) -> usize {
        match self.action {
            Action::Pauli { bit } | Action::Diagonal { bit, .. } | Action::Dense { bit, .. } => bit << 1,
            Action::Swap { a, b } => a.max(b) << 1,
        }
    }

    #[inline]
    fn fires(&self, global: usize) -> bool {
        global & self.ctrl_mask == self.ctrl_value
    }

    fn run(&self, chunk: &mut [Complex64], base: usize) {
        match self.action {
            Action::Pauli { bit } => {
                for i in 0..chunk.len() {
                    if i & bit == 0 && self.fires(base + i) {
                        chunk.swap(i, i | bit);
                    }
                }
            }
            Action::Diagonal { bit, phase } => {
                for (i, amp) in chunk.iter_mut().enumerate() {
                    if i & bit != 0 && self.fires(base + i) {
                        *amp *= phase;
                    }
                }
            }
            Action::Dense { bit, m } => {
                for i in 0..chunk.len() {
                    if i & bit == 0 && self.fires(base + i) {
                        let j = i | bit;
                        let (a0, a1) = (chunk[i], chunk[j]);
                        chunk[i] = m[0][0] * a0 + m[0][1] * a1;
                        chunk[j] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
            Action::Swap { a, b } => {
                for i in 0..chunk.len() {
                    if i & a != 0 && i & b == 0 && self.fires(base + i) {
                        chunk.swap(i, i ^ a ^ b);
                    }
                }
            }
        }
    }
}

/// Apply an already validated op, choosing the partition automatically.
pub(crate) fn apply(amps: &mut [Complex64], op: &GateOp) {
    let chunk = if amps.len() >= PARALLEL_THRESHOLD {
        MIN_PARALLEL_CHUNK
    } else {
        amps.len()
    };
    apply_partitioned(amps, op, chunk);
}

/// Apply an op over chunks of `chunk` amplitudes (rounded up to the gate's block size).
/// More than one chunk runs on the rayon pool.
pub(crate) fn apply_partitioned(amps: &mut [Complex64], op: &GateOp, chunk: usize) {
    let prepared = Prepared::new(op);
    let chunk = chunk.max(prepared.block()).min(amps.len());
    debug_assert!(chunk.is_power_of_two());
    if chunk == amps.len() {
        prepared.run(amps, 0);
    } else {
        amps.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(k, c)| prepared.run(c, k * chunk));
    }
}
