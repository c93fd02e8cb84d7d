use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Gate kinds understood by the simulator.
///
/// `Swap` carries the partner qubit; the op's `target` is the other half of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    Hadamard,
    PauliX,
    /// `diag(1, e^{iθ})`.
    PhaseShift(f64),
    /// Qiskit's `U3(θ, φ, λ)`.
    U3 {
        theta: f64,
        phi: f64,
        lambda: f64,
    },
    Swap(usize),
}

/// A control qubit together with the value it must hold for the gate to fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub on_one: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Control { qubit, on_one: true }
    }

    pub fn zero(qubit: usize) -> Self {
        Control { qubit, on_one: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl GateOp {
    pub fn new(kind: GateKind, target: usize) -> Self {
        GateOp {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn h(target: usize) -> Self {
        Self::new(GateKind::Hadamard, target)
    }

    pub fn x(target: usize) -> Self {
        Self::new(GateKind::PauliX, target)
    }

    pub fn phase(target: usize, theta: f64) -> Self {
        Self::new(GateKind::PhaseShift(theta), target)
    }

    pub fn u3(target: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Self::new(GateKind::U3 { theta, phi, lambda }, target)
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap(b), a)
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::x(target).controlled_by(Control::one(control))
    }

    pub fn cphase(control: usize, target: usize, theta: f64) -> Self {
        Self::phase(target, theta).controlled_by(Control::one(control))
    }

    /// Multi-controlled X with arbitrary control polarities.
    pub fn mcx(controls: impl IntoIterator<Item = Control>, target: usize) -> Self {
        Self::x(target).with_controls(controls)
    }

    pub fn controlled_by(mut self, control: Control) -> Self {
        self.controls.push(control);
        self
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    /// Every qubit the op touches: target(s) first, then controls.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        let partner = match self.kind {
            GateKind::Swap(b) => Some(b),
            _ => None,
        };
        std::iter::once(self.target)
            .chain(partner)
            .chain(self.controls.iter().map(|c| c.qubit))
    }

    /// Number of qubits the gate acts on, controls included.
    pub fn arity(&self) -> usize {
        self.qubits().count()
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::PhaseShift(theta) => GateKind::PhaseShift(-theta),
            GateKind::U3 { theta, phi, lambda } => GateKind::U3 {
                theta: -theta,
                phi: -lambda,
                lambda: -phi,
            },
            other => other,
        };
        GateOp {
            kind,
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let mut seen = 0u64;
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
            if seen & (1 << q) != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    /// The 2×2 matrix of a single-target kind, row-major. `None` for `Swap`.
    pub fn matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self.kind {
            GateKind::Hadamard => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                Some([[h, h], [h, -h]])
            }
            GateKind::PauliX => Some([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
            GateKind::PhaseShift(theta) => Some([
                [c(1.0, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), Complex64::from_polar(1.0, theta)],
            ]),
            GateKind::U3 { theta, phi, lambda } => Some(u3_matrix(theta, phi, lambda)),
            GateKind::Swap(_) => None,
        }
    }
}

pub(crate) fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(co, 0.0), -Complex64::from_polar(s, lambda)],
        [Complex64::from_polar(s, phi), Complex64::from_polar(co, phi + lambda)],
    ]
}
