//! Dense state vectors and their gate and measurement semantics.
//!
//! Basis index bit `q` is the value of qubit `q`, so qubit 0 is the least significant bit.
//! A 4-qubit basis state written `|q3 q2 q1 q0⟩` has index `8·q3 + 4·q2 + 2·q1 + q0`.

mod gate;
mod kernel;

pub use gate::{Control, GateKind, GateOp};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Default upper bound on register width.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Tolerance on the squared norm of caller-supplied amplitudes.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-9;

/// Largest register [`circuit_unitary`] will expand into a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::new_with_cap(n_qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn new_with_cap(n_qubits: usize, max_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > max_qubits {
            return Err(Error::Capacity {
                requested: n_qubits,
                max: max_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::new(n_qubits)?;
        if index >= s.len() {
            return Err(Error::LengthMismatch {
                expected: s.len(),
                found: index + 1,
            });
        }
        s.amplitudes[0] = Complex64::new(0.0, 0.0);
        s.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wrap caller-supplied amplitudes. The length must be a power of two (at least 2) and
    /// the squared norm within [`INPUT_NORM_TOLERANCE`] of one.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n_qubits,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > INPUT_NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::from_amplitudes(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Probability of each basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply_gate(&self, op: &GateOp) -> Result<Self> {
        let mut out = self.clone();
        out.apply_in_place(op)?;
        Ok(out)
    }

    pub fn apply_in_place(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        kernel::apply(&mut self.amplitudes, op);
        debug_assert!((self.norm_sqr() - 1.0).abs() < 1e-8);
        Ok(())
    }

    pub fn apply_circuit(&self, ops: &[GateOp]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_circuit_in_place(ops)?;
        Ok(out)
    }

    pub fn apply_circuit_in_place(&mut self, ops: &[GateOp]) -> Result<()> {
        for op in ops {
            op.validate(self.n_qubits)?;
        }
        for op in ops {
            kernel::apply(&mut self.amplitudes, op);
        }
        Ok(())
    }

    /// Probability that measuring `qubit` yields `outcome`.
    pub fn branch_probability(&self, qubit: usize, outcome: bool) -> Result<f64> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let want = if outcome { bit } else { 0 };
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Project `qubit` onto `outcome` and renormalize. Surviving amplitudes keep their
    /// relative phases. Returns the projected state and the branch probability.
    pub fn postselect(&self, qubit: usize, outcome: bool) -> Result<(Self, f64)> {
        let p = self.branch_probability(qubit, outcome)?;
        if p <= 0.0 {
            return Err(Error::ImpossibleOutcome {
                qubit,
                outcome: outcome as u8,
            });
        }
        let bit = 1usize << qubit;
        let want = if outcome { bit } else { 0 };
        let scale = 1.0 / p.sqrt();
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if i & bit == want {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((
            StateVector {
                n_qubits: self.n_qubits,
                amplitudes,
            },
            p,
        ))
    }

    /// Postselect and then remove `qubit` from the register.
    pub fn postselect_and_discard(&self, qubit: usize, outcome: bool) -> Result<(Self, f64)> {
        let (projected, p) = self.postselect(qubit, outcome)?;
        if self.n_qubits == 1 {
            return Err(Error::Capacity {
                requested: 0,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        Ok((projected.discard_qubit(qubit, outcome), p))
    }

    /// Keep the half of the amplitudes whose bit `qubit` equals `value`, dropping the qubit.
    /// Callers guarantee the other half is zero.
    fn discard_qubit(&self, qubit: usize, value: bool) -> Self {
        let low = (1usize << qubit) - 1;
        let half = self.len() / 2;
        let amplitudes = (0..half)
            .map(|k| {
                let i = ((k & !low) << 1) | (k & low) | ((value as usize) << qubit);
                self.amplitudes[i]
            })
            .collect();
        StateVector {
            n_qubits: self.n_qubits - 1,
            amplitudes,
        }
    }

    /// Append `count` fresh qubits in `|0⟩` above the existing ones.
    pub fn with_ancillas(&self, count: usize) -> Result<Self> {
        let n_qubits = self.n_qubits + count;
        if n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n_qubits,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(1 << n_qubits, Complex64::new(0.0, 0.0));
        Ok(StateVector { n_qubits, amplitudes })
    }

    /// Remove qubits at and above `keep`, which must all be in `|0⟩` or all in a single
    /// definite basis configuration `value`.
    pub fn release_top_qubits(&self, keep: usize, value: usize) -> Result<Self> {
        if keep == 0 || keep > self.n_qubits {
            return Err(Error::Capacity {
                requested: keep,
                max: self.n_qubits,
            });
        }
        let size = 1usize << keep;
        let start = value * size;
        if start + size > self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: start + size,
            });
        }
        let amplitudes = self.amplitudes[start..start + size].to_vec();
        let norm_sqr = norm_sqr(&amplitudes);
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(StateVector {
            n_qubits: keep,
            amplitudes,
        })
    }

    /// Measure `qubit`, drawing the outcome from `rng`, and collapse the state.
    pub fn sample_measurement<R: Rng + ?Sized>(&self, qubit: usize, rng: &mut R) -> Result<(bool, Self)> {
        let p_one = self.branch_probability(qubit, true)?;
        let outcome = rng.random::<f64>() < p_one;
        let (collapsed, _) = self.postselect(qubit, outcome)?;
        Ok((outcome, collapsed))
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }
}

pub(crate) fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

/// Dense unitary of `ops` on `n_qubits`, built one basis column at a time.
pub fn circuit_unitary(n_qubits: usize, ops: &[GateOp]) -> Result<DMatrix<Complex64>> {
    if n_qubits > MAX_DENSE_QUBITS {
        return Err(Error::DenseCap {
            n: n_qubits,
            max: MAX_DENSE_QUBITS,
        });
    }
    let dim = 1usize << n_qubits;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let out = StateVector::basis(n_qubits, col)?.apply_circuit(ops)?;
        u.set_column(col, &nalgebra::DVector::from_column_slice(out.amplitudes()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert, proptest, ProptestConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = norm_sqr(&amps).sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn new_state_is_all_zero_basis() {
        assert_eq!(StateVector::new(1).unwrap().amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::new(4).unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        assert!(s.amplitudes()[1..].iter().all(|a| *a == c(0.0, 0.0)));
        assert!(matches!(StateVector::new(0), Err(Error::Capacity { .. })));
        assert!(matches!(StateVector::new(25), Err(Error::Capacity { .. })));
        assert!(StateVector::new_with_cap(5, 4).is_err());
    }

    #[test]
    fn set_amplitudes_validates() {
        let mut v = vec![0.0; 16];
        v[5..9].iter_mut().for_each(|x| *x = 0.5);
        assert_eq!(StateVector::from_real(&v).unwrap().n_qubits(), 4);
        assert_eq!(
            StateVector::from_real(&[1.0, 0.0]).unwrap(),
            StateVector::new(1).unwrap()
        );
        assert!(matches!(
            StateVector::from_real(&[0.5, 0.5, 0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::from_real(&[0.6, 0.8, 0.0]),
            Err(Error::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::new(1).unwrap().apply_gate(&GateOp::h(0)).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((s.amplitudes()[0] - c(r, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cnot_and_swap_permute_basis_states() {
        let s = StateVector::basis(4, 0b0001).unwrap();
        assert_eq!(
            s.apply_gate(&GateOp::cx(0, 1)).unwrap(),
            StateVector::basis(4, 0b0011).unwrap()
        );
        assert_eq!(
            s.apply_gate(&GateOp::swap(0, 1)).unwrap(),
            StateVector::basis(4, 0b0010).unwrap()
        );
    }

    #[test]
    fn invalid_ops_are_rejected() {
        let s = StateVector::new(2).unwrap();
        assert!(matches!(
            s.apply_gate(&GateOp::x(2)),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(s.apply_gate(&GateOp::cx(1, 1)), Err(Error::DuplicateQubit(1))));
        assert!(matches!(
            s.apply_gate(&GateOp::swap(0, 0)),
            Err(Error::DuplicateQubit(0))
        ));
    }

    #[test]
    fn circuits_fold_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_state(3, &mut rng);
        assert_eq!(s.apply_circuit(&[]).unwrap(), s);
        let hh = s.apply_circuit(&[GateOp::h(0), GateOp::h(0)]).unwrap();
        assert!(max_diff(&hh, &s) < 1e-10);
    }

    #[test]
    fn branch_probabilities() {
        let zero = StateVector::new(3).unwrap();
        for q in 0..3 {
            assert_eq!(zero.branch_probability(q, false).unwrap(), 1.0);
        }
        let uniform = StateVector::from_real(&[0.5; 4]).unwrap();
        for q in 0..2 {
            assert!((uniform.branch_probability(q, true).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!(zero.branch_probability(3, true).is_err());
    }

    #[test]
    fn postselect_definite_and_impossible() {
        let s = StateVector::basis(2, 0b10).unwrap();
        let (out, p) = s.postselect(1, true).unwrap();
        assert_eq!(out, s);
        assert_eq!(p, 1.0);
        assert!(matches!(
            StateVector::new(1).unwrap().postselect(0, true),
            Err(Error::ImpossibleOutcome { qubit: 0, outcome: 1 })
        ));
    }

    #[test]
    fn postselect_and_discard_drops_the_measured_qubit() {
        // (|00⟩ + |01⟩ + |10⟩ + |11⟩)/2, keep qubit 1 = 1 → (|0⟩ + |1⟩)/√2 on qubit 0
        let s = StateVector::from_real(&[0.5; 4]).unwrap();
        let (out, p) = s.postselect_and_discard(1, true).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        assert_eq!(out.n_qubits(), 1);
        let r = 1.0 / 2f64.sqrt();
        assert!((out.amplitudes()[0].re - r).abs() < 1e-15);
        // discard qubit 0 with value 1 from |01⟩ + |11⟩
        let s = StateVector::from_real(&[0.0, 0.6, 0.0, 0.8]).unwrap();
        let (out, _) = s.postselect_and_discard(0, true).unwrap();
        assert_eq!(out.amplitudes(), &[c(0.6, 0.0), c(0.8, 0.0)]);
    }

    #[test]
    fn sampling_definite_and_seeded() {
        let one = StateVector::basis(2, 0b01).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(one.sample_measurement(0, &mut rng).unwrap().0);
        }
        let plus = StateVector::new(1).unwrap().apply_gate(&GateOp::h(0)).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..64)
                .map(|_| plus.sample_measurement(0, &mut rng).unwrap().0)
                .collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9), run(10));
    }

    #[test]
    fn zero_polarity_control_is_x_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_state(4, &mut rng);
            let theta = rng.random::<f64>() * 2.0 * PI;
            let native = s
                .apply_gate(&GateOp::phase(2, theta).with_controls([Control::zero(0), Control::one(3)]))
                .unwrap();
            let sandwich = s
                .apply_circuit(&[
                    GateOp::x(0),
                    GateOp::phase(2, theta).with_controls([Control::one(0), Control::one(3)]),
                    GateOp::x(0),
                ])
                .unwrap();
            assert!(max_diff(&native, &sandwich) < 1e-15);
        }
    }

    #[test]
    fn partitioning_is_bitwise_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = random_state(10, &mut rng);
        let ops = [
            GateOp::h(0),
            GateOp::u3(7, 0.3, 1.1, -0.4).controlled_by(Control::zero(2)),
            GateOp::swap(9, 1).controlled_by(Control::one(4)),
            GateOp::cphase(8, 3, 0.77),
            GateOp::mcx([Control::one(0), Control::zero(5), Control::one(6)], 9),
        ];
        for op in &ops {
            let mut reference = s.amplitudes().to_vec();
            let whole = reference.len();
            kernel::apply_partitioned(&mut reference, op, whole);
            for chunk in [2, 16, 128, 512] {
                let mut other = s.amplitudes().to_vec();
                kernel::apply_partitioned(&mut other, op, chunk);
                assert!(
                    reference
                        .iter()
                        .zip(&other)
                        .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()),
                    "{op:?} chunk {chunk}"
                );
            }
        }
    }

    #[test]
    fn large_states_take_the_parallel_path() {
        let n = 15;
        let mut s = StateVector::new(n).unwrap();
        for q in 0..n {
            s.apply_in_place(&GateOp::h(q)).unwrap();
        }
        let expect = (1.0 / (1u64 << n) as f64).sqrt();
        assert!(s.amplitudes().iter().all(|a| (a.re - expect).abs() < 1e-12));
    }

    #[test]
    fn circuit_unitary_of_cnot() {
        let u = circuit_unitary(2, &[GateOp::cx(0, 1)]).unwrap();
        // |01⟩ ↔ |11⟩
        assert_eq!(u[(3, 1)], c(1.0, 0.0));
        assert_eq!(u[(1, 3)], c(1.0, 0.0));
        assert_eq!(u[(0, 0)], c(1.0, 0.0));
        assert_eq!(u[(2, 2)], c(1.0, 0.0));
        assert!(circuit_unitary(13, &[]).is_err());
    }

    fn random_op(n: usize, rng: &mut ChaCha8Rng) -> GateOp {
        let mut qs: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            qs.swap(i, rng.random_range(0..=i));
        }
        let angle = |rng: &mut ChaCha8Rng| rng.random_range(-PI..PI);
        let kind = match rng.random_range(0..5) {
            0 => GateKind::Hadamard,
            1 => GateKind::PauliX,
            2 => GateKind::PhaseShift(angle(rng)),
            3 => GateKind::U3 {
                theta: angle(rng),
                phi: angle(rng),
                lambda: angle(rng),
            },
            _ => GateKind::Swap(qs[1]),
        };
        let controls: Vec<Control> = (0..rng.random_range(0..=n.min(4) - 2))
            .map(|i| Control {
                qubit: qs[2 + i],
                on_one: rng.random(),
            })
            .collect();
        GateOp::new(kind, qs[0]).with_controls(controls)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn gates_preserve_norm_and_invert(n in 2usize..=10, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_state(n, &mut rng);
            let op = random_op(n, &mut rng);
            let after = s.apply_gate(&op).unwrap();
            prop_assert!((after.norm_sqr() - 1.0).abs() < 1e-10);
            let back = after.apply_gate(&op.inverse()).unwrap();
            prop_assert!(max_diff(&back, &s) < 1e-10);
        }

        #[test]
        fn branch_probabilities_sum_to_one(n in 1usize..=8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_state(n, &mut rng);
            let q = rng.random_range(0..n);
            let (_, p0) = s.postselect(q, false).unwrap();
            let (kept, p1) = s.postselect(q, true).unwrap();
            prop_assert!((p0 + p1 - 1.0).abs() < 1e-10);
            prop_assert!((kept.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
}
