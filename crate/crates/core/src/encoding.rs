//! Classical data to unit amplitude vectors and back.
//!
//! Two recovery conventions coexist:
//!
//! - **amplitude** mode stores `v / ‖v‖` and recovers `Re(a) · ‖v‖`. Signs survive.
//! - **probability** mode stores `√(v / Σv)` and recovers `|a|² · Σv`. Inputs must be
//!   non-negative; phases are irrelevant.
//!
//! Inputs whose length is not a power of two are zero-padded to the next one (and to at
//! least two amplitudes, the smallest register). Padded slots are never read back.
//!
//! Images flatten row-major. RGB images flatten plane by plane: every red value in
//! row-major order, then every green value, then every blue value.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::StateVector;
use crate::transpose::BasisLayout;

/// Strict decoding rejects amplitude-mode values whose imaginary part exceeds this.
pub const STRICT_IMAGINARY_LIMIT: f64 = 1e-6;

/// Largest vector [`synthesize_preparation_unitary`] will complete densely.
pub const MAX_SYNTHESIS_LEN: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingMode {
    Amplitude,
    Probability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Series { len: usize },
    Image { rows: usize, cols: usize },
    Rgb { rows: usize, cols: usize },
}

impl Shape {
    pub fn element_count(&self) -> usize {
        match *self {
            Shape::Series { len } => len,
            Shape::Image { rows, cols } => rows * cols,
            Shape::Rgb { rows, cols } => rows * cols * 3,
        }
    }
}

/// How values map onto basis states.
#[derive(Debug, Clone, PartialEq)]
pub enum Placement {
    /// Value `k` of the flattened data sits on basis state `k`.
    Flat,
    /// Matrix cell `(i, j)` sits on basis state `layout[i][j]`.
    Layout(BasisLayout),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodedSignal {
    amplitudes: Vec<Complex64>,
    shape: Shape,
    pad_count: usize,
    mode: EncodingMode,
    normalizer: f64,
    placement: Placement,
}

impl EncodedSignal {
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn pad_count(&self) -> usize {
        self.pad_count
    }

    pub fn mode(&self) -> EncodingMode {
        self.mode
    }

    /// `‖v‖` in amplitude mode, `Σv` in probability mode.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn state(&self) -> Result<StateVector> {
        StateVector::from_amplitudes(self.amplitudes.clone())
    }
}

fn register_len(count: usize) -> usize {
    count.next_power_of_two().max(2)
}

/// Normalize `values` under `mode`, returning the normalized magnitudes and the normalizer.
fn normalize(values: &[f64], mode: EncodingMode) -> Result<(Vec<f64>, f64)> {
    match mode {
        EncodingMode::Amplitude => {
            let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::DegenerateInput);
            }
            Ok((values.iter().map(|v| v / norm).collect(), norm))
        }
        EncodingMode::Probability => {
            if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| **v < 0.0) {
                return Err(Error::NegativeValue { index, value });
            }
            let total: f64 = values.iter().sum();
            if total == 0.0 || !total.is_finite() {
                return Err(Error::DegenerateInput);
            }
            Ok((values.iter().map(|v| (v / total).sqrt()).collect(), total))
        }
    }
}

/// Encode already-flattened `values` (see [`flatten_matrix`] and [`flatten_rgb`]) that
/// originally had `shape`.
pub fn encode(values: &[f64], shape: Shape, mode: EncodingMode) -> Result<EncodedSignal> {
    if values.len() != shape.element_count() {
        return Err(Error::LengthMismatch {
            expected: shape.element_count(),
            found: values.len(),
        });
    }
    if values.is_empty() {
        return Err(Error::DegenerateInput);
    }
    let (normalized, normalizer) = normalize(values, mode)?;
    let len = register_len(values.len());
    let mut amplitudes: Vec<Complex64> = normalized.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    amplitudes.resize(len, Complex64::new(0.0, 0.0));
    Ok(EncodedSignal {
        amplitudes,
        shape,
        pad_count: len - values.len(),
        mode,
        normalizer,
        placement: Placement::Flat,
    })
}

pub fn encode_amplitude(values: &[f64]) -> Result<EncodedSignal> {
    encode(values, Shape::Series { len: values.len() }, EncodingMode::Amplitude)
}

pub fn encode_probability(values: &[f64]) -> Result<EncodedSignal> {
    encode(values, Shape::Series { len: values.len() }, EncodingMode::Probability)
}

/// Place matrix cell `(i, j)` on basis state `layout[i][j]`.
pub fn layout_encode(matrix: &DMatrix<f64>, layout: &BasisLayout, mode: EncodingMode) -> Result<EncodedSignal> {
    let side = layout.side();
    if matrix.shape() != (side, side) {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}×{}, layout is {side}×{side}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let flat = flatten_matrix(matrix);
    let (normalized, normalizer) = normalize(&flat, mode)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); side * side];
    for r in 0..side {
        for c in 0..side {
            amplitudes[layout.basis_at(r, c)] = Complex64::new(normalized[r * side + c], 0.0);
        }
    }
    Ok(EncodedSignal {
        amplitudes,
        shape: Shape::Image { rows: side, cols: side },
        pad_count: 0,
        mode,
        normalizer,
        placement: Placement::Layout(layout.clone()),
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Fail when an amplitude-mode value carries an imaginary part above
    /// [`STRICT_IMAGINARY_LIMIT`].
    pub strict: bool,
    /// Remove a global phase before taking real parts (amplitude mode). The phase is
    /// fixed up to sign by making `Σ a²` real and positive; the sign is then chosen so
    /// the largest-magnitude value is positive.
    pub align_phase: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub shape: Shape,
    /// Row-major for images; interleaved `r, g, b` per pixel for RGB.
    pub values: Vec<f64>,
    /// Largest `|Im a|` among the amplitudes that were read (amplitude mode).
    pub max_imaginary: f64,
}

impl Decoded {
    pub fn to_matrix(&self) -> Option<DMatrix<f64>> {
        match self.shape {
            Shape::Image { rows, cols } => Some(DMatrix::from_row_slice(rows, cols, &self.values)),
            Shape::Series { .. } | Shape::Rgb { .. } => None,
        }
    }
}

pub fn decode(signal: &EncodedSignal, amplitudes: &[Complex64]) -> Result<Decoded> {
    decode_with(signal, amplitudes, DecodeOptions::default())
}

pub fn decode_with(signal: &EncodedSignal, amplitudes: &[Complex64], options: DecodeOptions) -> Result<Decoded> {
    if amplitudes.len() != signal.amplitudes.len() {
        return Err(Error::LengthMismatch {
            expected: signal.amplitudes.len(),
            found: amplitudes.len(),
        });
    }
    let count = signal.shape.element_count();
    let read: Vec<Complex64> = match &signal.placement {
        Placement::Flat => amplitudes[..count].to_vec(),
        Placement::Layout(layout) => {
            let side = layout.side();
            (0..side * side)
                .map(|cell| amplitudes[layout.basis_at(cell / side, cell % side)])
                .collect()
        }
    };
    let (values, max_imaginary): (Vec<f64>, f64) = match signal.mode {
        EncodingMode::Probability => (read.iter().map(|a| a.norm_sqr() * signal.normalizer).collect(), 0.0),
        EncodingMode::Amplitude => {
            let read = if options.align_phase {
                align_global_phase(read)
            } else {
                read
            };
            let mut max_imaginary = 0.0f64;
            for (index, a) in read.iter().enumerate() {
                if options.strict && a.im.abs() > STRICT_IMAGINARY_LIMIT {
                    return Err(Error::ImaginaryResidual {
                        index,
                        magnitude: a.im.abs(),
                    });
                }
                max_imaginary = max_imaginary.max(a.im.abs());
            }
            (read.iter().map(|a| a.re * signal.normalizer).collect(), max_imaginary)
        }
    };
    let values = match signal.shape {
        Shape::Rgb { rows, cols } => unflatten_rgb(&values, rows, cols),
        _ => values,
    };
    Ok(Decoded {
        shape: signal.shape,
        values,
        max_imaginary,
    })
}

fn align_global_phase(mut amps: Vec<Complex64>) -> Vec<Complex64> {
    let square_sum: Complex64 = amps.iter().map(|a| a * a).sum();
    if square_sum.norm() == 0.0 {
        return amps;
    }
    let mut rotation = Complex64::from_polar(1.0, -square_sum.arg() / 2.0);
    let largest = amps
        .iter()
        .map(|a| a * rotation)
        .max_by(|x, y| x.re.abs().total_cmp(&y.re.abs()));
    if largest.is_some_and(|a| a.re < 0.0) {
        rotation = -rotation;
    }
    amps.iter_mut().for_each(|a| *a *= rotation);
    amps
}

/// Row-major flattening.
pub fn flatten_matrix(matrix: &DMatrix<f64>) -> Vec<f64> {
    matrix
        .row_iter()
        .flat_map(|r| r.iter().copied().collect::<Vec<_>>())
        .collect()
}

pub fn unflatten_matrix(values: &[f64], rows: usize, cols: usize) -> Result<DMatrix<f64>> {
    if values.len() != rows * cols {
        return Err(Error::LengthMismatch {
            expected: rows * cols,
            found: values.len(),
        });
    }
    Ok(DMatrix::from_row_slice(rows, cols, values))
}

/// Interleaved `r, g, b` pixels to plane-major order.
pub fn flatten_rgb(interleaved: &[f64], rows: usize, cols: usize) -> Result<Vec<f64>> {
    let pixels = rows * cols;
    if interleaved.len() != pixels * 3 {
        return Err(Error::LengthMismatch {
            expected: pixels * 3,
            found: interleaved.len(),
        });
    }
    Ok((0..3)
        .flat_map(|ch| (0..pixels).map(move |p| interleaved[p * 3 + ch]))
        .collect())
}

/// Inverse of [`flatten_rgb`].
pub fn unflatten_rgb(planes: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let pixels = rows * cols;
    (0..pixels)
        .flat_map(|p| (0..3).map(move |ch| planes[ch * pixels + p]))
        .collect()
}

/// A unitary whose first column is `target`.
///
/// Built as a phase times a Householder reflection, so the remaining columns are one
/// particular orthonormal completion; only the first column is meaningful.
pub fn synthesize_preparation_unitary(target: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let dim = target.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    if dim > MAX_SYNTHESIS_LEN {
        return Err(Error::DenseCap {
            n: dim.trailing_zeros() as usize,
            max: MAX_SYNTHESIS_LEN.trailing_zeros() as usize,
        });
    }
    let norm_sqr: f64 = target.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > crate::statevec::INPUT_NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr });
    }
    // Rotate so the first entry is real and non-negative, reflect e₀ onto it, rotate back.
    let phase = if target[0].norm() > 0.0 {
        Complex64::from_polar(1.0, target[0].arg())
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut v: Vec<Complex64> = target.iter().map(|a| -(a / phase)).collect();
    v[0] += 1.0;
    let v_norm_sqr: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    let mut s = DMatrix::<Complex64>::identity(dim, dim);
    if v_norm_sqr > 0.0 {
        let k = 2.0 / v_norm_sqr;
        for c in 0..dim {
            let vc = v[c].conj() * k;
            for r in 0..dim {
                s[(r, c)] -= v[r] * vc;
            }
        }
    }
    Ok(s * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{matrix_max_diff, random_amplitudes};
    use proptest::prelude::{prop, prop_assert, proptest, ProptestConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn re(values: &[Complex64]) -> Vec<f64> {
        values.iter().map(|a| a.re).collect()
    }

    #[test]
    fn amplitude_encoding() {
        let mut v = vec![0.0; 16];
        v[5..9].fill(1.0);
        let s = encode_amplitude(&v).unwrap();
        assert_eq!(s.normalizer(), 2.0);
        assert_eq!(re(s.amplitudes()).iter().filter(|&&a| a == 0.5).count(), 4);
        assert_eq!(s.n_qubits(), 4);

        let s = encode_amplitude(&[3.0, 4.0]).unwrap();
        assert_eq!(re(s.amplitudes()), vec![0.6, 0.8]);
        assert_eq!(s.normalizer(), 5.0);
        assert_eq!(decode(&s, s.amplitudes()).unwrap().values, vec![3.0, 4.0]);

        assert!(matches!(encode_amplitude(&[0.0, 0.0]), Err(Error::DegenerateInput)));
        assert!(matches!(encode_amplitude(&[]), Err(Error::DegenerateInput)));
    }

    #[test]
    fn probability_encoding() {
        let v: Vec<f64> = (0..16).map(f64::from).collect();
        let s = encode_probability(&v).unwrap();
        assert_eq!(s.normalizer(), 120.0);
        let a = re(s.amplitudes());
        for (got, want) in a.iter().zip([0.0, 0.091, 0.129, 0.158]) {
            assert!((got - want).abs() < 5e-4);
        }
        let s = encode_probability(&[1.0]).unwrap();
        assert_eq!(re(s.amplitudes()), vec![1.0, 0.0]);
        assert_eq!(s.pad_count(), 1);
        assert_eq!(s.normalizer(), 1.0);
        let s = encode_probability(&[2.0, 2.0]).unwrap();
        assert!((s.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.normalizer(), 4.0);
        assert!(matches!(
            encode_probability(&[1.0, -1.0]),
            Err(Error::NegativeValue { index: 1, .. })
        ));
        assert!(matches!(encode_probability(&[0.0; 3]), Err(Error::DegenerateInput)));
    }

    #[test]
    fn decode_checks_length_and_strictness() {
        let s = encode_amplitude(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.pad_count(), 1);
        assert!(matches!(
            decode(&s, &[Complex64::new(1.0, 0.0)]),
            Err(Error::LengthMismatch { .. })
        ));
        let mut amps = s.amplitudes().to_vec();
        amps[1].im = 1e-3;
        let lax = decode(&s, &amps).unwrap();
        assert!((lax.max_imaginary - 1e-3).abs() < 1e-15);
        let strict = DecodeOptions {
            strict: true,
            ..Default::default()
        };
        assert!(matches!(
            decode_with(&s, &amps, strict),
            Err(Error::ImaginaryResidual { index: 1, .. })
        ));
        // padded slot is never read
        amps[1].im = 0.0;
        amps[3] = Complex64::new(0.0, 5.0);
        assert!(decode_with(&s, &amps, strict).is_ok());
    }

    #[test]
    fn flattening() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(flatten_matrix(&m), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(unflatten_matrix(&[1.0, 2.0, 3.0, 4.0], 2, 2).unwrap(), m);
        assert_eq!(flatten_matrix(&DMatrix::from_element(1, 1, 7.0)), vec![7.0]);

        let interleaved: Vec<f64> = (0..64 * 64 * 3).map(|i| (i % 251) as f64).collect();
        let planes = flatten_rgb(&interleaved, 64, 64).unwrap();
        assert_eq!(planes.len(), 12288);
        assert_eq!(planes[1], interleaved[3]);
        assert_eq!(planes[4096], interleaved[1]);
        assert_eq!(unflatten_rgb(&planes, 64, 64), interleaved);
        let s = encode(&planes, Shape::Rgb { rows: 64, cols: 64 }, EncodingMode::Amplitude).unwrap();
        assert_eq!(s.n_qubits(), 14);
        assert_eq!(s.pad_count(), 4096);
        let back = decode(&s, s.amplitudes()).unwrap();
        for (a, b) in back.values.iter().zip(&interleaved) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn layout_encoding() {
        let m = DMatrix::from_row_iterator(4, 4, (0..16).map(f64::from));
        let row_major = BasisLayout::row_major(4).unwrap();
        let a = layout_encode(&m, &row_major, EncodingMode::Probability).unwrap();
        let b = encode(
            &flatten_matrix(&m),
            Shape::Image { rows: 4, cols: 4 },
            EncodingMode::Probability,
        )
        .unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert!(layout_encode(&DMatrix::zeros(2, 2), &row_major, EncodingMode::Amplitude).is_err());
    }

    #[test]
    fn preparation_unitary_cases() {
        let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let s = synthesize_preparation_unitary(&zero).unwrap();
        assert!(matrix_max_diff(&s, &DMatrix::identity(2, 2)) < 1e-15);

        let r = 0.5f64.sqrt();
        let plus = [Complex64::new(r, 0.0), Complex64::new(r, 0.0)];
        let s = synthesize_preparation_unitary(&plus).unwrap();
        assert!(matrix_max_diff(&(s.adjoint() * &s), &DMatrix::identity(2, 2)) < 1e-12);
        assert!((s[(0, 0)] - plus[0]).norm() < 1e-15 && (s[(1, 0)] - plus[1]).norm() < 1e-15);

        // first entry zero and complex phases
        let odd = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)];
        let s = synthesize_preparation_unitary(&odd).unwrap();
        assert!((s[(1, 0)] - odd[1]).norm() < 1e-15);

        assert!(matches!(
            synthesize_preparation_unitary(&[Complex64::new(0.5, 0.0); 2]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(synthesize_preparation_unitary(&[Complex64::new(1.0, 0.0); 1]).is_err());
    }

    #[test]
    fn preparation_unitary_random_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let n = rng.random_range(1..=6);
            let t = random_amplitudes(n, &mut rng);
            let s = synthesize_preparation_unitary(&t).unwrap();
            let dim = t.len();
            assert!(matrix_max_diff(&(s.adjoint() * &s), &DMatrix::identity(dim, dim)) < 1e-10);
            for (k, a) in t.iter().enumerate() {
                assert!((s[(k, 0)] - a).norm() < 1e-10);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn amplitude_round_trip(values in prop::collection::vec(-1e3f64..1e3, 1..1000)) {
            prop_assume_nonzero(&values)?;
            let s = encode_amplitude(&values).unwrap();
            prop_assert!(s.amplitudes()[values.len()..].iter().all(|a| *a == Complex64::new(0.0, 0.0)));
            let back = decode(&s, s.amplitudes()).unwrap().values;
            prop_assert!(back.iter().zip(&values).all(|(a, b)| (a - b).abs() < 1e-9));
        }

        #[test]
        fn probability_round_trip(values in prop::collection::vec(0f64..1e3, 1..1000)) {
            prop_assume_nonzero(&values)?;
            let s = encode_probability(&values).unwrap();
            let back = decode(&s, s.amplitudes()).unwrap().values;
            prop_assert!(back.iter().zip(&values).all(|(a, b)| (a - b).abs() < 1e-9));
        }

        #[test]
        fn global_phase_immunity(values in prop::collection::vec(-10f64..10.0, 2..64), phi in -std::f64::consts::PI..std::f64::consts::PI) {
            prop_assume_nonzero(&values)?;
            let rotation = Complex64::from_polar(1.0, phi);
            for mode in [EncodingMode::Amplitude, EncodingMode::Probability] {
                let values: Vec<f64> = if mode == EncodingMode::Probability {
                    values.iter().map(|v| v.abs()).collect()
                } else {
                    values.clone()
                };
                let s = encode(&values, Shape::Series { len: values.len() }, mode).unwrap();
                let rotated: Vec<Complex64> = s.amplitudes().iter().map(|a| a * rotation).collect();
                let opts = DecodeOptions { strict: false, align_phase: true };
                let plain = decode_with(&s, s.amplitudes(), opts).unwrap().values;
                let turned = decode_with(&s, &rotated, opts).unwrap().values;
                prop_assert!(plain.iter().zip(&turned).all(|(a, b)| (a - b).abs() < 1e-9));
                if mode == EncodingMode::Probability {
                    let raw = decode(&s, &rotated).unwrap().values;
                    prop_assert!(raw.iter().zip(&values).all(|(a, b)| (a - b).abs() < 1e-9));
                }
            }
        }
    }

    fn prop_assume_nonzero(values: &[f64]) -> Result<(), proptest::test_runner::TestCaseError> {
        if values.iter().all(|v| *v == 0.0) {
            return Err(proptest::test_runner::TestCaseError::reject("all zero"));
        }
        Ok(())
    }
}
