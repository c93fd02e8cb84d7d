//! Property suites over the public API.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use qfilter::classical::dft_real;
use qfilter::encoding::EncodingMode;
use qfilter::filter::FilterSpec;
use qfilter::io::{self, Image, PnmFormat};
use qfilter::pipeline::{filter_series, to_pixels, transpose_general, Mode};
use qfilter::qft::{apply_fourier, Direction};
use qfilter::statevec::StateVector;
use qfilter::transpose::{build_scheme, derive_layout, run_scheme, BasisLayout, SchemeKind};

fn unit_state(parts: &[(f64, f64)]) -> StateVector {
    let norm = parts.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
    StateVector::from_amplitudes(
        parts
            .iter()
            .map(|&(re, im)| Complex64::new(re / norm, im / norm))
            .collect(),
    )
    .unwrap()
}

fn complex_parts(max_qubits: u32) -> impl Strategy<Value = Vec<(f64, f64)>> {
    (1..=max_qubits).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << n)
            .prop_filter("non-zero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
    })
}

fn real_signal(max_qubits: u32) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_qubits).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, 1usize << n).prop_filter("non-zero", |v| v.iter().any(|x| x.abs() > 1e-3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fourier_round_trip_and_parseval(parts in complex_parts(10)) {
        let s = unit_state(&parts);
        for direction in [Direction::Forward, Direction::Inverse] {
            let t = apply_fourier(&s, direction).unwrap();
            prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
            let back = apply_fourier(&t, direction.reversed()).unwrap();
            let worst = back.amplitudes().iter().zip(s.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(worst < 1e-10);
        }
    }

    #[test]
    fn inverse_transform_is_scaled_dft(signal in real_signal(10)) {
        let norm = signal.iter().map(|v| v * v).sum::<f64>().sqrt();
        let unit: Vec<f64> = signal.iter().map(|v| v / norm).collect();
        let quantum = apply_fourier(&StateVector::from_real(&unit).unwrap(), Direction::Inverse).unwrap();
        let classical = dft_real(&unit).unwrap();
        let scale = 1.0 / (unit.len() as f64).sqrt();
        let dim = unit.len();
        for (k, (q, c)) in quantum.amplitudes().iter().zip(&classical.bins).enumerate() {
            prop_assert!((q - c * scale).norm() < 1e-10);
            if k > 0 {
                prop_assert!((q - quantum.amplitudes()[dim - k].conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn schemes_are_involutions_and_sound(kind in 0usize..3, half in 1usize..=4, parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 256)) {
        let kind = [SchemeKind::Cnot, SchemeKind::Cswap, SchemeKind::RowMajor][kind];
        let n = 2 * half;
        let scheme = build_scheme(kind, n).unwrap();
        let layout = match kind {
            SchemeKind::RowMajor => BasisLayout::row_major(n).unwrap(),
            _ => derive_layout(&scheme).unwrap(),
        };
        let state = unit_state(&parts[..1 << n]);
        let once = run_scheme(&state, &scheme).unwrap();
        let twice = run_scheme(&once, &scheme).unwrap();
        prop_assert_eq!(twice.amplitudes(), state.amplitudes());

        // Reading the output through the layout gives the transposed grid exactly.
        let side = layout.side();
        for r in 0..side {
            for c in 0..side {
                prop_assert_eq!(once.amplitudes()[layout.basis_at(r, c)], state.amplitudes()[layout.basis_at(c, r)]);
            }
        }
    }

    #[test]
    fn general_transpose_of_any_shape(rows in 1usize..=9, cols in 1usize..=9, seed in any::<u64>(), kind in 0usize..3) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-5.0f64..5.0));
        prop_assume!(m.iter().any(|v| v.abs() > 1e-3));
        let kind = [SchemeKind::Cnot, SchemeKind::Cswap, SchemeKind::RowMajor][kind];
        let run = transpose_general(&m, kind, None, EncodingMode::Amplitude).unwrap();
        prop_assert_eq!(run.output.shape(), (cols, rows));
        prop_assert!((run.output - m.transpose()).abs().max() < 1e-9);
    }

    #[test]
    fn reported_probability_is_the_kept_mass(signal in real_signal(8), picks in prop::collection::vec(any::<bool>(), 256), keep in any::<bool>()) {
        let dim = signal.len();
        let n = dim.trailing_zeros() as usize;
        let marked: Vec<usize> = (0..dim).filter(|&i| picks[i]).collect();
        let Ok(spec) = FilterSpec::from_indices(n, marked, keep) else { return Ok(()) };
        let spectrum = dft_real(&signal).unwrap();
        let total: f64 = spectrum.bins.iter().map(|b| b.norm_sqr()).sum();
        let kept: f64 = spectrum.bins.iter().enumerate().filter(|(i, _)| spec.is_marked(*i) == keep).map(|(_, b)| b.norm_sqr()).sum();
        prop_assume!(kept / total > 1e-12);
        let run = filter_series(&signal, Some(&spec), &Mode::Project).unwrap();
        prop_assert!((run.success_probability - kept / total).abs() < 1e-10);
    }

    #[test]
    fn pixels_stay_in_range(values in prop::collection::vec(-1e4f64..1e4, 1..200), maxval in 1u16..=u16::MAX, abs in any::<bool>()) {
        let (pixels, clamped) = to_pixels(&values, maxval, abs);
        prop_assert!(pixels.iter().all(|&p| p <= maxval));
        let outside = values.iter().map(|v| if abs { v.abs() } else { *v }).filter(|v| v.round() < 0.0 || v.round() > f64::from(maxval)).count();
        prop_assert_eq!(clamped, outside);
    }

    #[test]
    fn series_files_round_trip(values in prop::collection::vec(-1e12f64..1e12, 1..100)) {
        let text = io::format_series(&values);
        prop_assert_eq!(io::parse_series(&text, "mem").unwrap(), values);
    }

    #[test]
    fn images_round_trip(width in 1usize..12, height in 1usize..12, wide in any::<bool>(), color in any::<bool>(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let maxval = if wide { 1000 } else { 255 };
        let channels = if color { 3 } else { 1 };
        let image = Image {
            width,
            height,
            maxval,
            channels,
            data: (0..width * height * channels).map(|_| rng.random_range(0..=maxval)).collect(),
        };
        let formats: &[PnmFormat] = if color { &[PnmFormat::P6] } else { &[PnmFormat::P2, PnmFormat::P5] };
        for &format in formats {
            let bytes = io::encode_pnm(&image, format).unwrap();
            prop_assert_eq!(&io::parse_pnm(&bytes, "mem").unwrap(), &image);
        }
    }
}
