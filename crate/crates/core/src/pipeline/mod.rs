//! End-to-end runs: encode, inverse transform, mark and postselect, forward transform,
//! decode.
//!
//! Postselection renormalizes, so the decoded register holds the filtered signal only up
//! to a positive scale. Outputs are rescaled by `normalizer · √p` (amplitude encoding) or
//! `normalizer · p` (probability encoding), where `p` is the success probability. With
//! amplitude encoding the rescaled output equals `idft(mask(dft(x)))` of the zero-padded
//! input, which is what [`FilterRun::classical_error`] checks.

mod config;

pub use config::{FilterChoice, RunConfig, RunReport, REPORT_SCHEMA};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::classical;
use crate::encoding::{self, decode, EncodedSignal, EncodingMode, Shape};
use crate::error::{Error, Result};
use crate::filter::{apply_filter_project, apply_filter_sampled, FilterSpec};
use crate::io::{self, Image, PnmFormat};
use crate::qft::{build_fourier_on, Direction};
use crate::statevec::GateOp;
use crate::transpose::{
    build_rowmajor_scheme, build_scheme, derive_layout, pad_general, qubits_for_side, transpose_matrix, BasisLayout,
    SchemeKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Mode {
    /// Deterministic projection onto the kept branch.
    Project,
    /// Repeat-until-success measurement with a seeded generator.
    Sample { seed: u64, max_trials: usize },
}

/// Result of one filtering run.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterRun {
    /// Rescaled output in the input's shape (interleaved for RGB).
    pub values: Vec<f64>,
    /// Unit-norm data register after the forward transform, padding included.
    pub amplitudes: Vec<Complex64>,
    pub success_probability: f64,
    /// Preparations used in sample mode.
    pub trials_used: Option<usize>,
    pub n_qubits: usize,
    pub normalizer: f64,
    pub pad_count: usize,
    pub max_residual_imaginary: f64,
    pub marked_count: Option<usize>,
    /// Filled in when a classical comparison was requested.
    pub classical_error: Option<f64>,
}

/// Fourier transform over the whole register, or the composed 2-D transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fourier {
    Flat,
    /// Row pass, row-major transpose, row pass, transpose back; `m` qubits per axis.
    Composed {
        m: usize,
    },
}

impl Fourier {
    fn ops(self, n: usize, direction: Direction) -> Result<Vec<GateOp>> {
        match self {
            Fourier::Flat => Ok(build_fourier_on(0, n, direction)?.ops),
            Fourier::Composed { m } => composed_fourier_ops(m, direction),
        }
    }
}

/// 2-D transform on a row-major `2^m × 2^m` register as
/// `T · F_rows · T · F_rows`, where `F_rows` acts on the low `m` qubits (the column index)
/// and `T` is the row-major transpose.
pub fn composed_fourier_ops(m: usize, direction: Direction) -> Result<Vec<GateOp>> {
    let rows = build_fourier_on(0, m, direction)?.ops;
    let transpose = build_rowmajor_scheme(2 * m)?.circuit();
    Ok([&rows[..], &transpose, &rows, &transpose].concat())
}

/// Amplitude-encoded 1-D run.
pub fn filter_series(values: &[f64], spec: Option<&FilterSpec>, mode: &Mode) -> Result<FilterRun> {
    filter_values(
        values,
        Shape::Series { len: values.len() },
        spec,
        mode,
        EncodingMode::Amplitude,
        false,
    )
}

/// Run the pipeline on flattened values (see [`encoding::flatten_rgb`] for color).
pub fn filter_values(
    values: &[f64],
    shape: Shape,
    spec: Option<&FilterSpec>,
    mode: &Mode,
    encoding: EncodingMode,
    compare_classical: bool,
) -> Result<FilterRun> {
    let signal = encoding::encode(values, shape, encoding)?;
    let mut run = run_encoded(&signal, spec, mode, Fourier::Flat)?;
    if compare_classical {
        let reference = classical_reference(&signal, spec, None)?;
        run.classical_error = Some(unit_distance(&run.amplitudes, &reference));
    }
    Ok(run)
}

/// 2-D filtering of a square power-of-two matrix with the composed transform. The spec
/// indexes the 2-D spectrum row-major: bin `(kr, kc)` is basis state `kr·N + kc`.
pub fn filter_matrix_2d(
    matrix: &DMatrix<f64>,
    spec: Option<&FilterSpec>,
    mode: &Mode,
    encoding: EncodingMode,
    compare_classical: bool,
) -> Result<FilterRun> {
    let (rows, cols) = matrix.shape();
    if rows != cols || !rows.is_power_of_two() || rows < 2 {
        return Err(Error::ShapeMismatch(format!(
            "composed 2-D filtering needs a square power-of-two image, got {rows}×{cols}"
        )));
    }
    let m = rows.trailing_zeros() as usize;
    let flat = encoding::flatten_matrix(matrix);
    let signal = encoding::encode(&flat, Shape::Image { rows, cols }, encoding)?;
    let mut run = run_encoded(&signal, spec, mode, Fourier::Composed { m })?;
    if compare_classical {
        let reference = classical_reference(&signal, spec, Some(m))?;
        run.classical_error = Some(unit_distance(&run.amplitudes, &reference));
    }
    Ok(run)
}

fn run_encoded(signal: &EncodedSignal, spec: Option<&FilterSpec>, mode: &Mode, fourier: Fourier) -> Result<FilterRun> {
    let n = signal.n_qubits();
    if let Some(spec) = spec {
        if spec.n != n {
            return Err(Error::ShapeMismatch(format!(
                "filter is for {} qubits, the input needs {n}",
                spec.n
            )));
        }
    }
    let state = signal.state()?;
    let spectrum = state.apply_circuit(&fourier.ops(n, Direction::Inverse)?)?;
    let (filtered, p, trials) = match (spec, mode) {
        (None, Mode::Project) => (spectrum, 1.0, None),
        (None, Mode::Sample { .. }) => (spectrum, 1.0, Some(1)),
        (Some(spec), Mode::Project) => {
            let out = apply_filter_project(&spectrum, spec)?;
            (out.state, out.success_probability, None)
        }
        (Some(spec), Mode::Sample { seed, max_trials }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let out = apply_filter_sampled(&spectrum, spec, &mut rng, *max_trials)?;
            (out.state, out.success_probability, Some(out.trials))
        }
    };
    let output = filtered.apply_circuit(&fourier.ops(n, Direction::Forward)?)?;
    let decoded = decode(signal, output.amplitudes())?;
    let scale = match signal.mode() {
        EncodingMode::Amplitude => p.sqrt(),
        EncodingMode::Probability => p,
    };
    Ok(FilterRun {
        values: decoded.values.iter().map(|v| v * scale).collect(),
        amplitudes: output.into_amplitudes(),
        success_probability: p,
        trials_used: trials,
        n_qubits: n,
        normalizer: signal.normalizer(),
        pad_count: signal.pad_count(),
        max_residual_imaginary: decoded.max_imaginary,
        marked_count: spec.map(FilterSpec::marked_count),
        classical_error: None,
    })
}

/// `idft(mask(dft(a)))` of the encoded amplitudes, computed with the direct classical
/// transform; `m` selects the composed 2-D variant.
fn classical_reference(signal: &EncodedSignal, spec: Option<&FilterSpec>, m: Option<usize>) -> Result<Vec<Complex64>> {
    let a = signal.amplitudes();
    let zeroed = spec.map(FilterSpec::zeroed_indices).unwrap_or_default();
    match m {
        None => classical::idft(&classical::apply_mask(&classical::dft(a)?, &zeroed)?),
        Some(m) => {
            let side = 1usize << m;
            let spectrum = classical_2d(a, side, false)?;
            let masked = classical::apply_mask(&classical::Spectrum { bins: spectrum }, &zeroed)?;
            classical_2d(&masked.bins, side, true)
        }
    }
}

/// Row transforms, transpose, row transforms, transpose back.
fn classical_2d(values: &[Complex64], side: usize, inverse: bool) -> Result<Vec<Complex64>> {
    let pass = |v: &[Complex64]| -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(v.len());
        for row in v.chunks(side) {
            let row = if inverse {
                classical::idft(&classical::Spectrum { bins: row.to_vec() })?
            } else {
                classical::dft(row)?.bins
            };
            out.extend(row);
        }
        Ok(out)
    };
    let transpose =
        |v: &[Complex64]| -> Vec<Complex64> { (0..v.len()).map(|i| v[(i % side) * side + i / side]).collect() };
    Ok(transpose(&pass(&transpose(&pass(values)?))?))
}

/// Max elementwise distance between two vectors after scaling each to unit norm.
fn unit_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let (na, nb) = (norm(a), norm(b));
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / na - y / nb).norm())
        .fold(0.0, f64::max)
}

/// Rounded, clamped pixel values and the number of samples that needed clamping.
pub fn to_pixels(values: &[f64], maxval: u16, take_abs: bool) -> (Vec<u16>, usize) {
    let top = f64::from(maxval);
    let mut clamped = 0;
    let pixels = values
        .iter()
        .map(|&v| {
            let v = if take_abs { v.abs() } else { v };
            let r = v.round();
            if !(0.0..=top).contains(&r) {
                clamped += 1;
            }
            r.clamp(0.0, top) as u16
        })
        .collect();
    (pixels, clamped)
}

pub fn run_filter_1d(config: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let values = io::read_series(&config.input)?;
    if values.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            found: values.len(),
        });
    }
    let n = register_width(values.len());
    let spec = config.filter.resolve(n, false)?;
    let run = filter_values(
        &values,
        Shape::Series { len: values.len() },
        spec.as_ref(),
        &config.mode,
        config.encoding,
        config.compare_classical,
    )?;
    if let Some(out) = &config.output {
        io::write_series(out, &run.values)?;
    }
    Ok(config.report_for("filter1d", &run, spec, None, start))
}

pub fn run_filter_2d(config: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let image = io::read_pnm(&config.input)?;
    let (spec, run) = if config.composed_2d {
        if image.is_color() {
            return Err(Error::Unsupported(
                "composed 2-D filtering handles grayscale images only".into(),
            ));
        }
        let matrix = DMatrix::from_row_iterator(image.height, image.width, image.values());
        let n = register_width(image.pixel_count());
        let spec = config.filter.resolve(n, true)?;
        let run = filter_matrix_2d(
            &matrix,
            spec.as_ref(),
            &config.mode,
            config.encoding,
            config.compare_classical,
        )?;
        (spec, run)
    } else {
        let (values, shape) = if image.is_color() {
            (
                encoding::flatten_rgb(&image.values(), image.height, image.width)?,
                Shape::Rgb {
                    rows: image.height,
                    cols: image.width,
                },
            )
        } else {
            (
                image.values(),
                Shape::Image {
                    rows: image.height,
                    cols: image.width,
                },
            )
        };
        let n = register_width(values.len());
        let spec = config.filter.resolve(n, false)?;
        let run = filter_values(
            &values,
            shape,
            spec.as_ref(),
            &config.mode,
            config.encoding,
            config.compare_classical,
        )?;
        (spec, run)
    };
    let (pixels, clamped) = to_pixels(&run.values, image.maxval, config.abs);
    if let Some(out) = &config.output {
        let result = Image {
            data: pixels,
            ..image.clone()
        };
        let format = if image.is_color() { PnmFormat::P6 } else { PnmFormat::P5 };
        io::write_pnm(out, &result, format)?;
    }
    Ok(config.report_for("filter2d", &run, spec, Some(clamped), start))
}

/// Outcome of a padded transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct TransposeRun {
    /// `cols × rows`, cropped from the padded square.
    pub output: DMatrix<f64>,
    pub n_qubits: usize,
    pub pad_count: usize,
    pub normalizer: f64,
    pub layout: BasisLayout,
}

/// Pad to a power-of-two square, transpose with `kind`, and crop. Without an explicit
/// layout the row-major layout is used for [`SchemeKind::RowMajor`] and the derived
/// canonical layout for the other schemes.
pub fn transpose_general(
    matrix: &DMatrix<f64>,
    kind: SchemeKind,
    layout: Option<BasisLayout>,
    mode: EncodingMode,
) -> Result<TransposeRun> {
    let (padded, crop) = pad_general(matrix)?;
    let n = qubits_for_side(padded.nrows());
    let scheme = build_scheme(kind, n)?;
    let layout = match layout {
        Some(l) => l,
        None if kind == SchemeKind::RowMajor => BasisLayout::row_major(n)?,
        None => derive_layout(&scheme)?,
    };
    let signal = encoding::layout_encode(&padded, &layout, mode)?;
    let transposed = transpose_matrix(&padded, &scheme, &layout, mode)?;
    Ok(TransposeRun {
        output: crop.crop_transposed(&transposed),
        n_qubits: n,
        pad_count: padded.len() - matrix.len(),
        normalizer: signal.normalizer(),
        layout,
    })
}

pub fn run_transpose(config: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let matrix = io::read_matrix(&config.input)?;
    let layout = match &config.layout {
        Some(path) => Some(io::read_json::<BasisLayout>(path)?),
        None => None,
    };
    let run = transpose_general(&matrix, config.scheme, layout, config.encoding)?;
    if let Some(out) = &config.output {
        io::write_matrix(out, &run.output)?;
    }
    Ok(config.transpose_report(&run, start))
}

/// Register width for `len` values: `max(1, ⌈log₂ len⌉)`.
pub fn register_width(len: usize) -> usize {
    len.next_power_of_two().max(2).trailing_zeros() as usize
}
