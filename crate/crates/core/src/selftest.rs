//! Executable reference suite: every published vector in [`crate::fixtures`] recomputed
//! and compared at the precision it was printed with.
//!
//! The transpose listings were produced by rounding amplitudes to 3 decimals before
//! squaring or rescaling. Those checks apply the same rounding to the simulated
//! amplitudes and, separately, confirm that the unrounded result is the exact transpose.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt::Write as _;

use crate::classical;
use crate::encoding::{layout_encode, EncodingMode};
use crate::error::Result;
use crate::filter::{apply_filter_project, named_filter, FilterSpec, NamedFilter};
use crate::fixtures::{self, complex, round_to};
use crate::qft::{apply_fourier, Direction};
use crate::statevec::StateVector;
use crate::transpose::{build_cnot_scheme, build_cswap_scheme, run_scheme, BasisLayout};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, deviation: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            deviation,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn real(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

fn layout(grid: &[[usize; 4]; 4]) -> Result<BasisLayout> {
    BasisLayout::new(grid.iter().map(|r| r.to_vec()).collect())
}

fn read_through(layout: &BasisLayout, values: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |r, c| values[layout.basis_at(r, c)])
}

fn matrix_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

fn fixture_matrix(rows: &[[f64; 4]; 4]) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |r, c| rows[r][c])
}

/// Name, filter, expected intermediate vector, expected output.
type Case<F> = (&'static str, F, &'static [fixtures::C; 16], &'static [f64; 16]);

/// Run the whole suite.
pub fn run() -> Result<Vec<Check>> {
    const PRINTED: f64 = 5e-3;
    let mut checks = Vec::new();

    let input = StateVector::from_real(&fixtures::INPUT)?;
    let spectrum = apply_fourier(&input, Direction::Inverse)?;
    checks.push(Check::new(
        "inverse transform of the 16-point input",
        max_diff(spectrum.amplitudes(), &complex(&fixtures::AFTER_IQFT)),
        PRINTED,
    ));

    let quantum_cases: [Case<FilterSpec>; 3] = [
        (
            "high-pass",
            named_filter(NamedFilter::HighPass { cutoff: 2 }, 4)?,
            &fixtures::HIGH_PASS_AFTER_MEASUREMENT,
            &fixtures::HIGH_PASS_AFTER_QFT,
        ),
        (
            "band-pass",
            named_filter(NamedFilter::BandPass { low: 2, high: 6 }, 4)?,
            &fixtures::BAND_PASS_AFTER_MEASUREMENT,
            &fixtures::BAND_PASS_AFTER_QFT,
        ),
        (
            "band-stop",
            named_filter(NamedFilter::BandStop { low: 2, high: 3 }, 4)?,
            &fixtures::BAND_STOP_AFTER_MEASUREMENT,
            &fixtures::BAND_STOP_AFTER_QFT,
        ),
    ];
    for (name, spec, after_measurement, after_qft) in quantum_cases {
        let filtered = apply_filter_project(&spectrum, &spec)?;
        if name == "high-pass" {
            checks.push(Check::new(
                "high-pass success probability",
                (filtered.success_probability - fixtures::HIGH_PASS_PROBABILITY).abs(),
                PRINTED,
            ));
        }
        checks.push(Check::new(
            &format!("{name} state after measurement"),
            max_diff(filtered.state.amplitudes(), &complex(after_measurement)),
            PRINTED,
        ));
        let out = apply_fourier(&filtered.state, Direction::Forward)?;
        checks.push(Check::new(
            &format!("{name} output after forward transform"),
            max_diff(out.amplitudes(), &real(after_qft)),
            PRINTED,
        ));
    }

    let dc_scaled: Vec<f64> = fixtures::INPUT.to_vec();
    let classical_cases: [Case<Vec<usize>>; 3] = [
        (
            "classical low-pass",
            fixtures::CLASSICAL_LOW_PASS_ZEROED.to_vec(),
            &fixtures::CLASSICAL_LOW_PASS_SPECTRUM,
            &fixtures::CLASSICAL_LOW_PASS_SIGNAL,
        ),
        (
            "classical band-pass",
            fixtures::BAND_PASS_MARKED.to_vec(),
            &fixtures::CLASSICAL_BAND_PASS_SPECTRUM,
            &fixtures::CLASSICAL_BAND_PASS_SIGNAL,
        ),
        (
            "classical band-stop",
            fixtures::BAND_STOP_MARKED.to_vec(),
            &fixtures::CLASSICAL_BAND_STOP_SPECTRUM,
            &fixtures::CLASSICAL_BAND_STOP_SIGNAL,
        ),
    ];
    for (name, zeroed, spectrum_fixture, signal_fixture) in classical_cases {
        let masked = classical::apply_mask(&classical::dft_real(&dc_scaled)?, &zeroed)?;
        checks.push(Check::new(
            &format!("{name} spectrum"),
            max_diff(&masked.bins, &complex(spectrum_fixture)),
            5e-4,
        ));
        checks.push(Check::new(
            &format!("{name} signal"),
            max_diff(&classical::idft(&masked)?, &real(signal_fixture)),
            5e-4,
        ));
    }

    let x = fixture_matrix(&fixtures::TRANSPOSE_INPUT);

    let b = layout(&fixtures::LAYOUT_B)?;
    let cnot = build_cnot_scheme(4)?;
    let encoded = layout_encode(&x, &b, EncodingMode::Probability)?;
    let out = run_scheme(&encoded.state()?, &cnot)?;
    let rounded_probabilities: Vec<f64> = out.amplitudes().iter().map(|a| round_to(a.re, 3).powi(2)).collect();
    checks.push(Check::new(
        "CNOT transpose probabilities (3-decimal amplitudes)",
        rounded_probabilities
            .iter()
            .zip(fixtures::CNOT_PROBABILITIES)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max),
        1e-6,
    ));
    let recovered = read_through(&b, &rounded_probabilities) * encoded.normalizer();
    checks.push(Check::new(
        "CNOT transpose printed recovery",
        matrix_diff(&recovered, &fixture_matrix(&fixtures::CNOT_RECOVERED)),
        1e-6,
    ));
    checks.push(Check::new(
        "CNOT transpose recovery vs exact transpose",
        matrix_diff(&recovered, &x.transpose()),
        0.05,
    ));
    let exact: Vec<f64> = out.probabilities();
    checks.push(Check::new(
        "CNOT transpose exact recovery",
        matrix_diff(&(read_through(&b, &exact) * encoded.normalizer()), &x.transpose()),
        1e-9,
    ));

    let d = layout(&fixtures::LAYOUT_D)?;
    let cswap = build_cswap_scheme(4)?;
    let encoded = layout_encode(&x, &d, EncodingMode::Amplitude)?;
    let state = encoded.state()?;
    let out = run_scheme(&state, &cswap)?;
    let rounded: Vec<f64> = out.amplitudes().iter().map(|a| round_to(a.re, 3)).collect();
    checks.push(Check::new(
        "controlled-SWAP transpose amplitudes",
        rounded
            .iter()
            .zip(fixtures::CSWAP_AMPLITUDES)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max),
        1e-9,
    ));
    let recovered = read_through(&d, &rounded) * encoded.normalizer();
    checks.push(Check::new(
        "controlled-SWAP printed recovery",
        matrix_diff(&recovered, &fixture_matrix(&fixtures::CSWAP_RECOVERED)),
        PRINTED,
    ));
    let exact: Vec<f64> = out.amplitudes().iter().map(|a| a.re).collect();
    checks.push(Check::new(
        "controlled-SWAP exact recovery",
        matrix_diff(&(read_through(&d, &exact) * encoded.normalizer()), &x.transpose()),
        1e-9,
    ));
    let idle = run_scheme(&state, &cswap.clone().with_enabled(false))?;
    checks.push(Check::new(
        "controlled-SWAP with U3(0,0,0) is the identity",
        if idle == state { 0.0 } else { f64::INFINITY },
        0.0,
    ));

    let prefix = FilterSpec::from_prefix_str(14, "0000,1111", true)?;
    checks.push(Check::new(
        "two 4-qubit prefixes on 14 qubits mark 2048 states",
        prefix.marked_count().abs_diff(fixtures::PREFIX_MARKED_COUNT_14) as f64,
        0.0,
    ));

    Ok(checks)
}

/// One line per check plus a summary line.
pub fn format_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(
            out,
            "{}  {:<width$}  deviation {:.3e}  tolerance {:.1e}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.deviation,
            c.tolerance
        );
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let _ = writeln!(out, "{passed}/{} checks passed", checks.len());
    out
}
