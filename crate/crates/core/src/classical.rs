//! Direct-summation DFT, masking and FFT-shift.
//!
//! This is the classical referee for the quantum pipeline, so it shares no code with it:
//! every bin is an explicit `O(N)` sum over a table of roots of unity indexed by
//! `(k·x) mod N`.
//!
//! Forward convention: `bins[k] = Σ_x v[x]·e^{−2πikx/N}` (unnormalized). The inverse
//! carries the `1/N`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub bins: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }
}

fn roots(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, sign * 2.0 * PI * m as f64 / n as f64))
        .collect()
}

fn transform(values: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = values.len();
    let table = roots(n, sign);
    let bin = |k: usize| -> Complex64 { values.iter().enumerate().map(|(x, v)| v * table[(k * x) % n]).sum() };
    if n >= 1024 {
        (0..n).into_par_iter().map(bin).collect()
    } else {
        (0..n).map(bin).collect()
    }
}

pub fn dft(signal: &[Complex64]) -> Result<Spectrum> {
    if signal.is_empty() {
        return Err(Error::LengthMismatch { expected: 1, found: 0 });
    }
    Ok(Spectrum {
        bins: transform(signal, -1.0),
    })
}

pub fn dft_real(signal: &[f64]) -> Result<Spectrum> {
    let complex: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    dft(&complex)
}

pub fn idft(spectrum: &Spectrum) -> Result<Vec<Complex64>> {
    if spectrum.is_empty() {
        return Err(Error::LengthMismatch { expected: 1, found: 0 });
    }
    let scale = 1.0 / spectrum.len() as f64;
    Ok(transform(&spectrum.bins, 1.0).into_iter().map(|v| v * scale).collect())
}

/// Zero the listed bins.
pub fn apply_mask(spectrum: &Spectrum, zeroed: &[usize]) -> Result<Spectrum> {
    let mut bins = spectrum.bins.clone();
    for &k in zeroed {
        let slot = bins.get_mut(k).ok_or(Error::LengthMismatch {
            expected: spectrum.len(),
            found: k + 1,
        })?;
        *slot = Complex64::new(0.0, 0.0);
    }
    Ok(Spectrum { bins })
}

/// Rotate by `⌊N/2⌋` so the DC bin sits in the middle.
pub fn fft_shift(spectrum: &Spectrum) -> Spectrum {
    let mut bins = spectrum.bins.clone();
    let half = bins.len() / 2;
    bins.rotate_right(half);
    Spectrum { bins }
}

/// `idft(mask(dft(signal)))`.
pub fn masked_reconstruction(signal: &[f64], zeroed: &[usize]) -> Result<Vec<Complex64>> {
    idft(&apply_mask(&dft_real(signal)?, zeroed)?)
}
