//! State-vector simulation of frequency-domain filtering with the quantum Fourier
//! transform, plus two circuit-level matrix transpose schemes.
//!
//! The pieces, bottom-up:
//!
//! - [`statevec`]: dense amplitudes, gates (including multi-controlled gates with either
//!   control polarity), postselection and seeded measurement.
//! - [`qft`]: exact QFT/IQFT circuits and their dense reference matrices.
//! - [`encoding`]: real data to amplitudes and back, in amplitude or probability mode.
//! - [`filter`]: ancilla-marking oracles built from frequency masks, postselection, and the
//!   low/high/band-pass/band-stop families.
//! - [`transpose`]: CNOT and controlled-SWAP transpose circuits with their basis layouts.
//! - [`classical`]: a direct DFT used as an independent referee.
//! - [`pipeline`] and [`io`]: end-to-end runs over CSV series, PGM/PPM images and matrices,
//!   with JSON run reports.
//!
//! ```
//! use qfilter::{encoding, filter, pipeline};
//!
//! let mut signal = vec![0.0; 16];
//! signal[6..10].fill(1.0);
//! let spec = filter::named_filter(filter::NamedFilter::HighPass { cutoff: 2 }, 4)?;
//! let run = pipeline::filter_series(&signal, Some(&spec), &pipeline::Mode::Project)?;
//! assert!((run.success_probability - 0.3395).abs() < 1e-4);
//! # let _ = encoding::EncodingMode::Amplitude;
//! # Ok::<(), qfilter::Error>(())
//! ```

pub mod classical;
pub mod encoding;
mod error;
pub mod filter;
pub mod fixtures;
pub mod io;
pub mod pipeline;
pub mod qft;
pub mod selftest;
pub mod statevec;
pub mod transpose;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use num_complex::Complex64;
