//! Published reference vectors for the 16-point worked example and the 4×4 transpose
//! example, as printed (3 decimals for simulator output, 4 for the classical track).
//!
//! The worked example's input has `0.5` on indices 6 through 9. Every transform output
//! below was produced from that input.
//!
//! A few source listings are malformed: one drops a zero, one repeats an entry, one
//! splits a complex number across a comma. The constants here hold the 16-entry vectors
//! those listings describe; each correction is noted next to the constant.

/// `(re, im)` pairs, so tables stay `const`.
pub type C = (f64, f64);

/// Data-register length of the worked example.
pub const N: usize = 16;

/// Worked-example input amplitudes.
pub const INPUT: [f64; 16] = [
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
];

/// Amplitudes after the inverse transform.
pub const AFTER_IQFT: [C; 16] = [
    (0.5, 0.0),
    (-0.444, -0.088),
    (0.302, 0.125),
    (-0.132, -0.088),
    (0.0, 0.0),
    (0.059, 0.088),
    (-0.052, -0.125),
    (0.018, 0.088),
    (0.0, 0.0),
    (0.018, -0.088),
    (-0.052, 0.125),
    (0.059, -0.088),
    (0.0, 0.0),
    (-0.132, 0.088),
    (0.302, -0.125),
    (-0.444, 0.088),
];

/// High-pass marks.
pub const HIGH_PASS_MARKED: [usize; 3] = [0, 1, 15];
/// Printed probability of the ancilla reading 0 in the high-pass run.
pub const HIGH_PASS_PROBABILITY: f64 = 0.3392;

/// High-pass data register after the ancilla reads 0.
pub const HIGH_PASS_AFTER_MEASUREMENT: [C; 16] = [
    (0.0, 0.0),
    (0.0, 0.0),
    (0.518, 0.215),
    (-0.227, -0.152),
    (0.0, 0.0),
    (0.101, 0.152),
    (-0.089, -0.215),
    (0.03, 0.152),
    (0.0, 0.0),
    (0.03, -0.152),
    (-0.089, 0.215),
    (0.101, -0.152),
    (0.0, 0.0),
    (-0.227, 0.152),
    (0.518, -0.215),
    (0.0, 0.0),
];

/// High-pass output after the forward transform. The printed listing stops after 13
/// entries; the remaining three follow from the mirror symmetry of a real even signal.
pub const HIGH_PASS_AFTER_QFT: [f64; 16] = [
    0.167, 0.109, 0.001, -0.139, -0.29, -0.431, 0.32, 0.262, 0.262, 0.32, -0.431, -0.29, -0.139, 0.001, 0.109, 0.167,
];

pub const BAND_PASS_MARKED: [usize; 6] = [0, 1, 7, 8, 9, 15];

pub const BAND_PASS_AFTER_MEASUREMENT: [C; 16] = [
    (0.0, 0.0),
    (0.0, 0.0),
    (0.531, 0.22),
    (-0.233, -0.155),
    (0.0, 0.0),
    (0.104, 0.155),
    (-0.091, -0.22),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-0.091, 0.22),
    (0.104, -0.155),
    (0.0, 0.0),
    (-0.233, 0.155),
    (0.531, -0.22),
    (0.0, 0.0),
];

/// The printed listing has five consecutive `0.284` entries and 17 data values; the
/// signal is even about index 8, which pins the middle run at four.
pub const BAND_PASS_AFTER_QFT: [f64; 16] = [
    0.155, 0.155, -0.064, -0.064, -0.375, -0.375, 0.284, 0.284, 0.284, 0.284, -0.375, -0.375, -0.064, -0.064, 0.155,
    0.155,
];

pub const BAND_STOP_MARKED: [usize; 4] = [2, 3, 13, 14];

/// The printed listing splits index 6 into two entries and drops one zero before the
/// last nonzero value, which belongs at index 15.
pub const BAND_STOP_AFTER_MEASUREMENT: [C; 16] = [
    (0.583, 0.0),
    (-0.518, -0.103),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.069, 0.103),
    (-0.06, -0.146),
    (0.02, 0.103),
    (0.0, 0.0),
    (0.02, -0.103),
    (-0.06, 0.146),
    (0.069, -0.103),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-0.518, 0.103),
];

pub const BAND_STOP_AFTER_QFT: [f64; 16] = [
    -0.099, -0.091, -0.018, 0.124, 0.227, 0.164, 0.528, 0.33, 0.33, 0.528, 0.164, 0.227, 0.124, -0.018, -0.091, -0.099,
];

/// Bins zeroed by the classical low-pass run.
pub const CLASSICAL_LOW_PASS_ZEROED: [usize; 5] = [6, 7, 8, 9, 10];

/// Classical low-pass spectrum after masking. The printed listing has 15 entries with
/// only four zeros in the masked run.
pub const CLASSICAL_LOW_PASS_SPECTRUM: [C; 16] = [
    (2.0, 0.0),
    (-1.7774, -0.3536),
    (1.2071, 0.5),
    (-0.5291, -0.3536),
    (0.0, 0.0),
    (0.2362, 0.3536),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.2362, -0.3536),
    (0.0, 0.0),
    (-0.5291, 0.3536),
    (1.2071, -0.5),
    (-1.7774, 0.3536),
];

pub const CLASSICAL_LOW_PASS_SIGNAL: [f64; 16] = [
    0.0171, -0.0375, 0.0250, 0.0183, -0.0701, 0.1000, 0.4125, 0.5347, 0.5347, 0.4125, 0.1000, -0.0701, 0.0183, 0.0250,
    -0.0375, 0.0171,
];

pub const CLASSICAL_BAND_PASS_SPECTRUM: [C; 16] = [
    (0.0, 0.0),
    (0.0, 0.0),
    (1.2071, 0.5),
    (-0.5291, -0.3536),
    (0.0, 0.0),
    (0.2362, 0.3536),
    (-0.2071, -0.5),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-0.2071, 0.5),
    (0.2362, -0.3536),
    (0.0, 0.0),
    (-0.5291, 0.3536),
    (1.2071, -0.5),
    (0.0, 0.0),
];

pub const CLASSICAL_BAND_PASS_SIGNAL: [f64; 16] = [
    0.0884, 0.0884, -0.0366, -0.0366, -0.2134, -0.2134, 0.1616, 0.1616, 0.1616, 0.1616, -0.2134, -0.2134, -0.0366,
    -0.0366, 0.0884, 0.0884,
];

pub const CLASSICAL_BAND_STOP_SPECTRUM: [C; 16] = [
    (2.0, 0.0),
    (-1.7774, -0.3536),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.2362, 0.3536),
    (-0.2071, -0.5),
    (0.0703, 0.3536),
    (0.0, 0.0),
    (0.0703, -0.3536),
    (-0.2071, 0.5),
    (0.2362, -0.3536),
    (0.0, 0.0),
    (0.0, 0.0),
    (0.0, 0.0),
    (-1.7774, 0.3536),
];

pub const CLASSICAL_BAND_STOP_SIGNAL: [f64; 16] = [
    -0.0847, -0.0780, -0.0155, 0.1067, 0.1951, 0.1405, 0.4530, 0.2830, 0.2830, 0.4530, 0.1405, 0.1951, 0.1067, -0.0155,
    -0.0780, -0.0847,
];

/// The 4×4 matrix both transpose examples use, row-major.
pub const TRANSPOSE_INPUT: [[f64; 4]; 4] = [
    [0.0, 1.0, 2.0, 3.0],
    [4.0, 5.0, 6.0, 7.0],
    [8.0, 9.0, 10.0, 11.0],
    [12.0, 13.0, 14.0, 15.0],
];

/// Layout for the CNOT scheme on qubit pairs (0, 1) and (2, 3).
pub const LAYOUT_B: [[usize; 4]; 4] = [[0, 1, 9, 4], [3, 2, 6, 5], [11, 14, 8, 13], [12, 15, 7, 10]];

/// Layout for the controlled-SWAP scheme on the same pairs.
pub const LAYOUT_D: [[usize; 4]; 4] = [[0, 1, 4, 6], [2, 3, 5, 7], [8, 10, 12, 13], [9, 11, 14, 15]];

/// Basis probabilities after the CNOT transpose. These are squares of amplitudes that
/// were first rounded to 3 decimals.
pub const CNOT_PROBABILITIES: [f64; 16] = [
    0.0, 0.033489, 0.041616, 0.008281, 0.099856, 0.108241, 0.075076, 0.091809, 0.083521, 0.066564, 0.125316, 0.016641,
    0.024964, 0.116964, 0.050176, 0.058564,
];

/// `CNOT_PROBABILITIES` read through `LAYOUT_B` and scaled by 120.
pub const CNOT_RECOVERED: [[f64; 4]; 4] = [
    [0.0, 4.01868, 7.98768, 11.98272],
    [0.99372, 4.99392, 9.00912, 12.98892],
    [1.99692, 6.02112, 10.02252, 14.03568],
    [2.99568, 7.02768, 11.01708, 15.03792],
];

/// Amplitudes after the controlled-SWAP transpose with the switch on, rounded to 3
/// decimals.
pub const CSWAP_AMPLITUDES: [f64; 16] = [
    0.0, 0.114, 0.028, 0.142, 0.227, 0.256, 0.341, 0.369, 0.057, 0.085, 0.17, 0.199, 0.284, 0.398, 0.312, 0.426,
];

/// `CSWAP_AMPLITUDES` scaled by `√1240` and read through `LAYOUT_D`.
pub const CSWAP_RECOVERED: [[f64; 4]; 4] = [
    [0.0, 4.01435424, 7.99349486, 12.0078491],
    [0.98598174, 5.00033599, 9.01469023, 12.99383084],
    [2.00717712, 5.98631773, 10.00067198, 14.01502622],
    [2.99315887, 7.00751311, 10.98665372, 15.00100797],
];

/// Number of states the two 4-qubit prefixes mark on a 14-qubit register.
pub const PREFIX_MARKED_COUNT_14: usize = 2048;

/// Convert a `(re, im)` table to complex values.
pub fn complex(table: &[C]) -> Vec<crate::Complex64> {
    table.iter().map(|&(re, im)| crate::Complex64::new(re, im)).collect()
}

/// Round to `places` decimals, half away from zero.
pub fn round_to(value: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    (value * scale).round() / scale
}
