//! Matrix transpose by basis permutation.
//!
//! A matrix is written into a register through a [`BasisLayout`]: the amplitude of basis
//! state `layout[i][j]` carries entry `(i, j)`. A transpose circuit permutes basis states;
//! when the layout puts the circuit's fixed states on the diagonal and each exchanged pair
//! at mirrored cells, reading the output back through the same layout yields the
//! transposed matrix. No measurement or postselection is involved.
//!
//! Three wirings are provided. The CNOT and controlled-SWAP schemes pair qubits `2k` and
//! `2k+1`; both fix exactly `2^{n/2}` basis states. The row-major scheme swaps the low and
//! high halves of the register, which makes the plain row-major layout valid.

mod layout;
mod scheme;

pub use layout::BasisLayout;
pub use scheme::{
    build_cnot_scheme, build_cswap_scheme, build_rowmajor_scheme, build_scheme, SchemeKind, TransposeScheme,
};

use nalgebra::DMatrix;

use crate::encoding::{decode, layout_encode, EncodingMode};
use crate::error::{Error, Result};
use crate::statevec::StateVector;

/// Canonical layout for a scheme: fixed states on the diagonal in increasing order, then
/// each exchanged pair (ordered by its smaller index) on the next strict-upper-triangle
/// cell in row-major order, with the partner at the mirrored cell.
pub fn derive_layout(scheme: &TransposeScheme) -> Result<BasisLayout> {
    scheme.validate()?;
    let perm = scheme.permutation();
    let side = 1usize << (scheme.n_qubits / 2);
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for (i, &j) in perm.iter().enumerate() {
        if perm[j] != i {
            return Err(Error::InvalidScheme(format!(
                "permutation is not an involution at |{i}⟩"
            )));
        }
        if i == j {
            fixed.push(i);
        } else if i < j {
            pairs.push((i, j));
        }
    }
    if fixed.len() != side {
        return Err(Error::InvalidScheme(format!(
            "permutation fixes {} states, expected {side}",
            fixed.len()
        )));
    }
    let mut grid = vec![vec![0usize; side]; side];
    for (k, &f) in fixed.iter().enumerate() {
        grid[k][k] = f;
    }
    let upper = (0..side).flat_map(|r| (r + 1..side).map(move |c| (r, c)));
    for ((r, c), (a, b)) in upper.zip(pairs) {
        grid[r][c] = a;
        grid[c][r] = b;
    }
    BasisLayout::new(grid)
}

/// Run the scheme's circuit on a data-register state. A switch ancilla, if any, is
/// attached in `|0⟩` and must end in a definite state, which is then released.
pub fn run_scheme(state: &StateVector, scheme: &TransposeScheme) -> Result<StateVector> {
    if state.n_qubits() != scheme.n_qubits {
        return Err(Error::ShapeMismatch(format!(
            "scheme acts on {} qubits, state has {}",
            scheme.n_qubits,
            state.n_qubits()
        )));
    }
    let Some(switch) = scheme.switch_ancilla() else {
        return state.apply_circuit(&scheme.circuit());
    };
    let out = state.with_ancillas(1)?.apply_circuit(&scheme.circuit())?;
    let on = out.branch_probability(switch, true)?;
    let value = if (on - 1.0).abs() < 1e-10 {
        1
    } else if on.abs() < 1e-10 {
        0
    } else {
        return Err(Error::InvalidScheme(format!(
            "switch ancilla is not in a definite state (P(1) = {on})"
        )));
    };
    out.release_top_qubits(scheme.n_qubits, value)
}

/// Encode `matrix` through `layout`, run the scheme, and decode through the same layout.
pub fn transpose_matrix(
    matrix: &DMatrix<f64>,
    scheme: &TransposeScheme,
    layout: &BasisLayout,
    mode: EncodingMode,
) -> Result<DMatrix<f64>> {
    scheme.validate()?;
    if layout.n_qubits() != scheme.n_qubits {
        return Err(Error::ShapeMismatch(format!(
            "layout covers {} qubits, scheme acts on {}",
            layout.n_qubits(),
            scheme.n_qubits
        )));
    }
    layout.validate_against(&scheme.permutation())?;
    let signal = layout_encode(matrix, layout, mode)?;
    let out = run_scheme(&signal.state()?, scheme)?;
    decode(&signal, out.amplitudes())?
        .to_matrix()
        .ok_or_else(|| Error::ShapeMismatch("decoded signal is not a matrix".into()))
}

/// Where the original matrix sits inside its zero-padded square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CropInfo {
    pub rows: usize,
    pub cols: usize,
}

impl CropInfo {
    /// Cut the `cols × rows` transpose out of a transposed padded square.
    pub fn crop_transposed(&self, transposed: &DMatrix<f64>) -> DMatrix<f64> {
        transposed.view((0, 0), (self.cols, self.rows)).into_owned()
    }

    pub fn crop(&self, padded: &DMatrix<f64>) -> DMatrix<f64> {
        padded.view((0, 0), (self.rows, self.cols)).into_owned()
    }
}

/// Embed an `r × c` matrix top-left in the smallest `N × N` zero matrix with `N` a power of
/// two (at least 2), so the padded matrix fits an even-width register.
pub fn pad_general(matrix: &DMatrix<f64>) -> Result<(DMatrix<f64>, CropInfo)> {
    let (rows, cols) = matrix.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::ShapeMismatch("matrix is empty".into()));
    }
    let side = rows.max(cols).next_power_of_two().max(2);
    let mut padded = DMatrix::zeros(side, side);
    padded.view_mut((0, 0), (rows, cols)).copy_from(matrix);
    Ok((padded, CropInfo { rows, cols }))
}

/// Register width for a padded square of side `side`.
pub fn qubits_for_side(side: usize) -> usize {
    2 * side.trailing_zeros() as usize
}
