use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Assignment of the `N²` basis states of an `n`-qubit register to the cells of an `N×N`
/// grid, `N = 2^{n/2}`.
///
/// Serializes as a JSON array of `N` rows of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct BasisLayout {
    n_qubits: usize,
    side: usize,
    grid: Vec<usize>,
    position: Vec<usize>,
}

impl BasisLayout {
    /// Build from rows of basis indices. The grid must be square with a power-of-two side
    /// and hit every basis index exactly once.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let side = rows.len();
        if side == 0 || !side.is_power_of_two() {
            return Err(Error::InvalidLayout(format!(
                "side {side} is not a positive power of two"
            )));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != side) {
            return Err(Error::InvalidLayout(format!(
                "row {i} has {} entries, expected {side}",
                r.len()
            )));
        }
        let cells = side * side;
        let grid: Vec<usize> = rows.into_iter().flatten().collect();
        let mut position = vec![usize::MAX; cells];
        for (cell, &basis) in grid.iter().enumerate() {
            if basis >= cells {
                return Err(Error::InvalidLayout(format!(
                    "basis index {basis} out of range for {cells} states"
                )));
            }
            if position[basis] != usize::MAX {
                return Err(Error::InvalidLayout(format!("basis index {basis} appears twice")));
            }
            position[basis] = cell;
        }
        Ok(BasisLayout {
            n_qubits: cells.trailing_zeros() as usize,
            side,
            grid,
            position,
        })
    }

    /// Cell `(r, c)` holds basis state `r·N + c`.
    pub fn row_major(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || !n_qubits.is_multiple_of(2) {
            return Err(Error::OddQubitCount(n_qubits));
        }
        let side = 1usize << (n_qubits / 2);
        Self::new((0..side).map(|r| (0..side).map(|c| r * side + c).collect()).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn basis_at(&self, row: usize, col: usize) -> usize {
        self.grid[row * self.side + col]
    }

    /// `(row, col)` of a basis state.
    pub fn position_of(&self, basis: usize) -> (usize, usize) {
        let cell = self.position[basis];
        (cell / self.side, cell % self.side)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.grid.chunks(self.side).map(<[usize]>::to_vec).collect()
    }

    /// Check that `permutation` (a basis map) fixes the diagonal and exchanges each cell
    /// with its mirror across the diagonal.
    pub fn validate_against(&self, permutation: &[usize]) -> Result<()> {
        if permutation.len() != self.grid.len() {
            return Err(Error::InvalidLayout(format!(
                "layout covers {} states but the circuit acts on {}",
                self.grid.len(),
                permutation.len()
            )));
        }
        for r in 0..self.side {
            for c in 0..self.side {
                let from = self.basis_at(r, c);
                let to = self.basis_at(c, r);
                if permutation[from] != to {
                    return Err(Error::InvalidLayout(format!(
                        "cell ({r}, {c}) holds |{from}⟩, which the circuit sends to |{}⟩ instead of |{to}⟩",
                        permutation[from]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<usize>>> for BasisLayout {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        BasisLayout::new(rows)
    }
}

impl From<BasisLayout> for Vec<Vec<usize>> {
    fn from(layout: BasisLayout) -> Self {
        layout.rows()
    }
}
