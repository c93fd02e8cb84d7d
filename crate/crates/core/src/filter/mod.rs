//! Frequency-domain masks as ancilla-marking circuits.
//!
//! A [`FilterSpec`] names the basis states to mark on an `n`-qubit data register and the
//! measurement branch to keep. Compiling it yields one multi-controlled X per pattern,
//! targeting a marking ancilla at qubit `n`. Measuring that ancilla and keeping the
//! outcome `keep_marked` zeroes the other branch and renormalizes the survivors without
//! touching their relative phases.
//!
//! Low-pass and high-pass share their marks and differ only in the kept branch; the
//! same holds for any spec and its dual.

mod marking;
mod postselect;

pub use marking::{compile_marking, compile_marking_with, gate_count, Emission, GateCounts, MarkingCircuit};
pub use postselect::{
    apply_filter_project, apply_filter_project_with, apply_filter_sampled, marked_mass, FilterOutcome, SampledOutcome,
    ANNIHILATION_THRESHOLD,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::DEFAULT_MAX_QUBITS;

/// One fixed qubit value in a pattern. Serialized as `[qubit, bit]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, u8)", into = "(usize, u8)")]
pub struct Constraint {
    pub qubit: usize,
    pub bit: bool,
}

impl From<(usize, u8)> for Constraint {
    fn from((qubit, bit): (usize, u8)) -> Self {
        Constraint { qubit, bit: bit != 0 }
    }
}

impl From<Constraint> for (usize, u8) {
    fn from(c: Constraint) -> Self {
        (c.qubit, c.bit as u8)
    }
}

/// A set of basis states sharing fixed values on some qubits. Every unconstrained qubit
/// is free, so a pattern with `k` constraints covers `2^(n-k)` states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pattern(pub Vec<Constraint>);

impl Pattern {
    /// The single basis state `index` of an `n`-qubit register.
    pub fn basis(index: usize, n: usize) -> Self {
        Pattern(
            (0..n)
                .map(|q| Constraint {
                    qubit: q,
                    bit: (index >> q) & 1 == 1,
                })
                .collect(),
        )
    }

    /// Parse an MSB-first string of `0`, `1` and `x` over the top `len` qubits of an
    /// `n`-qubit register: `"0000"` on 14 qubits fixes qubits 13 through 10 to zero.
    pub fn parse_msb_first(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text.len() > n {
            return Err(Error::InvalidFilter(format!(
                "pattern {text:?} must have 1..={n} characters"
            )));
        }
        let mut constraints = Vec::new();
        for (k, ch) in text.chars().enumerate() {
            let qubit = n - 1 - k;
            match ch {
                '0' | '1' => constraints.push(Constraint { qubit, bit: ch == '1' }),
                'x' | 'X' | '-' | '_' => {}
                _ => {
                    return Err(Error::InvalidFilter(format!(
                        "pattern {text:?}: unexpected character {ch:?}"
                    )))
                }
            }
        }
        Ok(Pattern(constraints))
    }

    pub fn matches(&self, index: usize) -> bool {
        self.0.iter().all(|c| ((index >> c.qubit) & 1 == 1) == c.bit)
    }

    /// Masks `(care, value)` with `index & care == value` exactly on matching states.
    pub fn masks(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(care, value), c| {
            (care | 1 << c.qubit, value | (c.bit as usize) << c.qubit)
        })
    }

    fn disjoint_from(&self, other: &Pattern) -> bool {
        let (ca, va) = self.masks();
        let (cb, vb) = other.masks();
        (va ^ vb) & ca & cb != 0
    }
}

/// Which basis states a spec marks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marked {
    /// Explicit basis indices.
    Indices(Vec<usize>),
    /// Pairwise disjoint patterns.
    Prefixes(Vec<Pattern>),
}

/// Declarative filter. JSON form:
/// `{"n": 4, "indices": [0, 1, 15], "keep_marked": false}` or
/// `{"n": 14, "prefixes": [[[13, 0], [12, 0], [11, 0], [10, 0]]], "keep_marked": true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSpec {
    pub n: usize,
    #[serde(flatten)]
    pub marked: Marked,
    #[serde(default)]
    pub keep_marked: bool,
}

impl FilterSpec {
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>, keep_marked: bool) -> Result<Self> {
        let spec = FilterSpec {
            n,
            marked: Marked::Indices(indices.into_iter().collect()),
            keep_marked,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_patterns(n: usize, patterns: Vec<Pattern>, keep_marked: bool) -> Result<Self> {
        let spec = FilterSpec {
            n,
            marked: Marked::Prefixes(patterns),
            keep_marked,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Comma-separated MSB-first patterns, see [`Pattern::parse_msb_first`].
    pub fn from_prefix_str(n: usize, text: &str, keep_marked: bool) -> Result<Self> {
        let patterns = text
            .split(',')
            .map(|p| Pattern::parse_msb_first(p, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_patterns(n, patterns, keep_marked)
    }

    /// The same marks with the other branch kept.
    pub fn dual(&self) -> Self {
        FilterSpec {
            keep_marked: !self.keep_marked,
            ..self.clone()
        }
    }

    /// Structural checks plus the non-degeneracy requirement.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > DEFAULT_MAX_QUBITS {
            return Err(Error::InvalidFilter(format!(
                "register width {} is outside 1..={DEFAULT_MAX_QUBITS}",
                self.n
            )));
        }
        let dim = 1usize << self.n;
        match &self.marked {
            Marked::Indices(indices) => {
                let mut seen = vec![false; dim];
                for &i in indices {
                    if i >= dim {
                        return Err(Error::InvalidFilter(format!(
                            "index {i} is out of range for {dim} states"
                        )));
                    }
                    if std::mem::replace(&mut seen[i], true) {
                        return Err(Error::InvalidFilter(format!("index {i} is listed twice")));
                    }
                }
            }
            Marked::Prefixes(patterns) => {
                for p in patterns {
                    let mut qubits = std::collections::HashSet::new();
                    for c in &p.0 {
                        if c.qubit >= self.n {
                            return Err(Error::InvalidFilter(format!(
                                "constraint on qubit {} is out of range for {} qubits",
                                c.qubit, self.n
                            )));
                        }
                        if !qubits.insert(c.qubit) {
                            return Err(Error::InvalidFilter(format!(
                                "qubit {} is constrained twice in one pattern",
                                c.qubit
                            )));
                        }
                    }
                }
                for (i, a) in patterns.iter().enumerate() {
                    if let Some(j) = patterns[i + 1..].iter().position(|b| !a.disjoint_from(b)) {
                        return Err(Error::InvalidFilter(format!(
                            "patterns {i} and {} overlap; a state would be marked twice",
                            i + 1 + j
                        )));
                    }
                }
            }
        }
        let count = self.marked_count();
        if count == 0 {
            return Err(Error::DegenerateFilter("no basis state is marked".into()));
        }
        if count == dim {
            return Err(Error::DegenerateFilter("every basis state is marked".into()));
        }
        Ok(())
    }

    pub fn patterns(&self) -> Vec<Pattern> {
        match &self.marked {
            Marked::Indices(indices) => indices.iter().map(|&i| Pattern::basis(i, self.n)).collect(),
            Marked::Prefixes(patterns) => patterns.clone(),
        }
    }

    pub fn is_marked(&self, index: usize) -> bool {
        match &self.marked {
            Marked::Indices(indices) => indices.contains(&index),
            Marked::Prefixes(patterns) => patterns.iter().any(|p| p.matches(index)),
        }
    }

    /// Membership table over all `2^n` states.
    pub fn marked_mask(&self) -> Vec<bool> {
        let dim = 1usize << self.n;
        match &self.marked {
            Marked::Indices(indices) => {
                let mut mask = vec![false; dim];
                indices.iter().filter(|&&i| i < dim).for_each(|&i| mask[i] = true);
                mask
            }
            Marked::Prefixes(patterns) => {
                let masks: Vec<_> = patterns.iter().map(Pattern::masks).collect();
                (0..dim).map(|i| masks.iter().any(|&(c, v)| i & c == v)).collect()
            }
        }
    }

    /// Indices that survive postselection.
    pub fn kept_mask(&self) -> Vec<bool> {
        self.marked_mask().into_iter().map(|m| m == self.keep_marked).collect()
    }

    /// Number of marked states. Patterns are disjoint, so their sizes add.
    pub fn marked_count(&self) -> usize {
        match &self.marked {
            Marked::Indices(indices) => indices.len(),
            Marked::Prefixes(patterns) => patterns
                .iter()
                .map(|p| 1usize << (self.n - p.0.len().min(self.n)))
                .sum(),
        }
    }

    /// Indices the filter removes, sorted.
    pub fn zeroed_indices(&self) -> Vec<usize> {
        self.kept_mask()
            .iter()
            .enumerate()
            .filter(|(_, &k)| !k)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Filter families on the cyclic frequency distance `d(k) = min(k, N - k)`.
///
/// | kind                    | marked                       | kept branch |
/// |-------------------------|------------------------------|-------------|
/// | `LowPass { cutoff }`    | `d < cutoff`                 | marked      |
/// | `HighPass { cutoff }`   | `d < cutoff`                 | unmarked    |
/// | `BandPass { low, high }`| `d < low` or `d > high`      | unmarked    |
/// | `BandStop { low, high }`| `low <= d <= high`           | unmarked    |
///
/// On 4 qubits, `HighPass { cutoff: 2 }` marks `{0, 1, 15}`,
/// `BandPass { low: 2, high: 6 }` marks `{0, 1, 7, 8, 9, 15}` and
/// `BandStop { low: 2, high: 3 }` marks `{2, 3, 13, 14}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NamedFilter {
    LowPass { cutoff: usize },
    HighPass { cutoff: usize },
    BandPass { low: usize, high: usize },
    BandStop { low: usize, high: usize },
}

/// Cyclic distance of bin `k` from DC on `dim` bins.
pub fn frequency_distance(k: usize, dim: usize) -> usize {
    k.min(dim - k)
}

pub fn named_filter(kind: NamedFilter, n: usize) -> Result<FilterSpec> {
    if n == 0 || n > DEFAULT_MAX_QUBITS {
        return Err(Error::InvalidFilter(format!(
            "register width {n} is outside 1..={DEFAULT_MAX_QUBITS}"
        )));
    }
    let dim = 1usize << n;
    let nyquist = dim / 2;
    let out_of_range = |what: &str| Err(Error::InvalidFilter(format!("{what} for {dim} bins")));
    let (pred, keep): (Box<dyn Fn(usize) -> bool>, bool) = match kind {
        NamedFilter::LowPass { cutoff } | NamedFilter::HighPass { cutoff } => {
            if cutoff == 0 || cutoff > nyquist {
                return out_of_range(&format!("cutoff {cutoff} is outside 1..={nyquist}"));
            }
            (
                Box::new(move |d| d < cutoff),
                matches!(kind, NamedFilter::LowPass { .. }),
            )
        }
        NamedFilter::BandPass { low, high } => {
            if low > high || high > nyquist {
                return out_of_range(&format!("band {low}..={high} is not within 0..={nyquist}"));
            }
            (Box::new(move |d| d < low || d > high), false)
        }
        NamedFilter::BandStop { low, high } => {
            if low > high || high > nyquist {
                return out_of_range(&format!("band {low}..={high} is not within 0..={nyquist}"));
            }
            (Box::new(move |d| (low..=high).contains(&d)), false)
        }
    };
    let indices = (0..dim).filter(|&k| pred(frequency_distance(k, dim)));
    FilterSpec::from_indices(n, indices, keep)
}

/// The same families on a `2^m × 2^m` spectrum stored row-major over `2m` qubits, with
/// distance `max(d(row), d(col))`, so cutoffs are square rings around DC.
pub fn named_filter_2d(kind: NamedFilter, m: usize) -> Result<FilterSpec> {
    let line = named_filter(kind, m)?;
    let side = 1usize << m;
    let n = 2 * m;
    // the 1-D spec fixes which distances are marked and which branch is kept
    let marked_distance: Vec<bool> = (0..=side / 2).map(|d| line.is_marked(d)).collect();
    let indices = (0..side * side).filter(|&i| {
        let d = frequency_distance(i / side, side).max(frequency_distance(i % side, side));
        marked_distance[d]
    });
    FilterSpec::from_indices(n, indices, line.keep_marked)
}
