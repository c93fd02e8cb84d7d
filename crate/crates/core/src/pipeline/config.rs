use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::time::Instant;

use super::{FilterRun, Mode, TransposeRun};
use crate::encoding::EncodingMode;
use crate::error::{Error, Result};
use crate::filter::{named_filter, named_filter_2d, FilterSpec, NamedFilter};
use crate::transpose::SchemeKind;

/// Version of the [`RunReport`] layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Filter selection before the register width is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterChoice {
    /// No marking; the pipeline reduces to a transform round trip.
    AllPass,
    Named(NamedFilter),
    Indices {
        indices: Vec<usize>,
        keep_marked: bool,
    },
    /// Comma-separated MSB-first patterns.
    Prefixes {
        patterns: String,
        keep_marked: bool,
    },
    Spec(FilterSpec),
}

impl FilterChoice {
    /// Build the spec for an `n`-qubit register. `two_d` switches named filters to their
    /// 2-D form on `n/2` qubits per axis.
    pub fn resolve(&self, n: usize, two_d: bool) -> Result<Option<FilterSpec>> {
        Ok(Some(match self {
            FilterChoice::AllPass => return Ok(None),
            FilterChoice::Named(kind) if two_d => named_filter_2d(*kind, n / 2)?,
            FilterChoice::Named(kind) => named_filter(*kind, n)?,
            FilterChoice::Indices { indices, keep_marked } => {
                FilterSpec::from_indices(n, indices.iter().copied(), *keep_marked)?
            }
            FilterChoice::Prefixes { patterns, keep_marked } => FilterSpec::from_prefix_str(n, patterns, *keep_marked)?,
            FilterChoice::Spec(spec) => {
                if spec.n != n {
                    return Err(Error::ShapeMismatch(format!(
                        "filter spec is for {} qubits, the input needs {n}",
                        spec.n
                    )));
                }
                spec.validate()?;
                spec.clone()
            }
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub filter: FilterChoice,
    pub mode: Mode,
    pub encoding: EncodingMode,
    pub compare_classical: bool,
    /// Filter images with the composed 2-D transform instead of the flattened 1-D one.
    pub composed_2d: bool,
    /// Take magnitudes before clamping image output.
    pub abs: bool,
    pub scheme: SchemeKind,
    /// JSON grid of basis indices for the transpose layout.
    pub layout: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            output: None,
            filter: FilterChoice::AllPass,
            mode: Mode::Project,
            encoding: EncodingMode::Amplitude,
            compare_classical: false,
            composed_2d: false,
            abs: false,
            scheme: SchemeKind::Cnot,
            layout: None,
        }
    }

    fn base_report(&self, command: &str, start: Instant) -> RunReport {
        RunReport {
            schema: REPORT_SCHEMA,
            command: command.into(),
            input: self.input.display().to_string(),
            output: self.output.as_ref().map(|p| p.display().to_string()),
            encoding: self.encoding,
            mode: self.mode,
            n_qubits: 0,
            success_probability: 1.0,
            trials_used: None,
            normalizer: 0.0,
            pad_count: 0,
            max_residual_imaginary: 0.0,
            classical_comparison_error: None,
            marked_count: None,
            clamped_count: None,
            filter: None,
            scheme: None,
            wall_time: start.elapsed().as_secs_f64(),
        }
    }

    pub(super) fn report_for(
        &self,
        command: &str,
        run: &FilterRun,
        spec: Option<FilterSpec>,
        clamped: Option<usize>,
        start: Instant,
    ) -> RunReport {
        RunReport {
            n_qubits: run.n_qubits,
            success_probability: run.success_probability,
            trials_used: run.trials_used,
            normalizer: run.normalizer,
            pad_count: run.pad_count,
            max_residual_imaginary: run.max_residual_imaginary,
            classical_comparison_error: run.classical_error,
            marked_count: run.marked_count,
            clamped_count: clamped,
            filter: spec,
            ..self.base_report(command, start)
        }
    }

    pub(super) fn transpose_report(&self, run: &TransposeRun, start: Instant) -> RunReport {
        RunReport {
            n_qubits: run.n_qubits,
            normalizer: run.normalizer,
            pad_count: run.pad_count,
            scheme: Some(self.scheme),
            ..self.base_report("transpose", start)
        }
    }
}

/// Machine-readable summary of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Always [`REPORT_SCHEMA`].
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub output: Option<String>,
    pub encoding: EncodingMode,
    pub mode: Mode,
    pub n_qubits: usize,
    /// Probability of the kept branch; 1 when nothing is measured.
    pub success_probability: f64,
    pub trials_used: Option<usize>,
    /// `‖v‖` (amplitude encoding) or `Σv` (probability encoding).
    pub normalizer: f64,
    pub pad_count: usize,
    /// Largest imaginary part among the decoded unit-norm amplitudes.
    pub max_residual_imaginary: f64,
    /// Max distance between the quantum output and the classical masked inverse
    /// transform, both scaled to unit norm.
    pub classical_comparison_error: Option<f64>,
    pub marked_count: Option<usize>,
    /// Output pixels that fell outside `[0, maxval]` before clamping.
    pub clamped_count: Option<usize>,
    pub filter: Option<FilterSpec>,
    pub scheme: Option<SchemeKind>,
    /// Seconds; informational only.
    pub wall_time: f64,
}
