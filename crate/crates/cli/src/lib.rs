//! Experiment driver for noisy Grover search: trajectories, η sweeps,
//! cross-engine verification and figure data, all emitted as CSV.

pub mod config;
pub mod engines;
mod error;
pub mod experiments;
pub mod format;

pub use config::{EngineKind, ExperimentConfig, FigureId};
pub use engines::{ClosedFormEngine, Engine, FullStateEngine, RecursionEngine, Sample};
pub use error::CliError;
pub use experiments::{
    default_grid, emit_figure_data, run_sweep, run_trajectory, run_verify, verify_cells,
    FigureData, PairDeviation, ResultRow, SkippedCell, VerifyReport, CLOSED_FALLBACK, VERIFY_TOL,
};
pub use format::{format_sig, write_rows, CSV_HEADER};
