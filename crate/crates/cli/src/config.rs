use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use noisy_grover::{NoiseLevel, SearchSpace, DEGENERATE_TOL};

use crate::CliError;

/// Which dynamics engine produces a row. Ordering is the CSV row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EngineKind {
    Closed,
    Recursion,
    Fullstate,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [
        EngineKind::Closed,
        EngineKind::Recursion,
        EngineKind::Fullstate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EngineKind::Closed => "closed",
            EngineKind::Recursion => "recursion",
            EngineKind::Fullstate => "fullstate",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "closed" => Ok(EngineKind::Closed),
            "recursion" => Ok(EngineKind::Recursion),
            "fullstate" => Ok(EngineKind::Fullstate),
            other => Err(CliError::Usage(format!(
                "unknown engine `{other}` (expected closed, recursion or fullstate)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// P_suc(t) for oscillatory noise levels.
    PsucCaseI,
    /// P_suc(t) for overdamped noise levels.
    PsucCaseII,
    /// C1(t) for oscillatory noise levels.
    CoherenceCaseI,
}

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::PsucCaseI => "psuc_case_i",
            FigureId::PsucCaseII => "psuc_case_ii",
            FigureId::CoherenceCaseI => "coherence_case_i",
        }
    }

    pub fn default_etas(&self) -> Vec<f64> {
        match self {
            FigureId::PsucCaseI | FigureId::CoherenceCaseI => vec![1.0, 0.95, 0.9, 0.8],
            FigureId::PsucCaseII => vec![0.05, 0.1, 0.2, 0.3],
        }
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "psuc_case_i" => Ok(FigureId::PsucCaseI),
            "psuc_case_ii" => Ok(FigureId::PsucCaseII),
            "coherence_case_i" => Ok(FigureId::CoherenceCaseI),
            other => Err(CliError::Usage(format!(
                "unknown figure `{other}` (expected psuc_case_i, psuc_case_ii or coherence_case_i)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_items: u64,
    pub marked_count: u64,
    pub eta_list: Vec<f64>,
    pub steps: u32,
    pub engines: Vec<EngineKind>,
    pub output_path: Option<PathBuf>,
    /// Significant digits for floats in CSV output.
    pub precision: usize,
    pub degenerate_tol: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_items: 64,
            marked_count: 1,
            eta_list: vec![1.0],
            steps: 60,
            engines: vec![EngineKind::Closed],
            output_path: None,
            precision: 12,
            degenerate_tol: DEGENERATE_TOL,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.eta_list.is_empty() {
            return Err(CliError::Usage("at least one eta is required".into()));
        }
        if self.engines.is_empty() {
            return Err(CliError::Usage("at least one engine is required".into()));
        }
        if self.precision == 0 || self.precision > 17 {
            return Err(CliError::Usage(format!(
                "precision {} outside 1..=17",
                self.precision
            )));
        }
        if self.degenerate_tol.is_nan() || self.degenerate_tol < 0.0 {
            return Err(CliError::Usage("degenerate tolerance must be >= 0".into()));
        }
        self.space()?;
        self.noise_levels()?;
        Ok(())
    }

    pub fn space(&self) -> Result<SearchSpace, CliError> {
        Ok(SearchSpace::new(self.n_items, self.marked_count)?)
    }

    pub fn noise_levels(&self) -> Result<Vec<NoiseLevel>, CliError> {
        self.eta_list
            .iter()
            .map(|&e| NoiseLevel::from_eta(e).map_err(CliError::from))
            .collect()
    }

    /// Selected engines, deduplicated, in canonical order.
    pub fn engine_order(&self) -> Vec<EngineKind> {
        let mut kinds = self.engines.clone();
        kinds.sort();
        kinds.dedup();
        kinds
    }
}
