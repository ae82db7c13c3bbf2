use std::fmt::Write as _;
use std::io::Write;

use noisy_grover::coherence::tradeoff_bounds;
use noisy_grover::{spectral_data, Error, NoiseLevel, SearchSpace, SpectralCase};

use crate::config::{EngineKind, ExperimentConfig, FigureId};
use crate::engines::{ClosedFormEngine, Engine, FullStateEngine, RecursionEngine, Sample};
use crate::format::format_sig;
use crate::CliError;

/// Label used for closed-form rows computed by the recursion engine because
/// the cell is degenerate.
pub const CLOSED_FALLBACK: &str = "closed-fallback";

/// One CSV line of `trajectory`/`sweep` output.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub engine: String,
    pub t: u32,
    pub eta: f64,
    pub n: u64,
    pub m: u64,
    pub p_suc: f64,
    pub r_x: f64,
    pub r_z: f64,
    pub c1: f64,
    pub s1: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

impl ResultRow {
    fn new(engine: &str, eta: f64, space: &SearchSpace, s: &Sample) -> Self {
        let (lower_bound, upper_bound) = tradeoff_bounds(s.p_suc, space);
        Self {
            engine: engine.to_string(),
            t: s.t,
            eta,
            n: space.n_items(),
            m: space.marked_count(),
            p_suc: s.p_suc,
            r_x: s.bloch.r_x,
            r_z: s.bloch.r_z,
            c1: s.coherence.c1,
            s1: s.coherence.s1,
            lower_bound,
            upper_bound,
        }
    }
}

/// Runs `kind` and falls back to the recursion engine for degenerate
/// closed-form cells. Returns the label to print with the samples.
fn run_engine(
    kind: EngineKind,
    config: &ExperimentConfig,
    space: &SearchSpace,
    noise: &NoiseLevel,
    steps: u32,
) -> Result<(&'static str, Vec<Sample>), CliError> {
    let result = match kind {
        EngineKind::Closed => ClosedFormEngine {
            degenerate_tol: config.degenerate_tol,
        }
        .run(space, noise, steps),
        EngineKind::Recursion => RecursionEngine.run(space, noise, steps),
        EngineKind::Fullstate => FullStateEngine::default().run(space, noise, steps),
    };
    match result {
        Ok(samples) => Ok((kind.as_str(), samples)),
        Err(Error::Degenerate { .. }) => {
            Ok((CLOSED_FALLBACK, RecursionEngine.run(space, noise, steps)?))
        }
        Err(e) => Err(e.into()),
    }
}

/// One row per (engine, eta, t), ordered by engine, then eta, then t.
pub fn run_trajectory(config: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    config.validate()?;
    let space = config.space()?;
    let mut rows = Vec::new();
    for kind in config.engine_order() {
        for (&eta, noise) in config.eta_list.iter().zip(config.noise_levels()?) {
            let (label, samples) = run_engine(kind, config, &space, &noise, config.steps)?;
            rows.extend(
                samples
                    .iter()
                    .map(|s| ResultRow::new(label, eta, &space, s)),
            );
        }
    }
    Ok(rows)
}

/// Terminal row (`t = steps`) per (engine, eta).
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<ResultRow>, CliError> {
    config.validate()?;
    let space = config.space()?;
    let mut rows = Vec::new();
    for kind in config.engine_order() {
        for (&eta, noise) in config.eta_list.iter().zip(config.noise_levels()?) {
            let (label, samples) = run_engine(kind, config, &space, &noise, config.steps)?;
            let last = samples.last().expect("t = 0 is always present");
            rows.push(ResultRow::new(label, eta, &space, last));
        }
    }
    Ok(rows)
}

/// Largest deviation between two engines over one parameter cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDeviation {
    pub n: u64,
    pub m: u64,
    pub eta: f64,
    pub first: String,
    pub second: String,
    pub p_suc: f64,
    pub r_x: f64,
    pub r_z: f64,
    /// Step at which the largest of the three deviations occurs.
    pub worst_t: u32,
}

impl PairDeviation {
    pub fn max(&self) -> f64 {
        self.p_suc.max(self.r_x).max(self.r_z)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub n: u64,
    pub m: u64,
    pub eta: f64,
    pub engine: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub pairs: Vec<PairDeviation>,
    pub skipped: Vec<SkippedCell>,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.pairs
            .iter()
            .map(PairDeviation::max)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairDeviation> {
        self.pairs
            .iter()
            .filter(|p| p.max().is_nan() || p.max() > self.tolerance)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn write_csv<W: Write>(&self, out: &mut W, precision: usize) -> std::io::Result<()> {
        let f = |x: f64| format_sig(x, precision);
        writeln!(
            out,
            "n,m,eta,engines,max_dev_p_suc,max_dev_r_x,max_dev_r_z,worst_t,status"
        )?;
        for p in &self.pairs {
            let status = if p.max() <= self.tolerance {
                "ok"
            } else {
                "FAIL"
            };
            writeln!(
                out,
                "{},{},{},{}-{},{},{},{},{},{}",
                p.n,
                p.m,
                f(p.eta),
                p.first,
                p.second,
                f(p.p_suc),
                f(p.r_x),
                f(p.r_z),
                p.worst_t,
                status
            )?;
        }
        for s in &self.skipped {
            writeln!(
                out,
                "{},{},{},{},,,,,skipped-{}",
                s.n,
                s.m,
                f(s.eta),
                s.engine,
                s.reason
            )?;
        }
        Ok(())
    }

    /// Human-readable description of the failing cells.
    pub fn failure_summary(&self) -> String {
        let mut msg = String::new();
        for p in self.failures() {
            let _ = write!(
                msg,
                "N={} M={} eta={} {} vs {}: max deviation {:e} at t={}; ",
                p.n,
                p.m,
                p.eta,
                p.first,
                p.second,
                p.max(),
                p.worst_t
            );
        }
        msg.trim_end_matches("; ").to_string()
    }
}

fn compare(a: &[Sample], b: &[Sample]) -> (f64, f64, f64, u32) {
    let (mut dp, mut dx, mut dz, mut worst, mut worst_t) = (0.0f64, 0.0f64, 0.0f64, -1.0f64, 0);
    for (x, y) in a.iter().zip(b) {
        let p = (x.p_suc - y.p_suc).abs();
        let rx = (x.bloch.r_x - y.bloch.r_x).abs();
        let rz = (x.bloch.r_z - y.bloch.r_z).abs();
        // NaN counts as the worst possible deviation
        let here = if p.is_nan() || rx.is_nan() || rz.is_nan() {
            f64::INFINITY
        } else {
            p.max(rx).max(rz)
        };
        if here > worst {
            worst = here;
            worst_t = x.t;
        }
        dp = dp.max(if p.is_nan() { f64::INFINITY } else { p });
        dx = dx.max(if rx.is_nan() { f64::INFINITY } else { rx });
        dz = dz.max(if rz.is_nan() { f64::INFINITY } else { rz });
    }
    (dp, dx, dz, worst_t)
}

/// Pairwise comparison of `engines` over every cell. Degenerate cells are
/// recorded as skipped for the engines that refuse them.
pub fn verify_cells(
    cells: &[(SearchSpace, NoiseLevel)],
    engines: &[&dyn Engine],
    steps: u32,
    tolerance: f64,
) -> Result<VerifyReport, CliError> {
    if engines.len() < 2 {
        return Err(CliError::Usage("verify needs at least two engines".into()));
    }
    let mut report = VerifyReport {
        tolerance,
        pairs: Vec::new(),
        skipped: Vec::new(),
    };
    for (space, noise) in cells {
        let mut runs: Vec<(&str, Vec<Sample>)> = Vec::new();
        for engine in engines {
            match engine.run(space, noise, steps) {
                Ok(samples) => runs.push((engine.name(), samples)),
                Err(Error::Degenerate { .. }) => report.skipped.push(SkippedCell {
                    n: space.n_items(),
                    m: space.marked_count(),
                    eta: noise.eta(),
                    engine: engine.name().to_string(),
                    reason: "degenerate".into(),
                }),
                Err(e) => return Err(e.into()),
            }
        }
        for i in 0..runs.len() {
            for j in i + 1..runs.len() {
                let (p_suc, r_x, r_z, worst_t) = compare(&runs[i].1, &runs[j].1);
                report.pairs.push(PairDeviation {
                    n: space.n_items(),
                    m: space.marked_count(),
                    eta: noise.eta(),
                    first: runs[i].0.to_string(),
                    second: runs[j].0.to_string(),
                    p_suc,
                    r_x,
                    r_z,
                    worst_t,
                });
            }
        }
    }
    Ok(report)
}

/// Tolerance on any pairwise deviation for `verify`.
pub const VERIFY_TOL: f64 = 1e-9;

/// Default verification grid: N in {4, 16, 64}, M in {1, N/4, N/2},
/// eta in {0.05, 0.2, 0.5, 0.9, 0.99, 1.0}.
pub fn default_grid() -> Vec<(SearchSpace, NoiseLevel)> {
    let mut cells = Vec::new();
    for n in [4u64, 16, 64] {
        let mut ms = vec![1, n / 4, n / 2];
        ms.dedup();
        for m in ms {
            let space = SearchSpace::new(n, m).expect("valid grid");
            for eta in [0.05, 0.2, 0.5, 0.9, 0.99, 1.0] {
                cells.push((space, NoiseLevel::from_eta(eta).expect("valid grid")));
            }
        }
    }
    cells
}

fn engines_for(config: &ExperimentConfig) -> Vec<Box<dyn Engine>> {
    config
        .engine_order()
        .into_iter()
        .map(|kind| -> Box<dyn Engine> {
            match kind {
                EngineKind::Closed => Box::new(ClosedFormEngine {
                    degenerate_tol: config.degenerate_tol,
                }),
                EngineKind::Recursion => Box::new(RecursionEngine),
                EngineKind::Fullstate => Box::new(FullStateEngine {
                    exact_entropy: false,
                }),
            }
        })
        .collect()
}

/// Verifies the configured engines on `cells`, or on the config's own
/// `(N, M) × eta_list` when `cells` is `None`.
pub fn run_verify(
    config: &ExperimentConfig,
    cells: Option<Vec<(SearchSpace, NoiseLevel)>>,
) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let cells = match cells {
        Some(c) => c,
        None => {
            let space = config.space()?;
            config
                .noise_levels()?
                .into_iter()
                .map(|n| (space, n))
                .collect()
        }
    };
    let boxed = engines_for(config);
    let engines: Vec<&dyn Engine> = boxed.iter().map(|b| b.as_ref()).collect();
    verify_cells(&cells, &engines, config.steps, VERIFY_TOL)
}

/// Figure data: one column per eta, indexed by t.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub figure: FigureId,
    pub etas: Vec<f64>,
    /// `values[i][t]` is the plotted quantity for `etas[i]` at step `t`.
    pub values: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn column(&self, eta: f64) -> Option<&[f64]> {
        self.etas
            .iter()
            .position(|&e| e == eta)
            .map(|i| self.values[i].as_slice())
    }

    pub fn write_csv<W: Write>(&self, out: &mut W, precision: usize) -> std::io::Result<()> {
        let mut header = String::from("t");
        for &eta in &self.etas {
            let _ = write!(header, ",eta={}", format_sig(eta, precision));
        }
        writeln!(out, "{header}")?;
        let steps = self.values.first().map_or(0, Vec::len);
        for t in 0..steps {
            let mut line = t.to_string();
            for col in &self.values {
                let _ = write!(line, ",{}", format_sig(col[t], precision));
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

/// Data behind the success-probability and coherence figures, computed with
/// the closed form.
pub fn emit_figure_data(
    figure: FigureId,
    config: &ExperimentConfig,
) -> Result<FigureData, CliError> {
    config.validate()?;
    let space = config.space()?;
    let mut values = Vec::new();
    for (&eta, noise) in config.eta_list.iter().zip(config.noise_levels()?) {
        let case = spectral_data(&space, &noise).case;
        let consistent = match figure {
            FigureId::PsucCaseI | FigureId::CoherenceCaseI => {
                matches!(case, SpectralCase::Oscillatory { .. })
            }
            FigureId::PsucCaseII => matches!(case, SpectralCase::Overdamped { .. }),
        };
        if !consistent {
            return Err(CliError::Usage(format!(
                "eta = {eta} is not in the regime of figure {} ({case:?})",
                figure.as_str()
            )));
        }
        let (_, samples) = run_engine(EngineKind::Closed, config, &space, &noise, config.steps)?;
        values.push(
            samples
                .iter()
                .map(|s| match figure {
                    FigureId::CoherenceCaseI => s.coherence.c1,
                    _ => s.p_suc,
                })
                .collect(),
        );
    }
    Ok(FigureData {
        figure,
        etas: config.eta_list.clone(),
        values,
    })
}
