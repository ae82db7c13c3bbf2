use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noisy_grover_cli::experiments::default_grid;
use noisy_grover_cli::{
    emit_figure_data, run_sweep, run_trajectory, run_verify, write_rows, CliError, EngineKind,
    ExperimentConfig, FigureId,
};

#[derive(Debug, Parser)]
#[command(
    name = "noisy-grover",
    version,
    about = "Grover search under collective phase flips"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// P_suc, Bloch vector and coherence for every step.
    Trajectory(CommonArgs),
    /// Terminal values for a list of noise levels.
    Sweep(CommonArgs),
    /// Pairwise comparison of the engines; exits 2 on any deviation above 1e-9.
    Verify(CommonArgs),
    /// Figure data: one column per eta, indexed by t.
    Figure(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Database size (power of two). Without it `verify` runs its default grid.
    #[arg(long)]
    n: Option<u64>,
    /// Number of marked items.
    #[arg(long)]
    m: Option<u64>,
    /// Comma-separated phase damping strengths in (0, 1].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eta: Option<Vec<f64>>,
    /// Number of Grover iterations.
    #[arg(long)]
    steps: Option<u32>,
    /// Comma-separated subset of closed, recursion, fullstate.
    #[arg(long, value_delimiter = ',')]
    engines: Option<Vec<String>>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// psuc_case_i, psuc_case_ii or coherence_case_i.
    #[arg(long)]
    figure_id: Option<String>,
    /// Significant digits of floats in the CSV.
    #[arg(long, default_value_t = 12)]
    precision: usize,
    /// Half-width of the band |eta - A+^2| treated as degenerate.
    #[arg(long, default_value_t = noisy_grover::DEGENERATE_TOL)]
    degenerate_tol: f64,
}

impl CommonArgs {
    fn config(
        &self,
        etas: Vec<f64>,
        steps: u32,
        engines: &[EngineKind],
    ) -> Result<ExperimentConfig, CliError> {
        let engines = match &self.engines {
            Some(names) => names
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<_>, _>>()?,
            None => engines.to_vec(),
        };
        let config = ExperimentConfig {
            n_items: self.n.unwrap_or(64),
            marked_count: self.m.unwrap_or(1),
            eta_list: self.eta.clone().unwrap_or(etas),
            steps: self.steps.unwrap_or(steps),
            engines,
            output_path: self.out.clone(),
            precision: self.precision,
            degenerate_tol: self.degenerate_tol,
        };
        config.validate()?;
        Ok(config)
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep_etas() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 20.0).collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Trajectory(args) => {
            let config = args.config(vec![1.0], 60, &[EngineKind::Closed])?;
            let rows = run_trajectory(&config)?;
            let mut out = open_output(&config.output_path)?;
            write_rows(&mut out, &rows, config.precision)?;
            out.flush()?;
        }
        Command::Sweep(args) => {
            let config = args.config(sweep_etas(), 60, &[EngineKind::Closed])?;
            let rows = run_sweep(&config)?;
            let mut out = open_output(&config.output_path)?;
            write_rows(&mut out, &rows, config.precision)?;
            out.flush()?;
        }
        Command::Verify(args) => {
            let config =
                args.config(vec![0.05, 0.2, 0.5, 0.9, 0.99, 1.0], 100, &EngineKind::ALL)?;
            let cells = if args.n.is_none() && args.m.is_none() && args.eta.is_none() {
                Some(default_grid())
            } else {
                None
            };
            let report = run_verify(&config, cells)?;
            let mut out = open_output(&config.output_path)?;
            report.write_csv(&mut out, config.precision)?;
            out.flush()?;
            if !report.passed() {
                return Err(CliError::Verification(report.failure_summary()));
            }
            eprintln!(
                "verified {} engine pairs, max deviation {:e}",
                report.pairs.len(),
                report.max_deviation()
            );
        }
        Command::Figure(args) => {
            let figure: FigureId = args
                .figure_id
                .as_deref()
                .ok_or_else(|| CliError::Usage("figure requires --figure-id".into()))?
                .parse()?;
            let config = args.config(figure.default_etas(), 60, &[EngineKind::Closed])?;
            let data = emit_figure_data(figure, &config)?;
            let mut out = open_output(&config.output_path)?;
            data.write_csv(&mut out, config.precision)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
