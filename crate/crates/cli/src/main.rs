//! Batch front-end: configuration files, one subcommand per experiment
//! class, CSV outputs.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical
//! (quadrature) failure, 1 anything else. `MMWAVE_SIM_THREADS` caps worker
//! parallelism (0 or unset picks the automatic thread count).

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ceilsim::blockage::{p_blocked, p_random_one_with_budget, p_self, BlockageMode};
use ceilsim::engine::{sweep, validate_blockage, UePlacement};
use ceilsim::geometry::Point2;

use config::FileConfig;
use output::{BlockageCsvRow, MetricsCsvRow};

#[derive(Debug)]
pub struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new(1, message)
    }
}

impl From<ceilsim::Error> for AppError {
    fn from(e: ceilsim::Error) -> Self {
        let code = match e {
            ceilsim::Error::InvalidParameter(_) => 2,
            ceilsim::Error::QuadratureNonConvergence { .. } => 3,
        };
        Self::new(code, e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ceilsim",
    about = "Indoor mmWave network simulator with ceiling-mounted directional APs",
    version
)]
struct Cli {
    /// JSON configuration file; omit to run with the documented defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Override run.seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Override one configuration key, e.g. --set run.trials=5000. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analytical per-AP blockage probability over a distance grid.
    BlockageProb {
        /// Also run explicit-bodies scenes and append empirical columns.
        #[arg(long)]
        validate: bool,
    },
    /// Coverage and ASE for every configured grid point.
    Simulate,
    /// Beamwidth sweep with per-(delta, scenario) coverage optima.
    Sweep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let file = config::load(cli.config.as_deref(), &cli.set, cli.seed)?;
    if cli.dump_config {
        let text = serde_json::to_string_pretty(&file).expect("configuration always serialises");
        println!("{text}");
        return Ok(());
    }
    let threads = match std::env::var("MMWAVE_SIM_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| AppError::config("MMWAVE_SIM_THREADS must be a non-negative integer"))?,
        Err(_) => 0,
    };
    if threads == 0 {
        return dispatch(cli, &file);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| AppError::io(format!("cannot build thread pool: {e}")))?;
    pool.install(|| dispatch(cli, &file))
}

fn dispatch(cli: &Cli, file: &FileConfig) -> Result<(), AppError> {
    match cli.command {
        Command::BlockageProb { validate } => cmd_blockage_prob(cli, file, validate),
        Command::Simulate => cmd_simulate(cli, file),
        Command::Sweep => cmd_sweep(cli, file),
    }
}

fn cmd_blockage_prob(cli: &Cli, file: &FileConfig, validate: bool) -> Result<(), AppError> {
    let venue = file.venue()?;
    let side = venue.side();
    let h_a = file.deployment.ap_height_m;
    let model = file.blockage_prob_model(BlockageMode::Analytic)?;
    let grid = file.blockage_prob_grid()?;

    let empirical = if validate {
        let mut cfg = file.base_simulation()?;
        cfg.blockage = file.blockage_prob_model(BlockageMode::ExplicitBodies)?;
        cfg.delta = file.deployment.inter_site_distance_m;
        cfg.trials = file.blockage_prob.scenes;
        cfg.ue_placement = UePlacement::FixedPoint(Point2::new(side / 2.0, side / 2.0));
        cfg.scenario_label = "blockage-validation".to_string();
        // Bin edges extend one step past the last grid point so that the
        // final row also owns a bin.
        let step = file.blockage_prob.d_step_m;
        let mut edges = grid.clone();
        edges.push(grid.last().unwrap() + step);
        Some((validate_blockage(&cfg, &edges)?, step))
    } else {
        None
    };

    let mut rows = Vec::with_capacity(grid.len());
    for &d in &grid {
        let p1 = p_random_one_with_budget(
            d,
            &model.geometry,
            h_a,
            side,
            model.quadrature_tolerance,
            model.quadrature_budget,
        )?;
        rows.push(BlockageCsvRow {
            d_a: d,
            p_self: p_self(d, &model.geometry, h_a),
            p_random_one: p1,
            p_blocked: p_blocked(d, &model, h_a, side)?,
            empirical: empirical.as_ref().and_then(|(table, step)| {
                table.iter().find(|v| v.d_a >= d && v.d_a < d + step).cloned()
            }),
        });
    }
    let csv = output::blockage_csv(&rows, validate);
    output::write_file(&cli.out.join("blockage_prob.csv"), &csv)
}

/// Pairs engine grid rows with the configured degree values, mirroring the
/// engine's delta -> scenario -> omega_a -> omega_u emission order.
fn grid_rows<'a>(
    file: &FileConfig,
    result: &'a ceilsim::engine::SweepResult,
) -> Vec<MetricsCsvRow<'a>> {
    let seed = file.run.seed;
    let mut rows = Vec::with_capacity(result.grid.rows.len());
    let mut it = result.grid.rows.iter();
    for _delta in &file.run.deltas_m {
        for _scenario in &file.run.scenarios {
            for &wa in &file.run.ap_beamwidths_deg {
                for &wu in &file.run.ue_beamwidths_deg {
                    let row = it.next().expect("grid size matches configuration");
                    debug_assert!((row.omega_a - wa.to_radians()).abs() < 1e-12);
                    debug_assert!((row.omega_u - wu.to_radians()).abs() < 1e-12);
                    rows.push(MetricsCsvRow { row, omega_a_deg: wa, omega_u_deg: wu, seed });
                }
            }
        }
    }
    rows
}

fn run_grid(file: &FileConfig) -> Result<ceilsim::engine::SweepResult, AppError> {
    let base = file.base_simulation()?;
    let spec = file.sweep_spec()?;
    let table = file.scenario_table()?;
    sweep(&base, &spec, &table).map_err(AppError::from)
}

fn cmd_simulate(cli: &Cli, file: &FileConfig) -> Result<(), AppError> {
    let result = run_grid(file)?;
    let csv = output::metrics_csv(&grid_rows(file, &result));
    output::write_file(&cli.out.join("metrics.csv"), &csv)
}

fn cmd_sweep(cli: &Cli, file: &FileConfig) -> Result<(), AppError> {
    let result = run_grid(file)?;
    let csv = output::metrics_csv(&grid_rows(file, &result));
    output::write_file(&cli.out.join("sweep.csv"), &csv)?;
    let optimal = output::optimal_csv(
        &result.optimal,
        &file.run.ap_beamwidths_deg,
        &file.run.ue_beamwidths_deg,
    );
    output::write_file(&cli.out.join("optimal.csv"), &optimal)
}
