use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use magsync::experiments::{run_sweep, Scenario};
use magsync::io::{parse_config, parse_grid, write_run, ConfigError, TrajectoryColumns};

const EXIT_CONFIG: u8 = 2;
const EXIT_DIVERGED: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "magsync", version, about = "Magnon-cavity synchronization simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario preset (and its default grid, if any).
    Simulate(Common),
    /// Run a scenario over explicit parameter grids.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `key=v1,v2,...`; repeat for a Cartesian product.
        #[arg(long, required = true)]
        grid: Vec<String>,
    },
}

#[derive(Args)]
struct Common {
    /// limit-cycle, phase-locked, sync-timeseries, thermal-sweep or custom.
    #[arg(long)]
    scenario: Option<String>,
    /// TOML config document; the command line wins where both set a value.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: out/<scenario>].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    parallelism: Option<usize>,
    /// Write all 21 covariance entries instead of the default 8.
    #[arg(long)]
    full_covariance: bool,
    /// Track and write the fluctuation mean driven by the F terms.
    #[arg(long = "include-F")]
    include_f: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_CONFIG, message: format!("config error: {e}") }
    }
}

fn run(common: Common, grid: Option<Vec<String>>) -> Result<(), Failure> {
    let scenario = common
        .scenario
        .as_deref()
        .map(|s| s.parse::<Scenario>())
        .transpose()
        .map_err(Failure::config)?;
    let text = match &common.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?,
        None if scenario.is_none() => return Err(Failure::config("either --scenario or --config is required")),
        None => String::new(),
    };
    let mut resolved = parse_config(&text, scenario).map_err(Failure::config)?;
    if let Some(grid) = grid {
        resolved.spec.overrides = grid.iter().map(|g| parse_grid(g)).collect::<Result<_, ConfigError>>().map_err(Failure::config)?;
    }
    if let Some(n) = common.parallelism {
        resolved.spec.parallelism = n;
    }
    if common.include_f {
        resolved.config.include_fluctuation_drive = true;
    }
    // Re-resolve so command-line edits get the same validation as the file.
    resolved = parse_config(&magsync::io::serialize_config(&resolved), None).map_err(Failure::config)?;

    let out = common.out.unwrap_or_else(|| Path::new("out").join(resolved.spec.scenario.name()));
    let start = Instant::now();
    let result = run_sweep(&resolved.spec, &resolved.config).map_err(Failure::config)?;
    let columns = TrajectoryColumns { full_covariance: common.full_covariance, fluctuation_mean: common.include_f };
    write_run(&result, &resolved, &out, columns, start.elapsed().as_secs_f64())
        .map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;

    for p in &result.points {
        match &p.outcome {
            Ok(m) => eprintln!(
                "point {}: phi = {:.6}, tail S_q^phi = {:.6} ({:.1}s)",
                p.index,
                m.phi_tail_median,
                m.sq_phi_tail_median,
                p.runtime.as_secs_f64()
            ),
            Err(e) => eprintln!("point {}: {e}", p.index),
        }
    }
    eprintln!("wrote {}", out.display());
    match result.failures() {
        0 => Ok(()),
        n => Err(Failure { code: EXIT_DIVERGED, message: format!("{n} of {} points diverged", result.points.len()) }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(common) => run(common, None),
        Command::Sweep { common, grid } => run(common, Some(grid)),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("magsync: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
