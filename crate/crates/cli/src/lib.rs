//! Command-line harness: runs the optimizer on an instance, logs
//! convergence and exports the final front.

mod hypervolume;
mod report;

pub use hypervolume::hypervolume_2d;
pub use report::{generation_entries, reference_point, ConfigEcho, FinalArchive, GenerationEntry, RunReport};

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use scn_core::io::{self, front_rows, generate_instance, write_front_csv, write_plot, IoError, Preset};
use scn_core::moea::evolve_with;
use scn_core::{EngineConfig, Instance, ModelOptions, ScnProblem};

pub const FRONT_CSV: &str = "front.csv";
pub const REPORT_JSON: &str = "report.json";
pub const PLOT_DAT: &str = "front.dat";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    Argument(String),
}

impl CliError {
    /// 1 usage, 2 rejected input, 3 failure while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Argument(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Read { .. } | IoError::Parse { .. } | IoError::Validation { .. } => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "scn",
    version,
    about = "Cost/delay trade-offs for three-echelon supply chain networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize an instance and export its front.
    Run(RunArgs),
    /// Write a synthetic instance.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Instance file, or the name of a bundled instance (`tiny`).
    #[arg(long)]
    pub instance: String,
    /// Output directory; created if missing.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Population size [default: 100, or 1290 with --paper-params]
    #[arg(long)]
    pub pop_size: Option<usize>,
    /// Generations [default: 200, or 500 with --paper-params]
    #[arg(long)]
    pub generations: Option<usize>,
    /// Crossover probability [default: 0.6]
    #[arg(long)]
    pub crossover_prob: Option<f64>,
    /// Per-gene mutation probability [default: 0.01]
    #[arg(long)]
    pub mutation_prob: Option<f64>,
    /// SBX distribution index [default: 15]
    #[arg(long)]
    pub sbx_eta: Option<f64>,
    /// Polynomial mutation distribution index [default: 20]
    #[arg(long)]
    pub pm_eta: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Use the published run settings: 1290 individuals, 500 generations.
    #[arg(long)]
    pub paper_params: bool,
    /// Charge holding cost on backlog instead of on-hand stock.
    #[arg(long)]
    pub holding_on_backorder: bool,
    /// Let plants ship any per-period amount instead of a level rate.
    #[arg(long)]
    pub unlevel_production: bool,
    /// Evaluation threads. Output does not depend on this.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// tiny, desk or sbc-scale
    #[arg(long)]
    pub preset: Preset,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

impl RunArgs {
    /// Explicit flags win over `--paper-params`, which wins over defaults.
    pub fn engine_config(&self) -> EngineConfig {
        let base = if self.paper_params {
            EngineConfig::case_study()
        } else {
            EngineConfig::default()
        };
        EngineConfig {
            population_size: self.pop_size.unwrap_or(base.population_size),
            generations: self.generations.unwrap_or(base.generations),
            crossover_prob: self.crossover_prob.unwrap_or(base.crossover_prob),
            mutation_prob: self.mutation_prob.unwrap_or(base.mutation_prob),
            sbx_eta: self.sbx_eta.unwrap_or(base.sbx_eta),
            pm_eta: self.pm_eta.unwrap_or(base.pm_eta),
            seed: self.seed,
            eval_threads: self.jobs,
        }
    }

    pub fn model_options(&self) -> ModelOptions {
        ModelOptions {
            holding_on_backorder: self.holding_on_backorder,
            level_production: !self.unlevel_production,
        }
    }
}

/// A path that exists wins over a bundled name.
pub fn resolve_instance(name_or_path: &str) -> Result<Instance, CliError> {
    let path = Path::new(name_or_path);
    if !path.exists() {
        if let Some(inst) = io::builtin_instance(name_or_path) {
            return Ok(inst);
        }
    }
    Ok(io::load_instance(path)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn say(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|e| CliError::Runtime(format!("cannot write to stdout: {e}")))
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<RunReport, CliError> {
    let config = args.engine_config();
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let instance = resolve_instance(&args.instance)?;
    let echo = ConfigEcho {
        instance: instance.name.clone(),
        population_size: config.population_size,
        generations: config.generations,
        crossover_prob: config.crossover_prob,
        mutation_prob: config.mutation_prob,
        sbx_eta: config.sbx_eta,
        pm_eta: config.pm_eta,
        seed: config.seed,
        holding_on_backorder: args.holding_on_backorder,
        level_production: !args.unlevel_production,
    };
    say(
        out,
        format_args!(
            "config: instance={} pop={} generations={} crossover={} mutation={} sbx_eta={} pm_eta={} seed={} holding_on_backorder={} level_production={} jobs={}",
            echo.instance,
            echo.population_size,
            echo.generations,
            echo.crossover_prob,
            echo.mutation_prob,
            echo.sbx_eta,
            echo.pm_eta,
            echo.seed,
            echo.holding_on_backorder,
            echo.level_production,
            config.eval_threads
        ),
    )?;

    let problem = ScnProblem::new(instance, args.model_options()).map_err(|e| CliError::Validation(e.to_string()))?;
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", args.out.display())))?;

    let started = Instant::now();
    let mut snapshots: Vec<Vec<Vec<f64>>> = Vec::with_capacity(config.generations + 1);
    let outcome = evolve_with(&problem, &config, |view| {
        snapshots.push(view.archive.objective_points())
    })
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    let wall_time = started.elapsed();

    let reference = reference_point(&snapshots);
    let generations = generation_entries(&outcome.log, &snapshots, &reference)?;

    let rows = front_rows(&outcome.archive, &problem)?;
    write_front_csv(&rows, args.out.join(FRONT_CSV))?;
    write_plot(&rows, args.out.join(PLOT_DAT))?;
    let report = RunReport {
        config: echo,
        hypervolume_reference: reference.into_inner(),
        generations,
        final_archive: FinalArchive {
            size: outcome.archive.len(),
            exported_rows: rows.len(),
            front_csv: FRONT_CSV.into(),
            plot_file: PLOT_DAT.into(),
        },
        wall_time,
    };
    write_file(&args.out.join(REPORT_JSON), &report.to_json())?;

    if rows.is_empty() {
        say(
            out,
            format_args!("warning: no feasible network found; the front is empty"),
        )?;
    }
    let last = report.generations.last().expect("generation 0 is always logged");
    say(
        out,
        format_args!(
            "done: {} front rows, archive {}, hypervolume {:.6e}, {:.2} s, output in {}",
            rows.len(),
            report.final_archive.size,
            last.hypervolume,
            wall_time.as_secs_f64(),
            args.out.display()
        ),
    )?;
    Ok(report)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<Instance, CliError> {
    let inst = generate_instance(&args.preset.params(args.seed));
    io::save_instance(&inst, &args.out)?;
    say(
        out,
        format_args!(
            "wrote {} ({} suppliers, {} plants, {} DCs, {} retailers, {} periods, genotype length {})",
            args.out.display(),
            inst.suppliers,
            inst.plants,
            inst.dcs,
            inst.retailers,
            inst.periods,
            inst.genotype_len()
        ),
    )?;
    Ok(inst)
}

/// Parses `argv` (program name first), dispatches and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                1
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args, out).map(|_| ()),
        Command::Generate(args) => cmd_generate(args, out).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
