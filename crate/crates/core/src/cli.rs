//! The `compbo` command line: `list-tasks`, `run`, `calibrate` and `plot`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::benchmark::{run_experiment_on, write_artifacts, ExperimentConfig, G_STAR_SLACK};
use crate::bo::{CucbBound, Strategy};
use crate::error::{Error, Result};
use crate::objectives::{self, calibrate, default_density, CompositeObjective, TASK_NAMES};
use crate::plot::plot_results;

#[derive(Debug, Parser)]
#[command(name = "compbo", version, about = "Bayesian optimization of composite functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Show the registered benchmark tasks.
    ListTasks {
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Run a multi-run experiment and write its results.
    Run(RunArgs),
    /// Recompute a task's reference optimum.
    Calibrate(CalibrateArgs),
    /// Render a results CSV as an SVG chart.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// CSV files only.
    Csv,
    /// CSV files plus `results.json` with the aggregate curves.
    Json,
}

fn parse_task(s: &str) -> std::result::Result<String, String> {
    if TASK_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown task `{s}` (known: {})", TASK_NAMES.join(", ")))
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON experiment config; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Task name [default: dixon-price].
    #[arg(long, value_parser = parse_task)]
    pub task: Option<String>,
    /// Repeat to run several strategies; all four when omitted.
    #[arg(long = "strategy")]
    pub strategies: Vec<Strategy>,
    /// Independent runs per strategy [default: 100].
    #[arg(long)]
    pub runs: Option<usize>,
    /// Acquisition iterations per run [default: 70].
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Random initial points per run [default: 10].
    #[arg(long)]
    pub init_points: Option<usize>,
    /// Monte Carlo draws for c-ei [default: 128].
    #[arg(long)]
    pub mc_samples: Option<usize>,
    /// Initial UCB weight [default: 1].
    #[arg(long)]
    pub beta0: Option<f64>,
    /// Per-iteration multiplier of the UCB weight [default: 0.99].
    #[arg(long)]
    pub beta_decay: Option<f64>,
    /// Base seed; run k uses seed + k [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for independent runs [default: 1].
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// `optimistic` or `literal` confidence bound for c-ucb [default: optimistic].
    #[arg(long)]
    pub cucb_bound: Option<CucbBound>,
    #[arg(long, default_value = "results")]
    pub output_dir: PathBuf,
    /// Name of the run directory; defaults to `run-<unix seconds>`.
    #[arg(long)]
    pub tag: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Also write `regret.svg`.
    #[arg(long)]
    pub emit_plot: bool,
    /// Calibration store whose g_star values override the built-in ones.
    #[arg(long)]
    pub calibration: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, value_parser = parse_task)]
    pub task: String,
    /// Grid points per axis; a task-specific default when omitted.
    #[arg(long)]
    pub density: Option<usize>,
    /// Accept a value below the current one.
    #[arg(long)]
    pub force: bool,
    /// Calibration store to read the current value from and update.
    #[arg(long, default_value = "calibration.json")]
    pub store: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Serialize)]
struct TaskInfo<'a> {
    name: &'a str,
    dim: usize,
    arity: usize,
    lower: &'a [f64],
    upper: &'a [f64],
    g_star: f64,
}

/// Task name to calibrated g_star.
#[derive(Debug, Default, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationStore {
    pub g_star: BTreeMap<String, f64>,
}

impl CalibrationStore {
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        Ok(serde_json::from_reader(File::open(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }

    pub fn apply(&self, objective: CompositeObjective) -> CompositeObjective {
        match self.g_star.get(objective.name()) {
            Some(&g) => objective.with_g_star(g),
            None => objective,
        }
    }
}

fn list_tasks(format: ListFormat, out: &mut dyn Write) -> Result<()> {
    let tasks = objectives::all_tasks();
    match format {
        ListFormat::Text => {
            for t in &tasks {
                writeln!(
                    out,
                    "{} d={} M={} domain={} g_star={}",
                    t.name(),
                    t.dim(),
                    t.arity(),
                    t.domain().describe(),
                    t.g_star()
                )?;
            }
        }
        ListFormat::Json => {
            let info: Vec<TaskInfo> = tasks
                .iter()
                .map(|t| TaskInfo {
                    name: t.name(),
                    dim: t.dim(),
                    arity: t.arity(),
                    lower: t.domain().lower(),
                    upper: t.domain().upper(),
                    g_star: t.g_star(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &info)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Config file (if any) overlaid with the explicit flags.
pub fn resolve_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut c = match &args.config {
        Some(path) => serde_json::from_reader(File::open(path)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(t) = &args.task {
        c.task = t.clone();
    }
    if !args.strategies.is_empty() {
        c.strategies = args.strategies.clone();
    }
    macro_rules! overlay {
        ($($flag:ident => $field:ident),*) => {
            $(if let Some(v) = args.$flag { c.$field = v; })*
        };
    }
    overlay!(runs => runs, iterations => iterations, init_points => init_points, mc_samples => mc_samples,
             beta0 => beta0, beta_decay => beta_decay, seed => base_seed, parallelism => parallelism,
             cucb_bound => cucb_bound);
    c.validate()?;
    Ok(c)
}

fn run(args: &RunArgs, out: &mut dyn Write) -> Result<PathBuf> {
    let config = resolve_config(args)?;
    let mut objective = objectives::task(&config.task)?;
    if let Some(path) = &args.calibration {
        objective = CalibrationStore::load(path)?.apply(objective);
    }
    let tag = match &args.tag {
        Some(t) => t.clone(),
        None => format!("run-{}", SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())),
    };
    let dir = args.output_dir.join(&config.task).join(tag);

    writeln!(
        out,
        "task={} strategies={} runs={} iterations={} init_points={} mc_samples={} beta0={} beta_decay={} seed={} parallelism={} cucb_bound={}",
        config.task,
        config.strategies.iter().map(Strategy::as_str).collect::<Vec<_>>().join(","),
        config.runs,
        config.iterations,
        config.init_points,
        config.mc_samples,
        config.beta0,
        config.beta_decay,
        config.base_seed,
        config.parallelism,
        config.cucb_bound.as_str(),
    )?;
    let experiment = run_experiment_on(&objective, &config)?;
    write_artifacts(&experiment, &dir)?;
    if args.format == OutputFormat::Json {
        let mut f = File::create(dir.join("results.json"))?;
        serde_json::to_writer_pretty(&mut f, &experiment.curves)?;
        writeln!(f)?;
    }
    if args.emit_plot {
        plot_results(&dir.join("results.csv"), &dir.join("regret.svg"))?;
    }
    for c in &experiment.curves {
        writeln!(
            out,
            "{:<12} final log10 regret {:>8.4}  mean loop time {:.3}s",
            c.strategy.as_str(),
            c.final_r(),
            c.runtime_total_seconds
        )?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(dir)
}

fn calibrate_cmd(args: &CalibrateArgs, out: &mut dyn Write) -> Result<()> {
    let mut store = CalibrationStore::load(&args.store)?;
    let objective = store.apply(objectives::task(&args.task)?);
    let density = args.density.unwrap_or_else(|| default_density(&objective));
    let old = objective.g_star();
    let new = calibrate(&objective, density)?;
    writeln!(out, "{}: stored g_star {old} -> recomputed {new} (density {density})", args.task)?;
    if new < old - G_STAR_SLACK && !args.force {
        return Err(Error::invalid(format!(
            "refusing to lower g_star of {} by {:e}; rerun with --force to accept",
            args.task,
            old - new
        )));
    }
    store.g_star.insert(args.task.clone(), new);
    store.save(&args.store)?;
    writeln!(out, "updated {}", args.store.display())?;
    Ok(())
}

/// Executes one parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::ListTasks { format } => list_tasks(*format, out),
        Command::Run(args) => run(args, out).map(|_| ()),
        Command::Calibrate(args) => calibrate_cmd(args, out),
        Command::Plot(args) => {
            plot_results(&args.input, &args.output)?;
            writeln!(out, "wrote {}", args.output.display())?;
            Ok(())
        }
    }
}

/// Parses `args` and runs the command. Returns the process exit code:
/// 0 on success, 2 for usage errors, 1 for everything else.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with_args(std::iter::once("compbo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn parse_run(args: &[&str]) -> RunArgs {
        match Cli::try_parse_from(std::iter::once("compbo").chain(std::iter::once("run")).chain(args.iter().copied()))
            .unwrap()
            .command
        {
            Command::Run(r) => r,
            _ => unreachable!(),
        }
    }

    #[test]
    fn list_tasks_text() {
        let (code, out, _) = run_cli(&["list-tasks"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.contains("dixon-price d=5 M=5 domain=[-10,10]^5"));
    }

    #[test]
    fn list_tasks_json() {
        let (code, out, _) = run_cli(&["list-tasks", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 6);
    }

    #[test]
    fn defaults_follow_protocol() {
        let c = resolve_config(&parse_run(&[])).unwrap();
        assert_eq!(c, ExperimentConfig::default());
        assert_eq!((c.iterations, c.init_points, c.runs, c.mc_samples), (70, 10, 100, 128));
        assert_eq!((c.beta0, c.beta_decay), (1.0, 0.99));
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"task": "ackley", "runs": 7, "iterations": 12, "strategies": ["c-ei"]}"#).unwrap();
        let p = path.to_str().unwrap();
        let c = resolve_config(&parse_run(&["--config", p, "--runs", "3", "--strategy", "c-ucb"])).unwrap();
        assert_eq!(c.task, "ackley");
        assert_eq!(c.iterations, 12);
        assert_eq!(c.runs, 3);
        assert_eq!(c.strategies, vec![Strategy::CompositeUcb]);
        assert_eq!(c.init_points, 10);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_cli(&["run", "--task", "rosenbrock"]).0, 2);
        assert_eq!(run_cli(&["run", "--strategy", "pi"]).0, 2);
        assert_eq!(run_cli(&["frobnicate"]).0, 2);
    }

    #[test]
    fn zero_runs_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, _, err) = run_cli(&["run", "--task", "ackley", "--runs", "0", "--output-dir", d]);
        assert_eq!(code, 1);
        assert!(err.contains("runs"));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn small_run_layout() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let (code, out, err) = run_cli(&[
            "run", "--task", "ackley", "--strategy", "c-ucb", "--runs", "2", "--iterations", "4", "--init-points", "3",
            "--seed", "7", "--output-dir", d, "--tag", "t1", "--format", "json", "--emit-plot",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("task=ackley strategies=c-ucb runs=2 iterations=4 init_points=3 mc_samples=128"));
        let run_dir = dir.path().join("ackley").join("t1");
        for f in ["results.csv", "traces.log", "runtime.csv", "config.json", "results.json", "regret.svg"] {
            assert!(run_dir.join(f).is_file(), "{f}");
        }
        let csv = std::fs::read_to_string(run_dir.join("results.csv")).unwrap();
        assert_eq!(csv.lines().filter(|l| l.starts_with("ackley,c-ucb,")).count(), 4);
    }

    #[test]
    fn calibrate_known_optimum_and_refusal() {
        let dir = tempfile::tempdir().unwrap();
        let store = dir.path().join("cal.json");
        let s = store.to_str().unwrap();
        let (code, out, _) = run_cli(&["calibrate", "--task", "ackley", "--store", s]);
        assert_eq!(code, 0);
        assert!(out.contains("stored g_star 0"));
        let saved = CalibrationStore::load(&store).unwrap();
        assert!(saved.g_star["ackley"].abs() < 1e-9);

        // an inflated stored value must not be silently lowered
        let mut high = saved.clone();
        high.g_star.insert("ackley".into(), 1.0);
        high.save(&store).unwrap();
        let (code, _, err) = run_cli(&["calibrate", "--task", "ackley", "--store", s]);
        assert_eq!(code, 1);
        assert!(err.contains("--force"));
        assert_eq!(CalibrationStore::load(&store).unwrap().g_star["ackley"], 1.0);
        let (code, _, _) = run_cli(&["calibrate", "--task", "ackley", "--store", s, "--force"]);
        assert_eq!(code, 0);
        assert!(CalibrationStore::load(&store).unwrap().g_star["ackley"].abs() < 1e-9);
    }

    #[test]
    fn plot_errors_on_missing_input() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("x.svg");
        let (code, _, _) = run_cli(&["plot", "--input", "/nonexistent.csv", "--output", out.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(!out.exists());
    }
}
