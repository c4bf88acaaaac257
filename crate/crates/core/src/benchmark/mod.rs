//! Multi-run experiments: independent seeded runs per strategy, regret
//! aggregation, runtime accounting and results files.

mod artifacts;
mod regret;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use artifacts::{read_results_csv, write_artifacts, write_config_json, write_results_csv, write_runtime_csv, write_traces, ResultsRow};
pub use regret::{aggregate, regret_trace, running_min_regret, AggregateCurve, RegretTrace, G_STAR_SLACK, LOG10_FLOOR};

use crate::acquisition::{UcbSchedule, DEFAULT_MC_SAMPLES};
use crate::bo::{run_bo, BoRunResult, BoSettings, CucbBound, Strategy};
use crate::error::{Error, Result};
use crate::objectives::{self, CompositeObjective};

/// Missing fields take their defaults when deserialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub task: String,
    pub strategies: Vec<Strategy>,
    pub runs: usize,
    pub iterations: usize,
    pub init_points: usize,
    pub mc_samples: usize,
    pub beta0: f64,
    pub beta_decay: f64,
    pub base_seed: u64,
    /// Worker threads for the run pool.
    pub parallelism: usize,
    pub cucb_bound: CucbBound,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let ucb = UcbSchedule::default();
        Self {
            task: "dixon-price".to_string(),
            strategies: Strategy::ALL.to_vec(),
            runs: 100,
            iterations: 70,
            init_points: 10,
            mc_samples: DEFAULT_MC_SAMPLES,
            beta0: ucb.beta0,
            beta_decay: ucb.decay,
            base_seed: 0,
            parallelism: 1,
            cucb_bound: CucbBound::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.strategies.is_empty() {
            return Err(Error::invalid("at least one strategy is required"));
        }
        if self.runs == 0 {
            return Err(Error::invalid("runs must be >= 1"));
        }
        if self.iterations == 0 {
            return Err(Error::invalid("iterations must be >= 1"));
        }
        if self.init_points < 2 {
            return Err(Error::invalid("init_points must be >= 2"));
        }
        if self.mc_samples == 0 {
            return Err(Error::invalid("mc_samples must be >= 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::invalid("parallelism must be >= 1"));
        }
        UcbSchedule::new(self.beta0, self.beta_decay)?;
        Ok(())
    }

    pub fn bo_settings(&self) -> Result<BoSettings> {
        Ok(BoSettings {
            mc_samples: self.mc_samples,
            ucb: UcbSchedule::new(self.beta0, self.beta_decay)?,
            cucb_bound: self.cucb_bound,
            ..BoSettings::default()
        })
    }

    pub fn run_seed(&self, run_index: usize) -> u64 {
        self.base_seed.wrapping_add(run_index as u64)
    }
}

/// Everything an experiment produced, per strategy in config order.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub g_star: f64,
    pub curves: Vec<AggregateCurve>,
    pub runs: Vec<Vec<BoRunResult>>,
    pub traces: Vec<Vec<RegretTrace>>,
}

impl Experiment {
    pub fn curve(&self, strategy: Strategy) -> Option<&AggregateCurve> {
        self.curves.iter().find(|c| c.strategy == strategy)
    }
}

/// Resolves the task by name and runs the experiment on it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment> {
    let objective = objectives::task(&config.task)?;
    run_experiment_on(&objective, config)
}

/// Runs `config.runs` seeded runs of every strategy on `objective`. Runs
/// with the same index share a seed, and so an initial design, across
/// strategies.
pub fn run_experiment_on(objective: &CompositeObjective, config: &ExperimentConfig) -> Result<Experiment> {
    config.validate()?;
    let settings = config.bo_settings()?;
    let jobs: Vec<(Strategy, usize)> = config
        .strategies
        .iter()
        .flat_map(|&s| (0..config.runs).map(move |k| (s, k)))
        .collect();
    let run_one = |&(strategy, k): &(Strategy, usize)| {
        let seed = config.run_seed(k);
        run_bo(objective, strategy, config.iterations, config.init_points, &settings, seed).map_err(|e| Error::RunFailed {
            strategy: strategy.to_string(),
            run_index: k,
            seed,
            source: Box::new(e),
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<BoRunResult>> = pool.install(|| jobs.par_iter().map(run_one).collect());

    let mut flat = Vec::with_capacity(results.len());
    for r in results {
        flat.push(r?);
    }
    let g_star = objective.g_star();
    let mut runs = Vec::new();
    let mut traces = Vec::new();
    let mut curves = Vec::new();
    for (chunk, &strategy) in flat.chunks(config.runs).zip(&config.strategies) {
        let t = chunk
            .iter()
            .enumerate()
            .map(|(k, r)| regret_trace(r, g_star, k))
            .collect::<Result<Vec<_>>>()?;
        let seconds = chunk.iter().map(|r| r.loop_time().as_secs_f64()).sum::<f64>() / chunk.len() as f64;
        curves.push(aggregate(strategy, &t, seconds)?);
        traces.push(t);
        runs.push(chunk.to_vec());
    }
    Ok(Experiment {
        config: config.clone(),
        g_star,
        curves,
        runs,
        traces,
    })
}
