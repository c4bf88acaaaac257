//! The sequential optimization driver.
//!
//! Each iteration refits the surrogate(s) from scratch, maximizes the
//! acquisition over the domain, evaluates every constituent at the chosen
//! point and appends the record. Composite strategies keep one independent GP
//! per constituent; vanilla strategies keep one GP on `g` itself.

mod optimizer;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use optimizer::{maximize_acquisition, OptimizerSettings};

use crate::acquisition::{c_ei_with_draws, c_ucb, c_ucb_optimistic, vanilla_ei, vanilla_ucb, McConfig, NormalDraws, UcbSchedule, DEFAULT_MC_SAMPLES};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::gp::{FitConfig, GaussianProcess, PosteriorSummary};
use crate::objectives::CompositeObjective;
use crate::seed::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "vanilla-ei")]
    VanillaEi,
    #[serde(rename = "vanilla-ucb")]
    VanillaUcb,
    #[serde(rename = "c-ei")]
    CompositeEi,
    #[serde(rename = "c-ucb")]
    CompositeUcb,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Self::VanillaEi, Self::VanillaUcb, Self::CompositeEi, Self::CompositeUcb];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::VanillaEi => "vanilla-ei",
            Self::VanillaUcb => "vanilla-ucb",
            Self::CompositeEi => "c-ei",
            Self::CompositeUcb => "c-ucb",
        }
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, Self::CompositeEi | Self::CompositeUcb)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::UnknownStrategy(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub x: Vec<f64>,
    pub member_values: Vec<f64>,
    pub g_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoRunResult {
    pub strategy: Strategy,
    pub seed: u64,
    /// Number of leading records that came from the initial design.
    pub init_points: usize,
    pub records: Vec<EvaluationRecord>,
    pub wall_time_per_iteration: Vec<Duration>,
    /// GP fits performed in each acquisition iteration.
    pub gp_fits_per_iteration: Vec<usize>,
}

impl BoRunResult {
    pub fn iterations(&self) -> usize {
        self.records.len() - self.init_points
    }

    pub fn g_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.g_value)
    }

    pub fn best_g(&self) -> f64 {
        self.g_values().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Wall time of the acquisition loop (initial design excluded).
    pub fn loop_time(&self) -> Duration {
        self.wall_time_per_iteration.iter().sum()
    }
}

/// Which side of each constituent's confidence interval c-ucb feeds to `h`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CucbBound {
    /// `mean_i ± β·sd_i`, signed towards larger `h` (see
    /// [`c_ucb_optimistic`]). Differs from `Literal` only where `h` decreases
    /// in some constituent, as in the negated minimization tasks.
    #[default]
    Optimistic,
    /// Always `mean_i + β·sd_i`.
    Literal,
}

impl CucbBound {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Optimistic => "optimistic",
            Self::Literal => "literal",
        }
    }
}

impl FromStr for CucbBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimistic" => Ok(Self::Optimistic),
            "literal" => Ok(Self::Literal),
            other => Err(Error::invalid(format!("unknown c-ucb bound `{other}` (expected optimistic or literal)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoSettings {
    /// Only `noise_stddev`, `num_starts` and `max_ascent_steps` are used; the
    /// domain always comes from the objective.
    pub fit: FitConfig,
    pub optimizer: OptimizerSettings,
    pub mc_samples: usize,
    pub ucb: UcbSchedule,
    pub cucb_bound: CucbBound,
    /// Fit the constituent GPs on the rayon pool.
    pub parallel_fits: bool,
}

impl Default for BoSettings {
    fn default() -> Self {
        Self {
            fit: FitConfig::default(),
            optimizer: OptimizerSettings::default(),
            mc_samples: DEFAULT_MC_SAMPLES,
            ucb: UcbSchedule::default(),
            cucb_bound: CucbBound::default(),
            parallel_fits: false,
        }
    }
}

/// `s` i.i.d. uniform points in the domain.
pub fn initial_design(domain: &Domain, s: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    (0..s).map(|_| domain.sample_uniform(&mut rng)).collect()
}

const INIT_STREAM: u64 = 0;
const MC_STREAM: u64 = 1;
const SWEEP_STREAM: u64 = 2;

fn fit_all(inputs: &[Vec<f64>], targets: &[Vec<f64>], cfg: &FitConfig, parallel: bool) -> Result<Vec<GaussianProcess>> {
    if parallel {
        targets.par_iter().map(|t| GaussianProcess::fit(inputs, t, cfg)).collect()
    } else {
        targets.iter().map(|t| GaussianProcess::fit(inputs, t, cfg)).collect()
    }
}

fn posteriors(gps: &[GaussianProcess], x: &[f64]) -> Vec<PosteriorSummary> {
    gps.iter()
        .map(|gp| gp.posterior(x).expect("query dimension matches the domain"))
        .collect()
}

/// Picks the next query point; returns it with the number of GP fits made.
fn propose(
    objective: &CompositeObjective,
    strategy: Strategy,
    records: &[EvaluationRecord],
    settings: &BoSettings,
    step: usize,
    iter_seed: u64,
) -> Result<(Vec<f64>, usize)> {
    let domain = objective.domain();
    let fit_cfg = FitConfig {
        domain: Some(domain.clone()),
        ..settings.fit.clone()
    };
    let inputs: Vec<Vec<f64>> = records.iter().map(|r| r.x.clone()).collect();
    let best = records.iter().map(|r| r.g_value).fold(f64::NEG_INFINITY, f64::max);
    let beta = settings.ucb.beta_at(step);
    let sweep_seed = derive_seed(iter_seed, SWEEP_STREAM);

    if strategy.is_composite() {
        let targets: Vec<Vec<f64>> = (0..objective.arity())
            .map(|i| records.iter().map(|r| r.member_values[i]).collect())
            .collect();
        let gps = fit_all(&inputs, &targets, &fit_cfg, settings.parallel_fits)?;
        let x = match strategy {
            Strategy::CompositeEi => {
                let mc = McConfig::new(settings.mc_samples, derive_seed(iter_seed, MC_STREAM))?;
                let draws = NormalDraws::new(mc, objective.arity());
                maximize_acquisition(
                    |x| {
                        c_ei_with_draws(&posteriors(&gps, x), &objective.composition_at(x), best, &draws)
                            .expect("arity matches")
                    },
                    domain,
                    &settings.optimizer,
                    sweep_seed,
                )
            }
            _ => maximize_acquisition(
                |x| {
                    let (posts, h) = (posteriors(&gps, x), objective.composition_at(x));
                    match settings.cucb_bound {
                        CucbBound::Optimistic => c_ucb_optimistic(&posts, &h, beta),
                        CucbBound::Literal => c_ucb(&posts, &h, beta),
                    }
                    .expect("arity matches")
                },
                domain,
                &settings.optimizer,
                sweep_seed,
            ),
        };
        Ok((x, gps.len()))
    } else {
        let targets: Vec<f64> = records.iter().map(|r| r.g_value).collect();
        let gp = GaussianProcess::fit(&inputs, &targets, &fit_cfg)?;
        let post = |x: &[f64]| gp.posterior(x).expect("query dimension matches the domain");
        let x = match strategy {
            Strategy::VanillaEi => maximize_acquisition(|x| vanilla_ei(&post(x), best), domain, &settings.optimizer, sweep_seed),
            _ => maximize_acquisition(|x| vanilla_ucb(&post(x), beta), domain, &settings.optimizer, sweep_seed),
        };
        Ok((x, 1))
    }
}

fn evaluate(objective: &CompositeObjective, x: Vec<f64>) -> Result<EvaluationRecord> {
    let (member_values, g_value) = objective.evaluate(&x)?;
    Ok(EvaluationRecord { x, member_values, g_value })
}

/// Runs `init_points` random evaluations followed by `iterations`
/// acquisition-driven ones. The β schedule advances once per iteration.
pub fn run_bo(
    objective: &CompositeObjective,
    strategy: Strategy,
    iterations: usize,
    init_points: usize,
    settings: &BoSettings,
    seed: u64,
) -> Result<BoRunResult> {
    if iterations == 0 {
        return Err(Error::invalid("iterations must be >= 1"));
    }
    if init_points < 2 {
        return Err(Error::invalid("init_points must be >= 2"));
    }
    if settings.mc_samples == 0 {
        return Err(Error::invalid("mc_samples must be >= 1"));
    }
    let domain = objective.domain();
    let mut records = initial_design(domain, init_points, derive_seed(seed, INIT_STREAM))
        .into_iter()
        .map(|x| evaluate(objective, x))
        .collect::<Result<Vec<_>>>()?;
    let mut wall_time_per_iteration = Vec::with_capacity(iterations);
    let mut gp_fits_per_iteration = Vec::with_capacity(iterations);

    for step in 0..iterations {
        let started = Instant::now();
        let iter_seed = derive_seed(seed, 1 + step as u64);
        let wrap = |e: Error| Error::Iteration {
            iteration: step + 1,
            source: Box::new(e),
        };
        let (x, fits) = propose(objective, strategy, &records, settings, step, iter_seed).map_err(wrap)?;
        debug_assert!(domain.contains(&x));
        records.push(evaluate(objective, x).map_err(wrap)?);
        wall_time_per_iteration.push(started.elapsed());
        gp_fits_per_iteration.push(fits);
    }

    Ok(BoRunResult {
        strategy,
        seed,
        init_points,
        records,
        wall_time_per_iteration,
        gp_fits_per_iteration,
    })
}
