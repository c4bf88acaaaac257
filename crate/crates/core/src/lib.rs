//! Bayesian optimization of composite objectives `g(x) = h(f₁(x), …, f_M(x))`
//! where each constituent `f_i` is an expensive black box with its own
//! independent Gaussian process model and `h` is known and cheap.
//!
//! The crate provides the GP layer ([`gp`]), the acquisition functions
//! ([`acquisition`]: vanilla EI/UCB plus the composite cEI and cUCB), the
//! sequential driver ([`bo`]), the benchmark objectives ([`objectives`]) and
//! the experiment harness ([`benchmark`]). The `compbo` binary wraps them ([`cli`]).

pub mod acquisition;
pub mod benchmark;
pub mod bo;
pub mod cli;
pub mod domain;
pub mod error;
pub mod gp;
pub mod objectives;
pub mod plot;
pub mod search;
pub mod seed;

pub use acquisition::{c_ei, c_ucb, c_ucb_optimistic, vanilla_ei, vanilla_ucb, CompositionFn, McConfig, NormalDraws, UcbSchedule};
pub use bo::{run_bo, BoRunResult, BoSettings, CucbBound, EvaluationRecord, Strategy};
pub use domain::Domain;
pub use error::{Error, Result};
pub use gp::{FitConfig, GaussianProcess, KernelHyperparams, PosteriorSummary};
pub use objectives::CompositeObjective;
