//! Benchmark composite objectives. Every task is cast as maximization of
//! `g`, so the minimization test functions are negated.

mod calibrate;
mod pricing;
mod special;
mod test_functions;

use std::fmt;
use std::sync::Arc;

use crate::acquisition::Composition;
use crate::domain::Domain;
use crate::error::{Error, Result};

pub use calibrate::{calibrate, default_density, grid_maximize};
pub use pricing::{
    correlated_demand, identical_price, independent_demand, DemandKind, DemandRegionParams,
    INDEP_DEMAND_CANONICAL_SEED,
};
pub use special::{ccdf_gamma, regularized_upper_gamma};
pub use test_functions::{ackley, dixon_price, langermann};

pub type Constituent = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// `h(x, f₁(x), …, f_M(x))`. Revenue compositions need the prices `x`; the
/// test-function compositions ignore it.
pub type OuterFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// How a task's reference optimum is (re)computed.
#[derive(Clone)]
pub enum OptimumOracle {
    /// Closed-form maximizer.
    Known(Vec<f64>),
    /// Dense grid over the domain plus pattern-search polish.
    Grid,
    /// `g` is a sum of per-coordinate terms; each is maximized on a 1-d grid.
    Separable(Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>>),
}

impl fmt::Debug for OptimumOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Known(x) => f.debug_tuple("Known").field(x).finish(),
            Self::Grid => f.write_str("Grid"),
            Self::Separable(t) => write!(f, "Separable({} terms)", t.len()),
        }
    }
}

#[derive(Clone)]
pub struct CompositeObjective {
    name: String,
    domain: Domain,
    constituents: Vec<Constituent>,
    outer: OuterFn,
    g_star: f64,
    oracle: OptimumOracle,
}

impl fmt::Debug for CompositeObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompositeObjective")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("arity", &self.arity())
            .field("g_star", &self.g_star)
            .finish_non_exhaustive()
    }
}

/// The composition with the query point fixed, as seen by acquisitions.
pub struct BoundComposition<'a> {
    x: &'a [f64],
    arity: usize,
    outer: &'a (dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync),
}

impl Composition for BoundComposition<'_> {
    fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    fn eval(&self, values: &[f64]) -> f64 {
        (self.outer)(self.x, values)
    }
}

impl CompositeObjective {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        constituents: Vec<Constituent>,
        outer: OuterFn,
        g_star: f64,
        oracle: OptimumOracle,
    ) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::invalid("an objective needs at least one constituent"));
        }
        if let OptimumOracle::Known(x) = &oracle {
            if x.len() != domain.dim() {
                return Err(Error::DimensionMismatch {
                    expected: domain.dim(),
                    actual: x.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            domain,
            constituents,
            outer,
            g_star,
            oracle,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn arity(&self) -> usize {
        self.constituents.len()
    }

    pub fn g_star(&self) -> f64 {
        self.g_star
    }

    pub fn with_g_star(mut self, g_star: f64) -> Self {
        self.g_star = g_star;
        self
    }

    pub fn oracle(&self) -> &OptimumOracle {
        &self.oracle
    }

    /// The cheap outer function at point `x`.
    pub fn composition_at<'a>(&'a self, x: &'a [f64]) -> BoundComposition<'a> {
        BoundComposition {
            x,
            arity: self.arity(),
            outer: self.outer.as_ref(),
        }
    }

    pub fn compose(&self, x: &[f64], members: &[f64]) -> f64 {
        (self.outer)(x, members)
    }

    /// The expensive part: every constituent at `x`.
    pub fn members(&self, x: &[f64]) -> Vec<f64> {
        self.constituents.iter().map(|f| f(x)).collect()
    }

    pub fn member(&self, i: usize, x: &[f64]) -> f64 {
        (self.constituents[i])(x)
    }

    /// `(members, g)` at `x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<(Vec<f64>, f64)> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        let members = self.members(x);
        let g = self.compose(x, &members);
        Ok((members, g))
    }

    /// `g(x)`; panics on a dimension mismatch.
    pub fn g(&self, x: &[f64]) -> f64 {
        self.compose(x, &self.members(x))
    }
}

pub const TASK_NAMES: [&str; 6] = [
    "langermann",
    "dixon-price",
    "ackley",
    "indep-demand",
    "corr-demand",
    "identical-price",
];

/// Looks a task up by its registry name.
pub fn task(name: &str) -> Result<CompositeObjective> {
    match name {
        "langermann" => Ok(langermann()),
        "dixon-price" => Ok(dixon_price()),
        "ackley" => Ok(ackley()),
        "indep-demand" => Ok(independent_demand(INDEP_DEMAND_CANONICAL_SEED)),
        "corr-demand" => Ok(correlated_demand()),
        "identical-price" => Ok(identical_price()),
        other => Err(Error::UnknownTask(other.to_string())),
    }
}

pub fn all_tasks() -> Vec<CompositeObjective> {
    TASK_NAMES.iter().map(|n| task(n).expect("registered")).collect()
}
