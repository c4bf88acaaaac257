//! Regret traces and their aggregation into log-regret curves.

use serde::{Deserialize, Serialize};

use crate::bo::{BoRunResult, Strategy};
use crate::error::{Error, Result};

/// `log10` of a zero mean regret maps here.
pub const LOG10_FLOOR: f64 = -12.0;

/// Allowed excess of an observed value over `g_star` before calibration is
/// considered wrong.
pub const G_STAR_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretTrace {
    pub run_index: usize,
    /// Running minimum of the instantaneous regret, one entry per
    /// acquisition iteration. Entry `i` also covers the initial design.
    pub min_regret: Vec<f64>,
}

/// Running minima of `g_star − g` over `g_values`, starting from `seed`.
pub fn running_min_regret(g_values: impl IntoIterator<Item = f64>, g_star: f64, seed: Option<f64>) -> Result<Vec<f64>> {
    let mut current = seed.unwrap_or(f64::INFINITY);
    let mut out = Vec::new();
    for g in g_values {
        if !(g <= g_star + G_STAR_SLACK) {
            return Err(Error::GStarTooLow { g_star, observed: g });
        }
        current = current.min((g_star - g).max(0.0));
        out.push(current);
    }
    Ok(out)
}

/// m_i for the `T` acquisition iterations of `result`, seeded with the best
/// regret of its initial design.
pub fn regret_trace(result: &BoRunResult, g_star: f64, run_index: usize) -> Result<RegretTrace> {
    let (init, acquired) = result.records.split_at(result.init_points);
    let seed = if init.is_empty() {
        None
    } else {
        running_min_regret(init.iter().map(|r| r.g_value), g_star, None)?.last().copied()
    };
    let min_regret = running_min_regret(acquired.iter().map(|r| r.g_value), g_star, seed)?;
    Ok(RegretTrace { run_index, min_regret })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateCurve {
    pub strategy: Strategy,
    /// Mean of `m_i` across runs.
    pub mean_min_regret: Vec<f64>,
    /// `log10(mean_min_regret)`, floored at [`LOG10_FLOOR`].
    pub r: Vec<f64>,
    /// Mean wall time of one run's acquisition loop.
    pub runtime_total_seconds: f64,
    pub runs: usize,
}

impl AggregateCurve {
    pub fn final_r(&self) -> f64 {
        *self.r.last().expect("curves have at least one iteration")
    }
}

fn floored_log10(v: f64) -> f64 {
    if v > 0.0 {
        v.log10().max(LOG10_FLOOR)
    } else {
        LOG10_FLOOR
    }
}

/// Element-wise mean of the traces, then `log10`.
pub fn aggregate(strategy: Strategy, traces: &[RegretTrace], runtime_total_seconds: f64) -> Result<AggregateCurve> {
    let first = traces.first().ok_or_else(|| Error::invalid("aggregate needs at least one trace"))?;
    let len = first.min_regret.len();
    if let Some(t) = traces.iter().find(|t| t.min_regret.len() != len) {
        return Err(Error::invalid(format!(
            "trace of run {} has {} entries, expected {len}",
            t.run_index,
            t.min_regret.len()
        )));
    }
    let k = traces.len() as f64;
    let mean_min_regret: Vec<f64> = (0..len)
        .map(|i| traces.iter().map(|t| t.min_regret[i]).sum::<f64>() / k)
        .collect();
    let r = mean_min_regret.iter().map(|&m| floored_log10(m)).collect();
    Ok(AggregateCurve {
        strategy,
        mean_min_regret,
        r,
        runtime_total_seconds,
        runs: traces.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bo::EvaluationRecord;
    use proptest::prelude::{prop, prop_assert, prop_assert_eq, proptest};

    fn result_with(g: &[f64], init_points: usize) -> BoRunResult {
        BoRunResult {
            strategy: Strategy::CompositeUcb,
            seed: 0,
            init_points,
            records: g
                .iter()
                .map(|&g_value| EvaluationRecord {
                    x: vec![0.0],
                    member_values: vec![g_value],
                    g_value,
                })
                .collect(),
            wall_time_per_iteration: vec![],
            gp_fits_per_iteration: vec![],
        }
    }

    fn trace(v: &[f64]) -> RegretTrace {
        RegretTrace {
            run_index: 0,
            min_regret: v.to_vec(),
        }
    }

    #[test]
    fn worked_example() {
        let t = regret_trace(&result_with(&[1.0, 3.0, 2.0], 0), 3.0, 0).unwrap();
        assert_eq!(t.min_regret, vec![2.0, 0.0, 0.0]);
    }

    #[test]
    fn initial_design_seeds_the_trace() {
        let t = regret_trace(&result_with(&[0.0, 2.5, 1.0, 2.0, 2.9], 2), 3.0, 0).unwrap();
        assert_eq!(t.min_regret.len(), 3);
        assert_eq!(t.min_regret[0], 0.5);
        assert_eq!(t.min_regret[1], 0.5);
        assert!((t.min_regret[2] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn optimal_values_give_zero_trace() {
        let t = regret_trace(&result_with(&[3.0; 4], 0), 3.0, 0).unwrap();
        assert_eq!(t.min_regret, vec![0.0; 4]);
    }

    #[test]
    fn slightly_exceeding_g_star_is_clamped() {
        let t = regret_trace(&result_with(&[3.0 + 5e-7], 0), 3.0, 0).unwrap();
        assert_eq!(t.min_regret, vec![0.0]);
        assert!(matches!(
            regret_trace(&result_with(&[3.1], 0), 3.0, 0),
            Err(Error::GStarTooLow { .. })
        ));
    }

    #[test]
    fn aggregation_examples() {
        let c = aggregate(Strategy::VanillaEi, &[trace(&[10.0, 1.0, 0.1])], 0.0).unwrap();
        assert_eq!(c.r, vec![1.0, 0.0, -1.0]);
        let c = aggregate(Strategy::VanillaEi, &[trace(&[2.0, 2.0]), trace(&[0.0, 0.0])], 0.0).unwrap();
        assert_eq!(c.mean_min_regret, vec![1.0, 1.0]);
        assert_eq!(c.r, vec![0.0, 0.0]);
        let c = aggregate(Strategy::VanillaEi, &[trace(&[0.0, 0.0]), trace(&[0.0, 0.0])], 0.0).unwrap();
        assert_eq!(c.r, vec![LOG10_FLOOR; 2]);
    }

    #[test]
    fn aggregation_errors() {
        assert!(aggregate(Strategy::VanillaEi, &[], 0.0).is_err());
        assert!(aggregate(Strategy::VanillaEi, &[trace(&[1.0]), trace(&[1.0, 1.0])], 0.0).is_err());
    }

    proptest! {
        #[test]
        fn traces_are_non_increasing(g in prop::collection::vec(-10.0..10.0f64, 1..40), init in 0usize..5) {
            let init = init.min(g.len() - 1);
            let t = regret_trace(&result_with(&g, init), 10.0, 0).unwrap();
            prop_assert_eq!(t.min_regret.len(), g.len() - init);
            prop_assert!(t.min_regret.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(t.min_regret.iter().all(|&m| m >= 0.0));
        }

        #[test]
        fn aggregate_is_non_increasing_and_permutation_invariant(
            g in prop::collection::vec(prop::collection::vec(-5.0..5.0f64, 6), 1..6),
            rot in 0usize..6,
        ) {
            let traces: Vec<RegretTrace> = g
                .iter()
                .enumerate()
                .map(|(k, gv)| regret_trace(&result_with(gv, 0), 5.0, k).unwrap())
                .collect();
            let c = aggregate(Strategy::CompositeEi, &traces, 0.0).unwrap();
            prop_assert!(c.r.windows(2).all(|w| w[1] <= w[0]));
            let mut rotated = traces.clone();
            rotated.rotate_left(rot % traces.len());
            let c2 = aggregate(Strategy::CompositeEi, &rotated, 0.0).unwrap();
            for (a, b) in c.mean_min_regret.iter().zip(&c2.mean_min_regret) {
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
            }
        }
    }
}
