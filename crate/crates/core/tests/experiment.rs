//! Library-level experiment properties.

use compbo::benchmark::{run_experiment, write_artifacts, ExperimentConfig};
use compbo::bo::Strategy;

fn small(task: &str) -> ExperimentConfig {
    ExperimentConfig {
        task: task.into(),
        runs: 3,
        iterations: 4,
        init_points: 3,
        base_seed: 11,
        ..ExperimentConfig::default()
    }
}

#[test]
fn regret_curves_are_non_increasing_and_nonnegative() {
    let e = run_experiment(&small("ackley")).unwrap();
    for trace in e.traces.iter().flatten() {
        assert_eq!(trace.min_regret.len(), 4);
        assert!(trace.min_regret.iter().all(|r| *r >= 0.0));
        assert!(trace.min_regret.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn strategy_subset_does_not_change_its_curves() {
    let all = run_experiment(&small("corr-demand")).unwrap();
    let one = run_experiment(&ExperimentConfig {
        strategies: vec![Strategy::CompositeEi],
        ..small("corr-demand")
    })
    .unwrap();
    assert_eq!(
        all.curve(Strategy::CompositeEi).unwrap().mean_min_regret,
        one.curve(Strategy::CompositeEi).unwrap().mean_min_regret
    );
}

#[test]
fn artifacts_are_byte_identical_across_repeats() {
    let cfg = small("langermann");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    write_artifacts(&run_experiment(&cfg).unwrap(), a.path()).unwrap();
    write_artifacts(&run_experiment(&cfg).unwrap(), b.path()).unwrap();
    for f in ["results.csv", "traces.log", "config.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}
