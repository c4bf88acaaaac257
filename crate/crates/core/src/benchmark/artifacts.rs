//! Results files: `results.csv`, `traces.log`, `runtime.csv`, `config.json`.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Experiment, ExperimentConfig};
use crate::error::{Error, Result};

const RESULTS_NOTE: &str = "# iteration i = 1..T counts acquisition steps after the initial design; \
each mean_min_regret[i] also includes the best initial-design point";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsRow {
    pub task: String,
    pub strategy: String,
    pub iteration: usize,
    pub mean_min_regret: f64,
    pub log10_regret: f64,
    pub runs: usize,
    pub seed_base: u64,
}

/// One row per (strategy, iteration), preceded by a `#` comment line.
pub fn write_results_csv<W: Write>(experiment: &Experiment, mut out: W) -> Result<()> {
    writeln!(out, "{RESULTS_NOTE}")?;
    let mut w = csv::Writer::from_writer(out);
    for curve in &experiment.curves {
        for (i, (&m, &r)) in curve.mean_min_regret.iter().zip(&curve.r).enumerate() {
            w.serialize(ResultsRow {
                task: experiment.config.task.clone(),
                strategy: curve.strategy.to_string(),
                iteration: i + 1,
                mean_min_regret: m,
                log10_regret: r,
                runs: curve.runs,
                seed_base: experiment.config.base_seed,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_results_csv<R: Read>(input: R) -> Result<Vec<ResultsRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let rows = r
        .deserialize()
        .collect::<std::result::Result<Vec<ResultsRow>, _>>()
        .map_err(|e| Error::MalformedResults(e.to_string()))?;
    if rows.is_empty() {
        return Err(Error::MalformedResults("no data rows".into()));
    }
    Ok(rows)
}

/// Tab-separated audit log: every evaluation of every run, initial design
/// included as iteration 0.
pub fn write_traces<W: Write>(experiment: &Experiment, mut out: W) -> Result<()> {
    let d = experiment
        .runs
        .iter()
        .flatten()
        .next()
        .map_or(0, |r| r.records[0].x.len());
    let xs: Vec<String> = (1..=d).map(|j| format!("x{j}")).collect();
    writeln!(out, "strategy\trun_index\titeration\t{}\tg_value\tmin_regret", xs.join("\t"))?;
    for runs in &experiment.runs {
        for (k, run) in runs.iter().enumerate() {
            let mut best = f64::INFINITY;
            for (j, rec) in run.records.iter().enumerate() {
                best = best.min((experiment.g_star - rec.g_value).max(0.0));
                let iteration = (j + 1).saturating_sub(run.init_points);
                write!(out, "{}\t{k}\t{iteration}", run.strategy)?;
                for v in &rec.x {
                    write!(out, "\t{v}")?;
                }
                writeln!(out, "\t{}\t{best}", rec.g_value)?;
            }
        }
    }
    Ok(())
}

/// Mean seconds per run for the acquisition loop; one row for the task.
pub fn write_runtime_csv<W: Write>(experiment: &Experiment, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["task".to_string()];
    header.extend(experiment.curves.iter().map(|c| c.strategy.to_string()));
    w.write_record(&header)?;
    let mut row = vec![experiment.config.task.clone()];
    row.extend(experiment.curves.iter().map(|c| format!("{:.6}", c.runtime_total_seconds)));
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}

pub fn write_config_json<W: Write>(config: &ExperimentConfig, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, config)?;
    writeln!(out)?;
    Ok(())
}

/// Writes all four files into `dir`, creating it if needed.
pub fn write_artifacts(experiment: &Experiment, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let open = |name: &str| File::create(dir.join(name)).map(BufWriter::new);
    write_results_csv(experiment, open("results.csv")?)?;
    write_traces(experiment, open("traces.log")?)?;
    write_runtime_csv(experiment, open("runtime.csv")?)?;
    write_config_json(&experiment.config, open("config.json")?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::run_experiment;
    use crate::bo::Strategy;

    fn experiment() -> Experiment {
        run_experiment(&ExperimentConfig {
            strategies: vec![Strategy::VanillaEi, Strategy::CompositeUcb],
            runs: 2,
            iterations: 3,
            init_points: 3,
            ..ExperimentConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn results_round_trip() {
        let e = experiment();
        let mut buf = Vec::new();
        write_results_csv(&e, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with('#'));
        assert_eq!(text.lines().nth(1).unwrap(), "task,strategy,iteration,mean_min_regret,log10_regret,runs,seed_base");
        let rows = read_results_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().filter(|r| r.strategy == "c-ucb").count(), 3);
        assert_eq!(rows[2].iteration, 3);
        assert_eq!(rows[0].mean_min_regret, e.curves[0].mean_min_regret[0]);
    }

    #[test]
    fn malformed_results() {
        assert!(read_results_csv("".as_bytes()).is_err());
        assert!(read_results_csv("task,strategy\nx,y\n".as_bytes()).is_err());
    }

    #[test]
    fn trace_log_row_count() {
        let e = experiment();
        let mut buf = Vec::new();
        write_traces(&e, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // 2 strategies × 2 runs × (3 initial + 3 acquired) plus header
        assert_eq!(text.lines().count(), 1 + 2 * 2 * 6);
        assert!(text.lines().next().unwrap().contains("x5"));
    }

    #[test]
    fn runtime_layout() {
        let e = experiment();
        let mut buf = Vec::new();
        write_runtime_csv(&e, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "task,vanilla-ei,c-ucb");
        assert!(lines[1].starts_with("dixon-price,"));
    }

    #[test]
    fn artifacts_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let e = experiment();
        write_artifacts(&e, dir.path()).unwrap();
        for f in ["results.csv", "traces.log", "runtime.csv", "config.json"] {
            assert!(dir.path().join(f).is_file());
        }
        let cfg: ExperimentConfig = serde_json::from_reader(File::open(dir.path().join("config.json")).unwrap()).unwrap();
        assert_eq!(cfg, e.config);
    }
}
