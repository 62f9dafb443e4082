//! Executes a scenario and writes its artifacts.
//!
//! Computation runs on a rayon pool (optionally sized by `workers`); all
//! files are written afterwards, in a fixed order, by the calling thread.

use std::path::PathBuf;
use std::time::Instant;

use coherent_otto::multicycle::{compare_coherent_incoherent, run_engine, sweep};

use crate::error::{CliError, Result};
use crate::output::{self, PeakAdvantage, Runtime, SearchSummary, SeriesSummary, Summary, SweepSummary};
use crate::scenario::{OutputFormat, ScenarioFile, ScenarioKind};
use crate::search::search_advantage;
use crate::validate::{self, CheckOutcome};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub output_dir: PathBuf,
    /// Overrides the scenario's `[output] format`.
    pub format: Option<OutputFormat>,
    /// Size of the worker pool; `None` uses rayon's global pool.
    pub workers: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            output_dir: PathBuf::from("."),
            format: None,
            workers: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub summary: Summary,
    /// Written files, in write order.
    pub artifacts: Vec<PathBuf>,
    pub runtime: Runtime,
}

impl RunReport {
    pub fn failed_checks(&self) -> Vec<&CheckOutcome> {
        self.summary
            .checks
            .iter()
            .flatten()
            .filter(|c| !c.passed)
            .collect()
    }
}

struct Computed {
    summary: Summary,
    csv: Vec<(String, String)>,
}

pub fn run_scenario(scenario: &ScenarioFile, options: &RunOptions) -> Result<RunReport> {
    scenario.validate()?;
    let format = options.format.unwrap_or(scenario.output.format);

    let start = Instant::now();
    let (computed, workers) = match options.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build a pool of {n} workers: {e}")))?;
            pool.install(|| (compute(scenario, format), rayon::current_num_threads()))
        }
        None => (compute(scenario, format), rayon::current_num_threads()),
    };
    let computed = computed?;
    let runtime = Runtime {
        seconds: start.elapsed().as_secs_f64(),
        workers,
    };

    let dir = &options.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let prefix = scenario.prefix();
    let mut artifacts = Vec::new();
    if format.csv() {
        for (name, contents) in &computed.csv {
            artifacts.push(output::write_artifact(dir, name, contents)?);
        }
    }
    if format.json() {
        let summary = output::to_json(&computed.summary)?;
        artifacts.push(output::write_artifact(dir, &format!("{prefix}.json"), &summary)?);
        let runtime_json = output::to_json(&runtime)?;
        artifacts.push(output::write_artifact(dir, &format!("{prefix}_runtime.json"), &runtime_json)?);
    }
    Ok(RunReport {
        summary: computed.summary,
        artifacts,
        runtime,
    })
}

fn compute(s: &ScenarioFile, format: OutputFormat) -> Result<Computed> {
    let prefix = s.prefix();
    let csv_name = |suffix: &str| format!("{prefix}{suffix}.csv");
    let listed = |name: &str| format.csv().then(|| name.to_string());
    let mut summary = Summary {
        schema_version: s.schema_version.clone(),
        scenario: s.scenario,
        config: s.engine.clone(),
        sweep: None,
        series: Vec::new(),
        peak_advantage: None,
        search: None,
        checks: None,
    };
    let mut csv = Vec::new();

    match s.scenario {
        ScenarioKind::SingleCycleSweep => {
            let spec = s.sweep.as_ref().expect("validated");
            let field = spec.field()?;
            let values = spec.resolved_values()?;
            for variant in s.series() {
                let config = variant.apply(&s.engine)?;
                let traces = sweep(&config, field, &values)?;
                let rows: Vec<_> = values.iter().copied().zip(traces.iter().map(|t| &t.records[0])).collect();
                let name = csv_name(&format!("_{}", variant.label));
                summary.series.push(SeriesSummary {
                    label: variant.label.clone(),
                    csv: listed(&name),
                    final_cumulative_work: rows.last().map_or(0.0, |(_, r)| r.cumulative_work),
                });
                csv.push((name, output::sweep_csv(field.name(), &rows)));
            }
            summary.sweep = Some(SweepSummary {
                field: field.name().to_string(),
                values,
            });
        }
        ScenarioKind::Multicycle => {
            let trace = run_engine(&s.engine)?;
            let name = csv_name("");
            summary.series.push(SeriesSummary {
                label: "engine".into(),
                csv: listed(&name),
                final_cumulative_work: trace.records.last().map_or(0.0, |r| r.cumulative_work),
            });
            csv.push((name, output::cycle_csv(&trace.records)));
        }
        ScenarioKind::Compare => {
            let cmp = compare_coherent_incoherent(&s.engine)?;
            for (label, trace) in [("coherent", &cmp.coherent), ("incoherent", &cmp.incoherent)] {
                let name = csv_name(&format!("_{label}"));
                summary.series.push(SeriesSummary {
                    label: label.into(),
                    csv: listed(&name),
                    final_cumulative_work: trace.records.last().map_or(0.0, |r| r.cumulative_work),
                });
                csv.push((name, output::cycle_csv(&trace.records)));
            }
            csv.push((csv_name("_advantage"), output::advantage_csv(&cmp)));
            summary.peak_advantage = cmp.peak().map(|(cycle, ratio)| PeakAdvantage { cycle, ratio });
        }
        ScenarioKind::Validate => {
            summary.checks = Some(validate::run_suite());
        }
        ScenarioKind::SearchAdvantage => {
            let grid = s.search_grid();
            let outcome = search_advantage(&s.engine, &grid)?;
            let best = outcome.best().copied();
            if let Some(best) = best {
                summary.config = best.point.config(&s.engine, grid.max_cycle);
                summary.peak_advantage = Some(PeakAdvantage {
                    cycle: best.peak_cycle.expect("best has a peak"),
                    ratio: best.peak_advantage.expect("best has a peak"),
                });
            }
            summary.search = Some(SearchSummary {
                points_evaluated: outcome.evaluations.len(),
                max_cycle: grid.max_cycle,
                best,
            });
            csv.push((csv_name("_grid"), output::grid_csv(&outcome)));
        }
    }
    Ok(Computed { summary, csv })
}
