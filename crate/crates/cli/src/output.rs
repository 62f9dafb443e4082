//! CSV and JSON artifacts.
//!
//! CSV numbers carry 17 significant digits (`{:.16e}`), JSON numbers use the
//! shortest representation that round-trips; both are bit-stable.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use coherent_otto::multicycle::Comparison;
use coherent_otto::{CycleRecord, EngineConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::scenario::ScenarioKind;
use crate::search::SearchOutcome;
use crate::validate::CheckOutcome;

/// Columns after the leading index column (`cycle_index` or the swept
/// field). The order is part of the output format.
pub const RECORD_COLUMNS: [&str; 21] = [
    "cycle_work",
    "cumulative_work",
    "p_bx",
    "p_by",
    "p_bz",
    "ergotropy_total",
    "ergotropy_coherent",
    "rel_entropy_coherence",
    "concurrence",
    "corr_m_x",
    "corr_m_y",
    "corr_m_z",
    "corr_b_x",
    "corr_b_y",
    "corr_b_z",
    "corr_xx",
    "corr_yy",
    "corr_zz",
    "quantum_work",
    "ergotropy_incoherent",
    "injection_angle",
];

pub const ADVANTAGE_COLUMNS: [&str; 4] = ["cycle_index", "coherent_cumulative_work", "incoherent_cumulative_work", "advantage"];

pub const GRID_COLUMNS: [&str; 6] = [
    "theta",
    "p_mx",
    "battery_dephasing_per_reset",
    "battery_t2_per_cycle",
    "peak_cycle",
    "peak_advantage",
];

pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn record_values(r: &CycleRecord) -> [f64; 21] {
    let p = r.battery_polarization;
    let c = &r.correlators;
    [
        r.cycle_work,
        r.cumulative_work,
        p.px,
        p.py,
        p.pz,
        r.ergotropy.total,
        r.ergotropy.coherent,
        r.coherence_rel_entropy,
        r.concurrence_post_stroke,
        c.medium[0],
        c.medium[1],
        c.medium[2],
        c.battery[0],
        c.battery[1],
        c.battery[2],
        c.joint[0],
        c.joint[1],
        c.joint[2],
        r.quantum_work,
        r.ergotropy.incoherent,
        r.injection_angle,
    ]
}

pub fn record_header(index_column: &str) -> String {
    std::iter::once(index_column).chain(RECORD_COLUMNS).collect::<Vec<_>>().join(",")
}

/// Per-cycle rows of one trace.
pub fn cycle_csv(records: &[CycleRecord]) -> String {
    let mut out = record_header("cycle_index");
    out.push('\n');
    for r in records {
        write_row(&mut out, &r.cycle_index.to_string(), r);
    }
    out
}

/// One row per swept value, each from the first (only) cycle.
pub fn sweep_csv(field: &str, rows: &[(f64, &CycleRecord)]) -> String {
    let mut out = record_header(field);
    out.push('\n');
    for (value, r) in rows {
        write_row(&mut out, &number(*value), r);
    }
    out
}

fn write_row(out: &mut String, index: &str, r: &CycleRecord) {
    out.push_str(index);
    for v in record_values(r) {
        out.push(',');
        out.push_str(&number(v));
    }
    out.push('\n');
}

/// Undefined ratios are written as empty fields.
pub fn advantage_csv(comparison: &Comparison) -> String {
    let mut out = ADVANTAGE_COLUMNS.join(",");
    out.push('\n');
    for ((c, i), a) in comparison
        .coherent
        .records
        .iter()
        .zip(&comparison.incoherent.records)
        .zip(&comparison.advantage)
    {
        let ratio = a.map(number).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            c.cycle_index,
            number(c.cumulative_work),
            number(i.cumulative_work),
            ratio
        );
    }
    out
}

pub fn grid_csv(outcome: &SearchOutcome) -> String {
    let mut out = GRID_COLUMNS.join(",");
    out.push('\n');
    for e in &outcome.evaluations {
        let p = e.point;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            number(p.theta),
            number(p.p_mx),
            number(p.battery_dephasing_per_reset),
            number(p.battery_t2_per_cycle),
            e.peak_cycle.map(|c| c.to_string()).unwrap_or_default(),
            e.peak_advantage.map(number).unwrap_or_default(),
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakAdvantage {
    pub cycle: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub label: String,
    pub csv: Option<String>,
    pub final_cumulative_work: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub field: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub points_evaluated: usize,
    pub max_cycle: usize,
    pub best: Option<crate::search::GridEvaluation>,
}

/// The JSON summary. `config` is the engine configuration that produced the
/// reported traces (for a search, the best grid point); feeding it back to
/// the engine reproduces them exactly. Runtime lives in a separate file so
/// this one is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: String,
    pub scenario: ScenarioKind,
    pub config: EngineConfig,
    pub sweep: Option<SweepSummary>,
    pub series: Vec<SeriesSummary>,
    pub peak_advantage: Option<PeakAdvantage>,
    pub search: Option<SearchSummary>,
    pub checks: Option<Vec<CheckOutcome>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub seconds: f64,
    pub workers: usize,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("cannot serialize summary: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}
