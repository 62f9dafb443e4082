//! Scenario files: TOML with strict key checking.
//!
//! ```toml
//! schema_version = "1"
//! scenario = "compare"        # single-cycle-sweep | multicycle | compare
//!                             # | validate | search-advantage
//! [engine]                    # any EngineConfig field; omitted ones take defaults
//! theta = 0.3141592653589793
//! cycles = 20
//! [engine.battery_init]       # px, py, pz; omitted components are 0
//! pz = -0.5
//! [engine.noise]
//! battery_t2_per_cycle = 0.98
//!
//! [sweep]                     # single-cycle-sweep only
//! field = "theta"
//! start = 0.0                 # or: values = [..]
//! stop = 1.5707963267948966
//! points = 33
//!
//! [[variants]]                # single-cycle-sweep only; one series each
//! label = "coherent_quantum"
//! set = { p_mx = 0.5, battery_py = 0.5, battery_pz = 0.0 }
//!
//! [search]                    # search-advantage only; omitted axes use defaults
//! p_mx = [0.1, 0.2]
//! max_cycle = 10
//!
//! [output]
//! prefix = "fig3"
//! format = "both"             # csv | json | both
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use coherent_otto::multicycle::SweepField;
use coherent_otto::EngineConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    SingleCycleSweep,
    Multicycle,
    Compare,
    Validate,
    SearchAdvantage,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::SingleCycleSweep => "single-cycle-sweep",
            ScenarioKind::Multicycle => "multicycle",
            ScenarioKind::Compare => "compare",
            ScenarioKind::Validate => "validate",
            ScenarioKind::SearchAdvantage => "search-advantage",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        self != OutputFormat::Json
    }

    pub fn json(self) -> bool {
        self != OutputFormat::Csv
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    /// File-name prefix for artifacts; defaults to the scenario kind.
    pub prefix: Option<String>,
    pub format: OutputFormat,
}

/// The swept field and its values, given either explicitly or as an
/// inclusive linear range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl SweepSpec {
    pub fn linear(field: SweepField, start: f64, stop: f64, points: usize) -> Self {
        Self {
            field: field.name().to_string(),
            values: None,
            start: Some(start),
            stop: Some(stop),
            points: Some(points),
        }
    }

    pub fn field(&self) -> Result<SweepField> {
        Ok(self.field.parse()?)
    }

    pub fn resolved_values(&self) -> Result<Vec<f64>> {
        let values = match (&self.values, self.start, self.stop, self.points) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(start), Some(stop), Some(points)) => match points {
                0 => Vec::new(),
                1 => vec![start],
                n => (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect(),
            },
            _ => {
                return Err(CliError::Config(
                    "sweep needs either `values` or all of `start`, `stop`, `points`".into(),
                ))
            }
        };
        if values.is_empty() {
            return Err(CliError::Config("sweep has no values".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(CliError::Config("sweep values must be finite".into()));
        }
        Ok(values)
    }
}

/// One curve of a sweep: sweepable fields overridden on the engine template.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    pub label: String,
    #[serde(default)]
    pub set: BTreeMap<String, f64>,
}

impl Variant {
    pub fn apply(&self, base: &EngineConfig) -> Result<EngineConfig> {
        let mut config = base.clone();
        for (name, &value) in &self.set {
            let field: SweepField = name.parse()?;
            field.apply(&mut config, value)?;
        }
        Ok(config)
    }
}

/// Axes of the advantage search. Each axis is sorted and deduplicated on
/// load, so grid order is lexicographic in `(theta, p_mx,
/// battery_dephasing_per_reset, battery_t2_per_cycle)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchGrid {
    pub theta: Vec<f64>,
    pub p_mx: Vec<f64>,
    pub battery_dephasing_per_reset: Vec<f64>,
    pub battery_t2_per_cycle: Vec<f64>,
    /// Advantage is searched over cycles `1..=max_cycle`.
    pub max_cycle: usize,
}

impl Default for SearchGrid {
    /// `θ = kπ/32` for `k = 1..15`, `P_M^x ∈ {0.1, …, 0.5}`, no noise, ten
    /// cycles.
    fn default() -> Self {
        Self {
            theta: (1..16).map(|k| k as f64 * PI / 32.0).collect(),
            p_mx: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            battery_dephasing_per_reset: vec![1.0],
            battery_t2_per_cycle: vec![1.0],
            max_cycle: 10,
        }
    }
}

impl SearchGrid {
    pub fn axes(&self) -> [(&'static str, &Vec<f64>); 4] {
        [
            ("theta", &self.theta),
            ("p_mx", &self.p_mx),
            ("battery_dephasing_per_reset", &self.battery_dephasing_per_reset),
            ("battery_t2_per_cycle", &self.battery_t2_per_cycle),
        ]
    }

    fn normalize(&mut self) {
        for axis in [
            &mut self.theta,
            &mut self.p_mx,
            &mut self.battery_dephasing_per_reset,
            &mut self.battery_t2_per_cycle,
        ] {
            axis.sort_by(f64::total_cmp);
            axis.dedup();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: String,
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub engine: EngineConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchGrid>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl ScenarioFile {
    pub fn new(kind: ScenarioKind, engine: EngineConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            scenario: kind,
            engine,
            sweep: None,
            variants: Vec::new(),
            search: None,
            output: OutputSpec::default(),
        }
    }

    pub fn prefix(&self) -> &str {
        self.output.prefix.as_deref().unwrap_or(self.scenario.name())
    }

    /// The search grid of a search-advantage scenario, defaulted if absent.
    pub fn search_grid(&self) -> SearchGrid {
        let mut grid = self.search.clone().unwrap_or_default();
        grid.normalize();
        grid
    }

    /// The variants of a sweep, or a single unnamed one.
    pub fn series(&self) -> Vec<Variant> {
        if self.variants.is_empty() {
            vec![Variant {
                label: "base".into(),
                set: BTreeMap::new(),
            }]
        } else {
            self.variants.clone()
        }
    }

    /// Checks every invariant the run would hit, so failures surface at load.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        if let Some(prefix) = &self.output.prefix {
            if prefix.is_empty() || prefix.contains(['/', '\\']) {
                return Err(CliError::Config(format!("output prefix {prefix:?} must be a plain file name")));
            }
        }
        self.engine.validate()?;

        let sweep_kind = self.scenario == ScenarioKind::SingleCycleSweep;
        if self.sweep.is_some() != sweep_kind {
            return Err(CliError::Config(if sweep_kind {
                "single-cycle-sweep needs a [sweep] table".into()
            } else {
                format!("[sweep] is only valid for single-cycle-sweep, not {}", self.scenario.name())
            }));
        }
        if !self.variants.is_empty() && !sweep_kind {
            return Err(CliError::Config("[[variants]] are only valid for single-cycle-sweep".into()));
        }
        if self.search.is_some() && self.scenario != ScenarioKind::SearchAdvantage {
            return Err(CliError::Config("[search] is only valid for search-advantage".into()));
        }

        if let Some(sweep) = &self.sweep {
            self.validate_sweep(sweep)?;
        }
        if self.scenario == ScenarioKind::SearchAdvantage {
            self.validate_search()?;
        }
        Ok(())
    }

    fn validate_sweep(&self, sweep: &SweepSpec) -> Result<()> {
        let field = sweep.field()?;
        if field == SweepField::Cycles {
            return Err(CliError::Config("single-cycle-sweep cannot sweep `cycles`".into()));
        }
        if self.engine.cycles != 1 {
            return Err(CliError::Config(format!(
                "single-cycle-sweep runs one cycle, but engine.cycles = {}",
                self.engine.cycles
            )));
        }
        let values = sweep.resolved_values()?;
        let mut labels: Vec<String> = Vec::new();
        for variant in self.series() {
            if labels.contains(&variant.label) {
                return Err(CliError::Config(format!("duplicate variant label {:?}", variant.label)));
            }
            if variant.label.is_empty() || !variant.label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return Err(CliError::Config(format!(
                    "variant label {:?} must be non-empty ASCII letters, digits, '_' or '-'",
                    variant.label
                )));
            }
            if variant.set.contains_key("cycles") {
                return Err(CliError::Config("variants cannot override `cycles`".into()));
            }
            let base = variant.apply(&self.engine)?;
            for &value in &values {
                let mut config = base.clone();
                field.apply(&mut config, value)?;
                config
                    .validate()
                    .map_err(|e| CliError::Config(format!("variant {:?}, {} = {value}: {e}", variant.label, field.name())))?;
            }
            labels.push(variant.label);
        }
        Ok(())
    }

    fn validate_search(&self) -> Result<()> {
        let grid = self.search_grid();
        for (name, axis) in grid.axes() {
            if axis.is_empty() {
                return Err(CliError::Config(format!("search grid axis `{name}` is empty")));
            }
        }
        if grid.max_cycle == 0 {
            return Err(CliError::Config("search max_cycle must be at least 1".into()));
        }
        for point in crate::search::grid_points(&grid) {
            point
                .config(&self.engine, grid.max_cycle)
                .validate()
                .map_err(|e| CliError::Config(format!("search grid point {point}: {e}")))?;
        }
        Ok(())
    }
}

/// Parses and validates scenario text. `origin` names the source in errors.
pub fn parse_scenario(text: &str, origin: &str) -> Result<ScenarioFile> {
    let scenario: ScenarioFile = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |span| text[..span.start.min(text.len())].matches('\n').count() + 1);
        CliError::Parse {
            origin: origin.to_string(),
            line,
            message: e.message().to_string(),
        }
    })?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&text, &path.display().to_string())
}
