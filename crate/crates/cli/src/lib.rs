//! Scenario files, presets and artifact writers for the coherent Otto engine
//! simulator. The `otto` binary is a thin wrapper over [`runner`].

pub mod error;
pub mod output;
pub mod presets;
pub mod runner;
pub mod scenario;
pub mod search;
pub mod validate;

pub use error::{CliError, Result};
pub use runner::{run_scenario, RunOptions, RunReport};
pub use scenario::{load_scenario, parse_scenario, OutputFormat, ScenarioFile, ScenarioKind};
