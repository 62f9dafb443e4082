use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coherent_otto_cli::output::Summary;
use coherent_otto_cli::scenario::ScenarioKind;
use coherent_otto_cli::validate::render_table;
use coherent_otto_cli::{load_scenario, presets, run_scenario, CliError, OutputFormat, RunOptions, ScenarioFile};

/// Simulator for a two-qubit Otto engine charging a quantum battery.
#[derive(Parser)]
#[command(name = "otto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for CSV and JSON artifacts.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
    /// Worker threads for sweeps and grid search.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Overrides the scenario's output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Reserved. All computation is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a preset (fig2, fig3, fixture, search, validate).
    Run { scenario: String },
    /// Run the oracle and invariant suite; exits 1 if any check fails.
    Validate,
    /// Grid-search the coherent work advantage of a search-advantage scenario.
    Search { scenario: String },
}

fn resolve(arg: &str) -> Result<ScenarioFile, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return load_scenario(path);
    }
    presets::preset(arg).ok_or_else(|| {
        CliError::Usage(format!(
            "{arg:?} is neither a scenario file nor a preset ({})",
            presets::NAMES.join(", ")
        ))
    })
}

fn report(summary: &Summary) {
    if let Some(search) = &summary.search {
        println!("evaluated {} grid points over {} cycles", search.points_evaluated, search.max_cycle);
        match &search.best {
            Some(best) => println!("best grid point {}", best.point),
            None => println!("no grid point has a defined advantage ratio"),
        }
    }
    if let Some(peak) = summary.peak_advantage {
        println!("peak advantage {:.4} at cycle {}", peak.ratio, peak.cycle);
    }
    if let Some(checks) = &summary.checks {
        print!("{}", render_table(checks));
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let scenario = match &cli.command {
        Command::Run { scenario } => resolve(scenario)?,
        Command::Validate => presets::validate(),
        Command::Search { scenario } => {
            let s = resolve(scenario)?;
            if s.scenario != ScenarioKind::SearchAdvantage {
                return Err(CliError::Usage(format!(
                    "search needs a search-advantage scenario, got {}",
                    s.scenario.name()
                )));
            }
            s
        }
    };
    let options = RunOptions {
        output_dir: cli.output_dir,
        format: cli.format,
        workers: cli.workers,
    };
    let result = run_scenario(&scenario, &options)?;
    report(&result.summary);
    for path in &result.artifacts {
        println!("wrote {}", path.display());
    }
    println!("runtime {:.3} s on {} workers", result.runtime.seconds, result.runtime.workers);

    let failed = result.failed_checks();
    if !failed.is_empty() {
        let names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
        return Err(CliError::ChecksFailed(names.join(", ")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("otto: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
