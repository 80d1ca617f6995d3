//! Command-line front end: `run` an experiment config, `summarize` CSV output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drsubmax::experiments::{run_with_output, summarize, ExperimentConfig};

#[derive(Parser)]
#[command(name = "drsubmax", version, about = "DR-submodular maximization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override a config field, e.g. `--set n=8` or `--set graph.vertices=500`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Write here instead of the configured output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Average CSV files from repeated runs, grouped by their key columns.
    Summarize {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Write the summary here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> drsubmax::Result<()> {
    match cli.command {
        Command::Run {
            config,
            overrides,
            output,
        } => {
            let cfg = ExperimentConfig::load(&config, &overrides)?;
            let path = run_with_output(&cfg, output.as_deref())?;
            println!("wrote {}", path.display());
        }
        Command::Summarize { paths, output } => {
            let table = summarize(&paths)?;
            match output {
                Some(path) => table.write_csv(&path)?,
                None => {
                    let mut w = csv::Writer::from_writer(std::io::stdout());
                    w.write_record(&table.header)?;
                    for row in &table.rows {
                        w.write_record(row)?;
                    }
                    w.flush()?;
                }
            }
        }
    }
    Ok(())
}
