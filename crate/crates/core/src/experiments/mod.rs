//! Config-driven experiment runs writing CSV, and their summaries.

mod config;
mod run;
mod summarize;

pub use config::{
    ExperimentConfig, GraphSpec, HardnessGapConfig, LocationOnlineConfig, QuadraticOfflineConfig,
    QuadraticSweepConfig, RevenueOfflineConfig, RevenueOnlineConfig,
};
pub use run::{run, run_with_output, Table, EXACT_REFERENCE_DIM};
pub use summarize::{read_csv, summarize, summarize_tables, IGNORED_COLUMNS, KEY_COLUMNS};
