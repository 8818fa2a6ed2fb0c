//! Scenario configuration, figure presets, engine orchestration and output
//! writers for the `nediff` command-line tool.

pub mod config;
pub mod heatmap;
pub mod output;
pub mod presets;
pub mod scenario;
pub mod sweep;

pub use config::{parse_config, ConfigError, ScenarioConfig};
pub use scenario::{run_scenario, RunOptions, ScenarioOutcome};
