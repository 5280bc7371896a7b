//! Command-line surface for the inspection-planning toolkit.
//!
//! Ties the solver crates together behind a scenario file format, a set of
//! subcommands (`solve`, `ptas`, `contract`, `constrained`, `oracle`,
//! `verify`, `experiment`), CSV emission with deterministic formatting, and
//! the calibration helpers used by the counterfactual experiment harness.

pub mod calibrate;
pub mod commands;
pub mod experiment;
pub mod format;
pub mod scenario;

pub use calibrate::{calibrate_exponential, discretize_exponential, CalibrationError};
pub use commands::run_command;
pub use format::format_value;
pub use scenario::{parse_scenario, serialize_scenario, Scenario, ScenarioError};
