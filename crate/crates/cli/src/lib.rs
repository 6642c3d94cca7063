//! Scenario runner for directed weak fibrations: builds spaces and witnesses
//! from JSON descriptors, runs lift and equivalence tasks, and reports
//! certificates.

pub mod dump;
pub mod explain;
pub mod probes;
pub mod registry;
pub mod report;
pub mod runner;
pub mod scenario;

pub use report::Report;
pub use runner::{run_scenario, RunOptions, TaskResult};
pub use scenario::Scenario;
