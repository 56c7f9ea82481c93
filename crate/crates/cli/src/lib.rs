//! Configuration, suite runner and report output behind the `certify` binary.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{parse_config, parse_config_str, ConfigError, Suite, SuiteConfig};
pub use report::{emit_report, render, Format, Status, SuiteRecord, SuiteReport};
pub use runner::run_suite;
