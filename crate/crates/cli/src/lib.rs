//! Command-line front end for the zeno-core gate model.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use config::{emit_config, parse_config, Command, ConfigDocument, Format, Overrides, RunConfig};
pub use error::CliError;
pub use report::Report;

/// Resolves the configuration and renders the report for one command.
pub fn run(run: &RunConfig) -> Result<String, CliError> {
    let doc = run.document.resolve(run.command)?;
    let report = commands::run_command(run.command, &doc)?;
    Ok(report.render(run.format))
}
