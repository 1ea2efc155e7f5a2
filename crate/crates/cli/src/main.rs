use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use zeno_cli::{parse_config, CliError, Command, ConfigDocument, Format, Overrides, RunConfig};
use zeno_core::gate::Aggregate;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AggregateArg {
    Sum,
    Max,
}

#[derive(Debug, Parser)]
#[command(name = "zeno-lab", version, about = "Zeno-blockade photon gate simulator and optimizer")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[arg(long, global = true)]
    segments: Option<usize>,
    #[arg(long, global = true)]
    target_error: Option<f64>,
    #[arg(long, value_enum, global = true)]
    aggregate: Option<AggregateArg>,
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut document = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => ConfigDocument::default(),
    };
    document.apply_overrides(&Overrides {
        segments: cli.segments,
        target_error: cli.target_error,
        aggregate: cli.aggregate.map(|a| match a {
            AggregateArg::Sum => Aggregate::Sum,
            AggregateArg::Max => Aggregate::Max,
        }),
    });
    let out = zeno_cli::run(&RunConfig {
        command: cli.command,
        format: cli.format,
        document,
    })?;
    match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
