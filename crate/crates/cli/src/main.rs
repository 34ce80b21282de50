//! `wavesym`: runs the analyses of `wavesym-core` and writes deterministic
//! reports, meshes and polylines.

mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Cli, Command, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] wavesym_core::Error),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.command.flags())?;
    let report = match &cli.command {
        Command::Sphere(_) => commands::sphere(&cfg)?,
        Command::Winding(_) => commands::winding(&cfg)?,
        Command::Zset(_) => commands::zset(&cfg)?,
        Command::Fresnel(_) => commands::fresnel(&cfg)?,
        Command::Eigenline(_) => commands::eigenline(&cfg)?,
        Command::Knots(_) => commands::knots(&cfg)?,
    };
    let text = wavesym_core::report::to_json_string(&report).map_err(|e| CliError::Io(e.to_string()))?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wavesym {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}
