mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Theta(a) => {
            print!("{}", commands::theta(&a)?);
            Ok(0)
        }
        Command::Ring(a) => {
            commands::ring(&a)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let (text, passed) = commands::verify(&a)?;
            commands::emit(a.out.as_deref(), text.as_bytes())?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Charvar(a) => {
            let csv = commands::charvar(&a)?;
            commands::emit(a.out.as_deref(), &csv)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
