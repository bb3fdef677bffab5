use std::io::Write;
use std::process::ExitCode;

use ceresa_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|body| {
        match &cli.command.common().output {
            Some(path) => std::fs::write(path, body)?,
            None => std::io::stdout().lock().write_all(body.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
