mod args;
mod commands;
mod config;
mod field;
mod plot;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn run(argv: Vec<String>) -> Result<(), Failure> {
    let argv = config::expand(argv).map_err(Failure::Input)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { Ok(()) } else { Err(Failure::Usage) };
        }
    };
    let verdict = commands::dispatch(cli.command)?;
    if cli.strict && verdict == Some(false) {
        return Err(Failure::Verdict);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            f.report();
            ExitCode::from(f.code())
        }
    }
}
