use std::process::ExitCode;

use blockcs_cli::args::Cli;
use blockcs_cli::commands::Overrides;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Overrides::from_env().and_then(|o| blockcs_cli::run(&cli, &o, &mut std::io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
