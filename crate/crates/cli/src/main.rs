use std::process::ExitCode;

use blockfactor_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli.request, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == blockfactor_cli::EXIT_USAGE {
                eprintln!("usage: blockfactor <factor|range|bench> --help");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
