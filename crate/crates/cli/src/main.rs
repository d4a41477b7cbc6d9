use std::io;
use std::process::ExitCode;

use clap::Parser;
use optishape::{execute, Cli};

fn main() -> ExitCode {
    // clap prints its own message and exits with 2 on bad usage
    let cli = Cli::parse();
    let stdout = io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("optishape: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
