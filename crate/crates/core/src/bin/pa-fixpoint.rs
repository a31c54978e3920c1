use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pa_fixpoint::cli::Cli;

fn main() -> ExitCode {
    let outcome = Cli::parse().run();
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    if !outcome.summary.is_empty() {
        eprintln!("{}", outcome.summary);
    }
    ExitCode::from(outcome.exit_code as u8)
}
