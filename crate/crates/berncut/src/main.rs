use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = berncut::cli::Cli::parse();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    ExitCode::from(berncut::cli::run(&cli, &mut out, &mut err))
}
