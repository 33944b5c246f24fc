use std::process::ExitCode;

use clap::Parser;
use sscat::Cli;

fn main() -> ExitCode {
    sscat::main_with(&Cli::parse())
}
