use std::io;
use std::process::ExitCode;

use clap::Parser;

use claw_bisect::cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let code = run(&config, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
