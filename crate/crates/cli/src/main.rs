use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use divsum::{run, Cli, QUAD_TOL_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = std::env::var(QUAD_TOL_ENV).ok();
    let out = run(&cli, tol.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
