use std::io::Write;
use std::process::ExitCode;

use change_actions_cli::{execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let out = execute(&Cli::parse());
    let _ = if out.to_stderr {
        std::io::stderr().write_all(out.output.as_bytes())
    } else {
        std::io::stdout().write_all(out.output.as_bytes())
    };
    ExitCode::from(out.code as u8)
}
