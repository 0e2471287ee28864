use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use nilgood::cli::{exit_code_for, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
