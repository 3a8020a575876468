use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dsc_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
