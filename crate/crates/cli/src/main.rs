use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use probdyn_cli::app::{run, Cli};
use probdyn_cli::error::exit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.file.to_toml().as_bytes()).is_err() {
                return ExitCode::from(exit::IO as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
