use clap::Parser;
use hullmap_cli::{exit_code, run, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match run(cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hullmap: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
