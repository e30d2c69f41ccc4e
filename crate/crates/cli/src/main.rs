use std::io;
use std::process::ExitCode;

use clap::Parser;
use labudde_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("charpoly: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
