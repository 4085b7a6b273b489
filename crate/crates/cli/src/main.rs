use std::process::ExitCode;

use clap::Parser;
use orbitkit_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("error serializes"));
            eprintln!("orbitkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
