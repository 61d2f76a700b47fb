use std::process::ExitCode;

use clap::Parser;

mod commands;

use commands::{Cli, Outcome};

fn main() -> ExitCode {
    kiteforge::parallel::init_thread_pool();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
