mod args;
mod commands;
mod error;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Context;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context::from_cli(&cli);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Prob(a) => commands::prob(&ctx, a, &mut out),
        Command::Crosscheck(a) => commands::crosscheck_cmd(&ctx, a, &mut out),
        Command::Table(a) => commands::table(&ctx, a, &mut out),
        Command::Pmf(a) => commands::pmf(&ctx, a, &mut out),
        Command::Mc(a) => commands::mc(&ctx, a, &mut out),
        Command::Bench(a) => commands::bench(&ctx, a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
