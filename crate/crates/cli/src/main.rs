//! `epiclust` command-line tool.

mod cli;
mod commands;
mod error;
mod input;
mod output;
mod summary;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use cli::{Cli, Command};

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let (_, sub) = matches.subcommand().expect("a subcommand is required");
    let result = match &cli.command {
        Command::Synth(args) => commands::synth::run(args, sub),
        Command::Cluster(args) => commands::cluster::run(args, sub),
        Command::Compare(args) => commands::compare::run(args, sub),
        Command::Sweep(args) => commands::sweep::run(args, sub),
    };
    match result {
        Ok(done) => {
            // A closed stdout (e.g. piped into `head`) is not a failed run.
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", done.headline);
            for w in &done.warnings {
                eprintln!("warning: {w}");
            }
            if !done.warnings.is_empty() {
                eprintln!("{} warning(s)", done.warnings.len());
            }
            for path in &done.written {
                let _ = writeln!(stdout, "wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
