mod cli;
mod cmd;
mod error;
mod input;
mod workload;

use clap::Parser;

use cli::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd::build::run(&args),
        Command::Query(args) => cmd::query::run(&args),
        Command::Verify(args) => cmd::verify::run(&args),
        Command::Bench(args) => cmd::bench::run(&args),
    };
    if let Err(e) = result {
        eprintln!("srr: {e}");
        std::process::exit(e.exit_code());
    }
}
