mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;
use divlab::{Budget, Error};

use args::{Cli, Command, SearchCommand};
use commands::CliError;

/// Process exit codes, one per error class.
mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    // 2 is clap's usage error.
    pub const INVALID_PARAMETER: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const INPUT: u8 = 5;
    pub const INVARIANT: u8 = 6;
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Io(_) => exit::INPUT,
        CliError::Core(e) => match e {
            Error::Parse { .. } => exit::INPUT,
            Error::Budget { .. } => exit::BUDGET,
            Error::Invariant { .. }
            | Error::SwapPlan(_)
            | Error::NonRegularLayer(_)
            | Error::Overflow(_) => exit::INVARIANT,
            Error::GroundSize(_)
            | Error::ElementOutOfRange { .. }
            | Error::DuplicateElement(_)
            | Error::GroundMismatch { .. }
            | Error::EmptyFamily
            | Error::InvalidParameter { .. }
            | Error::Precondition(_) => exit::INVALID_PARAMETER,
        },
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let budget = Budget::new(cli.budget_bytes);
    match &cli.command {
        Command::Construct(a) => commands::construct(a, &budget),
        Command::Verify(a) => commands::verify(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Search(SearchCommand::Exhaustive { n, output }) => {
            commands::search_exhaustive(*n, output)
        }
        Command::Search(SearchCommand::Hillclimb(a)) => commands::search_hillclimb(a, &budget),
        Command::Plane(a) => commands::plane(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(exit::INVALID_PARAMETER);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(true) => ExitCode::from(exit::OK),
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(exit::CHECK_FAILED)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
