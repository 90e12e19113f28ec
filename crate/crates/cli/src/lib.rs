//! Front end for the `qbc` binary: argument parsing, the coin-toss game and
//! the audit, analyze and session subcommands.

pub mod args;
pub mod cointoss;
pub mod commands;
pub mod script;

pub use args::{Cli, Command, RunConfig};
pub use commands::{run, EXIT_ERROR, EXIT_FAILED, EXIT_OK};
