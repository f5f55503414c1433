//! The `weightlab` command-line front end: workspace documents, reports and
//! subcommand dispatch.

mod commands;
pub mod report;
pub mod workspace;

pub use commands::{run, Cli, Command, Format, Output};
