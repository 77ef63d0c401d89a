//! Command-line front end and output formats for `qdeform-core`.

pub mod cli;
pub mod format;

pub use cli::{run, run_with_env};
