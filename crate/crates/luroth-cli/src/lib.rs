//! Command-line companion to `luroth-core`: every library operation as
//! a seeded, reproducible experiment emitting a versioned JSON report.

pub mod cli;
pub mod commands;
pub mod wire;

pub use cli::{run, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE};
