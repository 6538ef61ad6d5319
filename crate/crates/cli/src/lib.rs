//! Library side of the `tensorhom` command line.

pub mod cli;
pub mod suites;

pub use cli::{run, Outcome, RunConfig};
