//! Command-line front end, text formats and benchmark harness for the
//! `treepart` solvers.

pub mod bench;
pub mod cli;
pub mod format;

pub use cli::run;
