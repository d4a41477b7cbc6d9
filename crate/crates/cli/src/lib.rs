//! Command-line front end for `optishape-core`.
//!
//! ```text
//! optishape solve <problem> [flags]
//! optishape verify [--suite NAME]
//! optishape curve fence --fence F [--v-segments v] [--h-segments h] [--points n] [--out path]
//! ```
//!
//! Exit status: 0 success, 2 usage or domain error, 3 unsolved (infeasible,
//! no convergence, or a residual above `--tol`), 4 I/O failure.

pub mod args;
pub mod commands;
pub mod json;
pub mod report;

pub use args::Cli;
pub use commands::{execute, CliError, EXIT_IO, EXIT_UNSOLVED, EXIT_USAGE};
pub use report::RunReport;
