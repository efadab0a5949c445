//! Verification harness, JSON formats and report schema for the osp(1|2n)
//! ghost-center / finite W-algebra engine.
//!
//! The `ghostw` binary drives everything; this library holds the pieces so
//! the acceptance suite can call the same check implementations the CLI
//! runs.

pub mod checks;
pub mod formats;
pub mod report;

pub use checks::{default_max_degree, run_checks, CheckError, GroupResult, RunConfig};
pub use report::{Report, Status};
