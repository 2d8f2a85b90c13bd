//! Verification harness and command-line front end for `specres-core`:
//! corpus-parallel evaluation, convergence studies, JSON and CSV reports
//! and the flat configuration file.

pub mod cli;
pub mod config;
pub mod error;
pub mod harness;
pub mod report;

pub use error::{AppError, AppResult};
