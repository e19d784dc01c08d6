//! Command-line front-end for `probdyn` and the evidence file format it reads
//! and writes.

pub mod app;
pub mod commands;
pub mod error;
pub mod evidence_file;

pub use commands::Output;
pub use error::{CliError, Result};
pub use evidence_file::{EvidenceFile, Payload};
