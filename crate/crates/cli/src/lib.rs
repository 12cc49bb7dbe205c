//! Reruns the exact computations behind the classification of fake
//! projective plane quotients and reports each as a named check.
//!
//! Reports serialize to a versioned JSON document; see `SCHEMA.md` in this
//! crate for the layout.

pub mod checks;
pub mod fixtures;
pub mod report;

use std::path::PathBuf;

pub use checks::{run, Check, Options};
pub use report::{emit, Envelope, Format, Status, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] fpp_quotients::Error),

    #[error("fixture {}: {reason}", path.display())]
    Fixture { path: PathBuf, reason: String },

    #[error("cannot write {}: {reason}", path.display())]
    Io { path: PathBuf, reason: String },

    #[error("cannot parse {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),
}
