//! Front end for `epade`: system documents, artifacts and the commands that
//! produce them.

pub mod artifact;
pub mod commands;
pub mod doc;
pub mod error;
pub mod report;

pub use doc::{parse_system, parse_system_str, SystemDocument};
pub use error::CliError;
