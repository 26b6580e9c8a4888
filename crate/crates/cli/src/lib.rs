//! Command-line workbench: code files, reports, and the acceptance suite.

pub mod acceptance;
pub mod codefile;
pub mod commands;
pub mod error;
pub mod report;

pub use codefile::{load_code, CodeFile, FormFile};
pub use commands::Options;
pub use error::{CliError, CliResult};
pub use report::Report;
