//! File formats, reports, verification suites, parallel searches and the
//! command-line front end over `negabent-core`.

pub mod cli;
pub mod config;
pub mod format;
pub mod report;
pub mod search;
pub mod verify;

pub use format::{FormatError, FunctionFile};
pub use report::{analyze, AnalysisReport};
