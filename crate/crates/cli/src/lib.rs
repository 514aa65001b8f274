//! Library side of the `froblab` command-line tool: ring-file parsing,
//! command dispatch and JSON reports.

pub mod commands;
pub mod error;
pub mod report;
pub mod ringfile;
pub mod search;

pub use commands::{execute, Command, Options};
pub use error::CliError;
pub use report::Report;
pub use ringfile::RingSpec;

/// Serializes a report as pretty-printed JSON with a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

pub fn to_text(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports always serialize");
    report::render_text(&value)
}
