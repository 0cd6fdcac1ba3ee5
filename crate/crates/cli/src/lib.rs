//! Command-line front end: document format, built-in examples and subcommands.

pub mod builtins;
pub mod commands;
pub mod document;

pub use commands::{run, Outcome};
pub use document::{parse_document, CodeDocument, DocError};
