//! Text format, verification suites and command-line front end for
//! [`unicell_core`].

pub mod cli;
pub mod format;
pub mod verify;

pub use format::{parse_labeled, parse_line, parse_map, serialize, serialize_canonical, serialize_labeled, ParseError};
