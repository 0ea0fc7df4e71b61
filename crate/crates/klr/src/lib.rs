//! Standard-library companion to `klr-core`: JSON and DOT output, plain-text
//! tables, acceptance-suite drivers and the `klr` command line.

pub mod cli;
pub mod json;
pub mod render;
pub mod suites;
