//! Command-line front end for `bbhull-core`: the POLY file format, the
//! benchmark harness and the `bbhull` subcommands.

pub mod bench;
pub mod commands;
pub mod format;
