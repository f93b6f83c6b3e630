//! Library surface of the `glnq` command-line tool: formatting, the disk
//! cache, the subcommand implementations, and the verification suite.

pub mod cache;
pub mod commands;
pub mod fmt;
pub mod verify;
