//! Library side of the `bbcrystal` command-line tool.

pub mod commands;
pub mod config;
pub mod doc;
