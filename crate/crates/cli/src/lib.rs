//! Document format, commands and reporting for the `mlat` command line.

pub mod commands;
pub mod doc;
mod render;

pub use commands::{Options, Output, Status};
pub use doc::StructureDoc;
