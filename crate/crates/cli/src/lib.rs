//! Command-line front end for the Robin square computations.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

pub use config::{Command, ConfigLayer, RunConfig};
pub use error::CliError;
