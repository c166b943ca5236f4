//! File formats, seeded instance generators, the fuzzing driver and the
//! `connsys` command-line tool on top of [`connsys_core`].

pub mod cli;
mod error;
pub mod format;
pub mod fuzz;
pub mod generate;

pub use error::{Error, Result};
