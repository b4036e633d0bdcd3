//! File formats, reports, commands and named fixtures behind the
//! `pwa-bounds` binary.

use std::fmt;

pub mod commands;
pub mod files;
pub mod fixtures;
pub mod report;

/// Bad input: unparsable files, mismatched dimensions, or a check that
/// does not apply to the given set. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(String);

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        InputError(message.into())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<pwa_bounds_core::Error> for InputError {
    fn from(e: pwa_bounds_core::Error) -> Self {
        InputError(e.to_string())
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
