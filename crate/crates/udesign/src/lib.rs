// SPDX-License-Identifier: Apache-2.0

//! File formats, threaded drivers and the `udesign` command line for
//! [`udesign_core`].

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::{CliError, CliResult, ExitStatus};
