//! Std companion to `backflow-core`: catalog files, the parallel sweep, run
//! configuration, the acceptance suite and the `backflow` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod acceptance;
pub mod catalog;
pub mod cli;
pub mod config;
pub mod error;
pub mod sweep;

pub use error::{Error, Result};
