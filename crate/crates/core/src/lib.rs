//! Numerics for quantum backflow of a charged particle confined to a
//! punctured disk threaded by an Aharonov–Bohm flux line.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. File formats,
//! parallel sweeps and the command-line front end live in the `backflow`
//! companion crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod asymptotics;
pub mod bessel;
pub mod currents;
pub mod degeneracy;
pub mod eigensystem;
pub mod error;
pub mod numerics;
pub mod presets;

pub use error::{Error, Result};
