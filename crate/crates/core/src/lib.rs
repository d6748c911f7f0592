//! Spectral tools for deciding when a regular graph has the same energy as
//! its complement.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod graphs;
pub mod rings;
pub mod spectra;
pub mod srg;
pub mod verify;

pub use error::{Error, Result};
