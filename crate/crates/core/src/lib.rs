//! Precision-resolution coding for terminator-free DNA synthesis.

pub mod capacity;
pub mod cli;
pub mod codec;
pub mod error;
pub mod graph;
pub mod prob;
pub mod quantizer;
pub mod schedule;
pub mod sim;

pub use error::{Error, Result};
