//! Low-stretch spanning trees of weighted multigraphs, built by recursive
//! star decomposition with ball and cone cutting.

pub mod bench;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod tree;

pub use error::{Error, Result};

#[cfg(test)]
mod testing;
