//! Bernoulli bond percolation on finite windows of Cayley graphs of
//! polynomial growth: exact geometric checks, coupled event evaluators and
//! Monte Carlo estimators.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod estimate;
pub mod events;
pub mod explore;
pub mod geometry;
pub mod perco;
pub mod stats;

pub use error::{Error, Result};
