//! Mutual-visibility sets in hypercubes: construction, verification,
//! ILP/SAT encoding and exact search.

pub mod cli;
pub mod constructions;
pub mod cube;
pub mod encode;
pub mod error;
pub mod solve;
pub mod visibility;

pub use error::{Error, Result};
