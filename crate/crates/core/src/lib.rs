//! Exact arithmetic for KLR algebras of type A_∞.

pub mod cellular;
pub mod dimension;
pub mod engine;
pub mod error;
pub mod int;
pub mod lie;
pub mod nilhecke;
pub mod oracle;
pub mod poly;
pub mod qseries;
pub mod relations;
pub mod report;
pub mod zlattice;

pub use error::{KlrError, Result};
pub use int::Int;
pub use qseries::QSeries;

/// Largest supported number of strands.
pub const MAX_STRANDS: usize = 8;
