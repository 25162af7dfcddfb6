//! Gorenstein, 1-Gorenstein and hereditary tests for category algebras of
//! finite EI categories, with an exact homological cross-check.

pub mod category;
pub mod classifier;
pub mod constructors;
pub mod error;
pub mod exec;
pub mod freeness;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod triangular;
pub mod verify;

pub use error::{Error, Result};
