//! Exact linear algebra over `Q` and `F_p`.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{Matrix, Rref};
pub use subspace::{Quotient, Subspace};
