//! Exact field arithmetic and dense linear algebra.
//!
//! Everything is exact: rationals are arbitrary precision, residues are reduced
//! modulo a prime. Pivoting is deterministic (first nonzero entry in column order)
//! so every derived certificate is reproducible.

mod matrix;
mod scalar;

pub use matrix::{Echelon, Matrix};
pub use scalar::{is_prime, Field, Scalar};
pub(crate) use scalar::inv_mod;
