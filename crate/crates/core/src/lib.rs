//! Exact computations with polynomial functors: Schur functor spaces and maps,
//! tensor strength, truncations of infinite tensors with the action of row-finite
//! matrices, and dense-orbit elements with checkable specialization witnesses.

pub mod dense;
pub mod error;
pub mod exact;
pub mod json;
pub mod limits;
pub mod quasiorder2;
pub mod schur;
pub mod strength;

pub use error::{Error, Result};
pub use exact::{Field, Matrix, Scalar};
pub use schur::{Element, FunctorSpec, Kind, Label, Partition};
