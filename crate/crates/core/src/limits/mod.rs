//! Truncations of elements of `P_∞` and the action of the monoid `E` of
//! row-finite matrices on them.

mod monoid;
mod truncated;

pub use monoid::{compose_e, e_act, e_apply, e_apply_with_width, EElement, Repr, Row, Tail};
pub use truncated::TruncatedElement;
