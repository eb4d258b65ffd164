//! Degree ≤ 2: classification of `(S^1)^a ⊕ (S^2)^b ⊕ (Λ^2)^c` tuples and the
//! explicit banded specializers from the canonical `q`.

mod banded;
mod classify;

pub use banded::{canonical_q, deg2_layout, deg2_specializer, interleave_index, Deg2Layout, Family};
pub use classify::{alternating_matrix, classify_deg2, classify_truncated, symmetric_matrix, Deg2Class, PairClass};
