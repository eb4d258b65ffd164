//! Strength of tensors: exact values with certificates in degree 2, the
//! unipotent `2 × 2` family, an exhaustive oracle over `F_p` and the uniform
//! bound on strengths of images.

mod bound;
mod certificate;
mod deg2;
mod oracle;
mod unipotent;

pub use bound::{count_solutions, image_strength_bound};
pub use certificate::{evaluate, Combine, Radical, StrengthCertificate, Term};
pub use deg2::{
    jordan_blocks, quadric_element, quadric_matrix, strength_deg2, tensor_element, wedge_element, Deg2Strength, Mode,
};
pub use oracle::{oracle_strength, product_codes, strength_leq_oracle, FormSpace, StrengthTable, Variant};
pub use unipotent::{strength_unipotent, unipotent_matrix, Unipotent};
