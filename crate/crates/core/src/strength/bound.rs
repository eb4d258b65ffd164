use crate::error::{Error, Result};
use crate::schur::FunctorSpec;

/// Number of `(e_1, …, e_k) ≥ 0` with `Σ e_i d_i = d`, where `d_1, …, d_k` are the
/// degrees of the irreducible summands of `q` (with multiplicity). Bounds the
/// strength of every element in the image of a polynomial map out of `q`.
pub fn image_strength_bound(q: &FunctorSpec, d: usize) -> Result<u128> {
    let degrees = q.irreducible_degrees();
    if let Some(bad) = degrees.iter().find(|&&di| di >= d) {
        return Err(Error::Invalid(format!("summand degree {bad} is not below {d}")));
    }
    Ok(count_solutions(&degrees, d))
}

/// Coefficient of `t^d` in `Π 1/(1 − t^{d_i})`.
pub fn count_solutions(degrees: &[usize], d: usize) -> u128 {
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for &di in degrees {
        if di == 0 {
            continue;
        }
        for s in di..=d {
            ways[s] += ways[s - di];
        }
    }
    ways[d]
}
