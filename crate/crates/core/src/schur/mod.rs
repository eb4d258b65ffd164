//! Schur and polynomial functor spaces, functorial maps, Littlewood–Richardson
//! coefficients, the derivative functor and the shift decomposition.

mod derivative;
mod element;
mod lr;
mod order;
mod partition;
mod spec;
mod symmetrizer;

use std::collections::BTreeMap;

pub use derivative::{derivative_constant, derivative_dim, derivative_spec, shift_component_dim, shift_decompose};
pub use element::{Element, Key, Label};
pub use lr::lr_coefficient;
pub use order::lessdot;
pub use partition::Partition;
pub use spec::{FunctorSpec, Kind, Summand};
pub(crate) use symmetrizer::SparseSpan;
pub use symmetrizer::{all_words, schur_basis, SchurBasis, Symmetrizer, TensorVec, Word};

use crate::exact::{Field, Scalar};

/// Sorted multisets of size `d` over `[n]`.
pub fn multisets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing index lists of size `d` over `[n]`.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    multisets(n, d)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// Basis labels of a Sym/Ext/Tensor component in a fixed order.
pub fn basis_labels(kind: &Kind, n: usize) -> Option<Vec<Label>> {
    match kind {
        Kind::Sym(d) => Some(multisets(n, *d).into_iter().map(Label::Sym).collect()),
        Kind::Ext(d) => Some(subsets(n, *d).into_iter().map(Label::Ext).collect()),
        Kind::Tensor(d) => Some(all_words(n, *d).into_iter().map(Label::Word).collect()),
        Kind::Schur(_) => None,
    }
}

/// A basis of one component as coordinate vectors (Schur components over `Q`).
pub fn basis_elements(kind: &Kind, n: usize) -> Vec<BTreeMap<Label, Scalar>> {
    match basis_labels(kind, n) {
        Some(labels) => labels
            .into_iter()
            .map(|l| BTreeMap::from([(l, Field::Rationals.one())]))
            .collect(),
        None => {
            let Kind::Schur(lambda) = kind else { unreachable!() };
            schur_basis(lambda, n)
                .vectors
                .into_iter()
                .map(|v| v.into_iter().map(|(w, c)| (Label::Word(w), c)).collect())
                .collect()
        }
    }
}
