//! Surjectivity of `ω ↦ P([id_U | ω]) r` from `Hom(V, U)` onto `P(U)`, with
//! `r = Σ_α v_α ⊗ e_{α_1} ⊗ ⋯ ⊗ e_{α_{d−1}}` and `dim V = n^{d−1}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::schur::{all_words, Element, FunctorSpec, Kind, Label, Symmetrizer, TensorVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub rank: usize,
    pub dim: usize,
    pub full: bool,
}

/// The witness `r` in `T^d(U ⊕ V)`: `U` holds coordinates `0..n`, `v_α` is
/// coordinate `n + rank(α)` with `α` ranked lexicographically.
pub fn omega_witness(d: usize, n: usize) -> TensorVec {
    let field = Field::Rationals;
    all_words(n, d - 1)
        .into_iter()
        .enumerate()
        .map(|(k, alpha)| {
            let mut w = vec![n + k];
            w.extend(alpha);
            (w, field.one())
        })
        .collect()
}

/// Builds the matrix of `ω ↦ P([I | ω]) r` (rows: coordinates of `P(U)`,
/// columns: the elementary maps `E_{iβ}`) and compares its rank with `dim P(U)`.
pub fn omega_check(kind: &Kind, n: usize) -> Result<OmegaReport> {
    let d = kind.degree();
    if d == 0 {
        return Err(Error::Invalid(format!("omega_check needs positive degree, got {kind}")));
    }
    let field = Field::Rationals;
    let v_dim = n.pow(d as u32 - 1);
    let big = n + v_dim;
    let r = project(kind, &omega_witness(d, n), big)?;
    let mut coords: BTreeMap<(usize, Label), usize> = BTreeMap::new();
    let mut columns = Vec::new();
    for i in 0..n {
        for beta in 0..v_dim {
            let mut map = Matrix::zeros(field, n, big);
            for u in 0..n {
                map.set(u, u, field.one());
            }
            map.set(i, n + beta, field.one());
            let img = r.apply_map(&map)?;
            let mut col = Vec::new();
            for (key, v) in img.terms() {
                let len = coords.len();
                let row = *coords.entry(key.clone()).or_insert(len);
                col.push((row, v.clone()));
            }
            columns.push(col);
        }
    }
    let mut m = Matrix::zeros(field, coords.len(), columns.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m.set(i, j, v);
        }
    }
    let rank = if coords.is_empty() { 0 } else { m.rank() };
    let dim = kind.dim(n);
    Ok(OmegaReport {
        rank,
        dim,
        full: rank == dim,
    })
}

/// Image of a tensor under `T^d → P`.
fn project(kind: &Kind, t: &TensorVec, n: usize) -> Result<Element> {
    let field = Field::Rationals;
    let spec = FunctorSpec::single(kind.clone());
    let mut e = Element::zero(spec, field, n);
    match kind {
        Kind::Tensor(_) => {
            for (w, c) in t {
                e.add_term(0, Label::Word(w.clone()), c.clone())?;
            }
        }
        Kind::Sym(_) => {
            for (w, c) in t {
                let mut w = w.clone();
                w.sort_unstable();
                e.add_term(0, Label::Sym(w), c.clone())?;
            }
        }
        Kind::Ext(_) => {
            for (w, c) in t {
                let mut s = w.clone();
                s.sort_unstable();
                if s.windows(2).all(|p| p[0] != p[1]) {
                    e.add_term(0, Label::Ext(w.clone()), c.clone())?;
                }
            }
        }
        Kind::Schur(l) => {
            let img = Symmetrizer::new(l).apply(t, field);
            for (w, c) in img {
                e.add_term(0, Label::Word(w), c)?;
            }
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(s: &str) -> Kind {
        let spec: FunctorSpec = s.parse().unwrap();
        spec.components().remove(0)
    }

    #[test]
    fn tensor_two_by_two() {
        let r = omega_check(&kind("T2"), 2).unwrap();
        assert_eq!((r.rank, r.dim, r.full), (4, 4, true));
    }

    #[test]
    fn one_dimensional_base() {
        for d in 2..=4 {
            let r = omega_check(&Kind::Tensor(d), 1).unwrap();
            assert_eq!((r.rank, r.dim), (1, 1));
        }
    }

    #[test]
    fn sym3_on_plane() {
        let r = omega_check(&kind("S3"), 2).unwrap();
        assert_eq!((r.rank, r.dim, r.full), (4, 4, true));
    }

    #[test]
    fn small_cases_are_surjective() {
        for d in 2..=3 {
            for n in 1..=3 {
                for k in [Kind::Tensor(d), Kind::Sym(d), Kind::Ext(d)] {
                    let r = omega_check(&k, n).unwrap();
                    assert!(r.full, "{k} n={n}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn schur_hook() {
        let r = omega_check(&kind("[2,1]"), 2).unwrap();
        assert!(r.full);
        assert_eq!(r.dim, 2);
    }

    #[test]
    fn degree_one_is_the_identity() {
        let r = omega_check(&Kind::Sym(1), 3).unwrap();
        assert_eq!((r.rank, r.dim, r.full), (3, 3, true));
    }
}
