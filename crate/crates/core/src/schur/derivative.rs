use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::schur::{basis_elements, Element, FunctorSpec, Kind};

/// `P′` by one-box branching on every summand; degree-0 pieces are dropped.
pub fn derivative_spec(spec: &FunctorSpec) -> FunctorSpec {
    let mut kinds = Vec::new();
    for s in spec.summands() {
        match &s.kind {
            Kind::Sym(d) => kinds.push((Kind::Sym(d - 1), s.multiplicity)),
            Kind::Ext(d) => kinds.push((Kind::Ext(d - 1), s.multiplicity)),
            Kind::Tensor(d) => kinds.push((Kind::Tensor(d - 1), s.multiplicity * d)),
            Kind::Schur(l) => {
                for smaller in l.remove_one_box() {
                    kinds.push((Kind::Schur(smaller), s.multiplicity));
                }
            }
        }
    }
    FunctorSpec::from_kinds(kinds)
}

/// Multiplicity of the constant functor in `P′`: one per `S1` summand, which the
/// spec grammar cannot hold.
pub fn derivative_constant(spec: &FunctorSpec) -> usize {
    spec.summands()
        .iter()
        .filter(|s| s.kind.degree() == 1)
        .map(|s| s.multiplicity)
        .sum()
}

/// `dim P′(K^n)`, constants included.
pub fn derivative_dim(spec: &FunctorSpec, n: usize) -> usize {
    derivative_spec(spec).dim(n) + derivative_constant(spec)
}

/// Splits `e ∈ P(K^{m+k})` by degree in the last `k` variables: entry `j` of the
/// result is the part scaling as `t^j` when those variables are scaled by `t`.
pub fn shift_decompose(e: &Element, m: usize) -> Result<Vec<Element>> {
    if m > e.n() {
        return Err(Error::Invalid(format!("split point {m} beyond dimension {}", e.n())));
    }
    let d = e.spec().degree();
    let mut parts: Vec<Element> = (0..=d)
        .map(|_| Element::zero(e.spec().clone(), e.field(), e.n()))
        .collect();
    for ((c, label), v) in e.terms() {
        parts[label.tail_degree(m)].push_raw((*c, label.clone()), v.clone());
    }
    Ok(parts)
}

/// Dimension of the degree-`j` part of `P(K^{n+k})` in the last `k` variables,
/// computed as the rank of the degree-`j` components of a basis.
pub fn shift_component_dim(spec: &FunctorSpec, n: usize, k: usize, j: usize) -> Result<usize> {
    let mut total = 0;
    for kind in spec.components() {
        let single = FunctorSpec::single(kind.clone());
        let field = Field::Rationals;
        let mut rows = Vec::new();
        let mut labels = std::collections::BTreeMap::new();
        let mut parts = Vec::new();
        for b in basis_elements(&kind, n + k) {
            let e = Element::from_terms(single.clone(), field, n + k, b.into_iter().map(|(l, v)| (0, l, v)))?;
            let piece = shift_decompose(&e, n)?.swap_remove(j);
            for (key, _) in piece.terms() {
                let len = labels.len();
                labels.entry(key.clone()).or_insert(len);
            }
            parts.push(piece);
        }
        for piece in &parts {
            let mut row = vec![field.zero(); labels.len()];
            for (key, v) in piece.terms() {
                row[labels[key]] = v.clone();
            }
            rows.push(row);
        }
        if !labels.is_empty() {
            total += Matrix::from_rows(field, rows)?.rank();
        }
    }
    Ok(total)
}
