use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::limits::TruncatedElement;
use crate::schur::{Element, FunctorSpec, Kind, Label, Symmetrizer};

/// Choice of the per-block vector for `Sym` summands.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SymVector {
    /// `x_1 x_2 ⋯ x_d`.
    #[default]
    Squarefree,
    /// `x_1^d`.
    Power,
}

/// The fixed nonzero vector of one summand placed on variables `base..base + d`.
pub fn block_vector(kind: &Kind, field: Field, base: usize, sym: SymVector) -> Result<Vec<(Label, Scalar)>> {
    let d = kind.degree();
    match kind {
        Kind::Sym(_) => Ok(vec![(
            Label::Sym(match sym {
                SymVector::Squarefree => (base..base + d).collect(),
                SymVector::Power => vec![base; d],
            }),
            field.one(),
        )]),
        Kind::Ext(_) => Ok(vec![(Label::Ext((base..base + d).collect()), field.one())]),
        Kind::Schur(l) => {
            if field != Field::Rationals {
                return Err(Error::Unsupported("Schur summands need characteristic 0".into()));
            }
            let s = Symmetrizer::new(l);
            Ok(s.apply_word(&s.highest_weight_word(base), field)
                .into_iter()
                .map(|(w, c)| (Label::Word(w), c))
                .collect())
        }
        Kind::Tensor(_) => Err(Error::Unsupported(
            "tensor summands are reducible; decompose them into Schur summands first".into(),
        )),
    }
}

/// Sum of the per-summand vectors, one block of `ℓ·d` fresh variables per round,
/// starting at variable `offset` and placed in components `first_component..`.
#[allow(clippy::too_many_arguments)]
fn blocks_element(
    spec: &FunctorSpec,
    field: Field,
    blocks: usize,
    sym: SymVector,
    kinds: &[Kind],
    first_component: usize,
    offset: usize,
    n: usize,
) -> Result<Element> {
    let d = kinds.first().map_or(0, Kind::degree);
    let l = kinds.len();
    let mut e = Element::zero(spec.clone(), field, n);
    for t in 0..blocks {
        for (i, kind) in kinds.iter().enumerate() {
            for (label, c) in block_vector(kind, field, offset + (t * l + i) * d, sym)? {
                e.add_term(first_component + i, label, c)?;
            }
        }
    }
    Ok(e)
}

/// `q = q^{(1)} + … + q^{(k)}` truncated at levels `ℓd, 2ℓd, …, kℓd`, where each
/// `q^{(t)}` places one vector per summand in its own block of `d` variables.
pub fn minimal_q(spec: &FunctorSpec, field: Field, blocks: usize, sym: SymVector) -> Result<TruncatedElement> {
    if !spec.is_homogeneous() {
        return Err(Error::Invalid(format!("{spec} is not homogeneous")));
    }
    let kinds = spec.components();
    let width = kinds.len() * spec.degree();
    if blocks == 0 || width == 0 {
        return TruncatedElement::new(spec.clone(), field, vec![0], vec![Element::zero(spec.clone(), field, 0)]);
    }
    let top = blocks_element(spec, field, blocks, sym, &kinds, 0, 0, blocks * width)?;
    let levels: Vec<usize> = (1..=blocks).map(|t| t * width).collect();
    TruncatedElement::from_top(&top, &levels)
}

/// Splits `(S^1)^k ⊕ P` with `P` homogeneous of degree at least 2.
pub fn linear_prefix(spec: &FunctorSpec) -> Option<(usize, FunctorSpec)> {
    let kinds = spec.components();
    let k = kinds.iter().take_while(|c| **c == Kind::Sym(1)).count();
    let rest = FunctorSpec::new(
        spec.summands()
            .iter()
            .filter(|s| s.kind != Kind::Sym(1))
            .cloned()
            .collect(),
    )
    .ok()?;
    let ok = k > 0 && rest.degree() >= 2 && rest.is_homogeneous() && !kinds[k..].contains(&Kind::Sym(1));
    ok.then_some((k, rest))
}

/// `(x_1, …, x_k, q)` with `q` the minimal element of the homogeneous part on the
/// variables after the first `k`; levels `k, k + ℓd, …, k + blocks·ℓd`.
pub fn prefix_minimal_q(spec: &FunctorSpec, field: Field, blocks: usize) -> Result<TruncatedElement> {
    let (k, rest) = linear_prefix(spec)
        .ok_or_else(|| Error::Invalid(format!("{spec} is not (S1)^k plus a homogeneous part")))?;
    let kinds = rest.components();
    let width = kinds.len() * rest.degree();
    let n = k + blocks * width;
    let mut top = blocks_element(spec, field, blocks, SymVector::Squarefree, &kinds, k, k, n)?;
    for i in 0..k {
        top.add_term(i, Label::Sym(vec![i]), field.one())?;
    }
    let levels: Vec<usize> = (0..=blocks).map(|t| k + t * width).collect();
    TruncatedElement::from_top(&top, &levels)
}

/// `φ` with `P(φ) q = g` for `q` the default minimal element of `S^d` or `Λ^d`:
/// block `t` is sent onto the `t`-th term of `g` (its first variable carrying the
/// coefficient) and surplus blocks to zero.
pub fn specializer_to_target(q: &TruncatedElement, g: &Element) -> Result<Matrix> {
    let spec = q.spec();
    let kind = match spec.components().as_slice() {
        [k @ (Kind::Sym(_) | Kind::Ext(_))] => k.clone(),
        _ => return Err(Error::Unsupported(format!("specializer_to_target for {spec}"))),
    };
    if g.spec() != spec || g.field() != q.field() {
        return Err(Error::Invalid(format!("target in {} over {}", g.spec(), g.field())));
    }
    let d = kind.degree();
    let top = q.top().ok_or_else(|| Error::InsufficientData("empty truncation".into()))?;
    let blocks = top.n() / d;
    let expected = minimal_q(spec, q.field(), blocks, SymVector::Squarefree)?;
    if expected.top() != Some(top) {
        return Err(Error::Invalid("q is not the default minimal element".into()));
    }
    let needed = g.num_terms();
    if needed > blocks {
        return Err(Error::NotEnoughBlocks {
            needed,
            available: blocks,
        });
    }
    let field = q.field();
    let mut phi = Matrix::zeros(field, g.n(), top.n());
    for (t, ((_, label), c)) in g.terms().iter().enumerate() {
        for (s, &y) in label.indices().iter().enumerate() {
            let v = if s == 0 { c.clone() } else { field.one() };
            phi.set(y, t * d + s, v);
        }
    }
    debug_assert_eq!(&top.apply_map(&phi)?, g);
    Ok(phi)
}
