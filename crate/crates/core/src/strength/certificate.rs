use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::schur::{Element, FunctorSpec, Kind, Label};

/// How a pair of linear forms is turned into a degree-2 tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combine {
    /// `g·h` in `S^2`.
    Product,
    /// `g∧h` in `Λ^2`, or `g⊗h − h⊗g` when the target is `T^2`.
    Wedge,
    /// `a·g⊗h + b·h⊗g` in `T^2`.
    Bilinear { a: Scalar, b: Scalar },
}

impl Combine {
    pub fn tensor(field: Field) -> Self {
        Combine::Bilinear {
            a: field.one(),
            b: field.zero(),
        }
    }
}

/// Second half of a factor pair living over `K(s)` with `s² = radicand`:
/// the full factors are `g + s·g'` and `h + s·h'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub radicand: Scalar,
    pub g: Vec<Scalar>,
    pub h: Vec<Scalar>,
}

/// One bilinear term of a strength decomposition; `g` and `h` are coefficient
/// vectors of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub combine: Combine,
    pub g: Vec<Scalar>,
    pub h: Vec<Scalar>,
    pub radical: Option<Radical>,
}

/// `target = Σ combine(g_i, h_i)`; the number of terms bounds the strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthCertificate {
    pub target: Element,
    pub terms: Vec<Term>,
}

impl StrengthCertificate {
    pub fn claimed(&self) -> usize {
        self.terms.len()
    }

    /// Re-expands every term. Terms with a radical must have vanishing `s`-part,
    /// so each product lies over the base field; their sum must equal the target.
    pub fn verify(&self) -> Result<bool> {
        let mut sum = Element::zero(self.target.spec().clone(), self.target.field(), self.target.n());
        for t in &self.terms {
            sum = sum.add(&evaluate(&self.target, &t.combine, &t.g, &t.h)?)?;
            if let Some(r) = &t.radical {
                let irr = evaluate(&self.target, &t.combine, &t.g, &r.h)?
                    .add(&evaluate(&self.target, &t.combine, &r.g, &t.h)?)?;
                if !irr.is_zero() {
                    return Ok(false);
                }
                let rat = evaluate(&self.target, &t.combine, &r.g, &r.h)?.scale(&r.radicand);
                sum = sum.add(&rat)?;
            }
        }
        Ok(sum == self.target)
    }

    /// True when no term needs a square root outside the base field.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|t| t.radical.is_none())
    }
}

/// `combine(g, h)` as an element shaped like `like`.
pub fn evaluate(like: &Element, combine: &Combine, g: &[Scalar], h: &[Scalar]) -> Result<Element> {
    let n = like.n();
    if g.len() != n || h.len() != n {
        return Err(Error::ShapeMismatch(format!("linear forms of length {}/{} in dimension {n}", g.len(), h.len())));
    }
    let kind = match like.spec().summands() {
        [s] if s.multiplicity == 1 => s.kind.clone(),
        _ => return Err(Error::Unsupported(format!("certificate target {}", like.spec()))),
    };
    let field = like.field();
    let mut out = Element::zero(like.spec().clone(), field, n);
    for (i, gi) in g.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, hj) in h.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let c = gi * hj;
            match (&kind, combine) {
                (Kind::Sym(2), Combine::Product) => out.add_term(0, Label::Sym(vec![i, j]), c)?,
                (Kind::Ext(2), Combine::Wedge) => {
                    if i != j {
                        out.add_term(0, Label::Ext(vec![i, j]), c)?;
                    }
                }
                (Kind::Tensor(2), Combine::Wedge) => {
                    out.add_term(0, Label::Word(vec![i, j]), c.clone())?;
                    out.add_term(0, Label::Word(vec![j, i]), -c)?;
                }
                (Kind::Tensor(2), Combine::Bilinear { a, b }) => {
                    out.add_term(0, Label::Word(vec![i, j]), &c * a)?;
                    out.add_term(0, Label::Word(vec![j, i]), &c * b)?;
                }
                _ => {
                    return Err(Error::Unsupported(format!("combine {combine:?} into {kind}")));
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn spec_of(kind: Kind) -> FunctorSpec {
    FunctorSpec::single(kind)
}
