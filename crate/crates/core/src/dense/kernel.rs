//! Word-level substitution over `F_p` with machine integers, used by the
//! exhaustive searches.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::schur::{Element, Kind, Label};

/// Sparse map columns: `cols[j]` lists `(row, coeff)` for the image of `x_j`.
pub type Columns = Vec<Vec<(usize, u64)>>;

pub type Image = HashMap<(usize, Label), u64>;

/// An element of a Sym/Ext/Tensor functor over `F_p` as plain integer terms.
#[derive(Clone, Debug)]
pub struct FpElement {
    pub p: u64,
    pub terms: Vec<(usize, Label, u64)>,
}

impl FpElement {
    pub fn new(e: &Element) -> Result<Self> {
        let Field::Prime(p) = e.field() else {
            return Err(Error::Unsupported("integer kernel needs F_p".into()));
        };
        if e.spec().components().iter().any(|k| matches!(k, Kind::Schur(_))) {
            return Err(Error::Unsupported("Schur components need characteristic 0".into()));
        }
        let terms = e
            .terms()
            .iter()
            .map(|((c, l), v)| (*c, l.clone(), v.residue_value().expect("F_p residue")))
            .collect();
        Ok(FpElement { p, terms })
    }

    pub fn filter(&self, keep: impl Fn(&Label) -> bool) -> FpElement {
        FpElement {
            p: self.p,
            terms: self.terms.iter().filter(|(_, l, _)| keep(l)).cloned().collect(),
        }
    }

    pub fn image(&self, cols: &Columns) -> Image {
        let mut out = Image::new();
        self.image_into(cols, &mut out);
        out
    }

    pub fn image_into(&self, cols: &Columns, out: &mut Image) {
        let p = self.p;
        let mut stack: Vec<(Vec<usize>, u64)> = Vec::new();
        for (c, label, coeff) in &self.terms {
            stack.clear();
            stack.push((Vec::new(), *coeff));
            for &j in label.indices() {
                let mut next = Vec::with_capacity(stack.len() * cols[j].len());
                for (w, a) in &stack {
                    for &(row, b) in &cols[j] {
                        let mut w2 = w.clone();
                        w2.push(row);
                        next.push((w2, a * b % p));
                    }
                }
                stack = next;
            }
            for (w, a) in stack.drain(..) {
                let Some((l, neg)) = normalize(label, w) else { continue };
                let v = if neg { (p - a) % p } else { a };
                let slot = out.entry((*c, l)).or_insert(0);
                *slot = (*slot + v) % p;
            }
        }
        out.retain(|_, v| *v != 0);
    }
}

/// Re-labels an image word as the same kind of label as `like`.
fn normalize(like: &Label, mut w: Vec<usize>) -> Option<(Label, bool)> {
    match like {
        Label::Word(_) => Some((Label::Word(w), false)),
        Label::Sym(_) => {
            w.sort_unstable();
            Some((Label::Sym(w), false))
        }
        Label::Ext(_) => {
            let mut odd = false;
            for i in 1..w.len() {
                let mut j = i;
                while j > 0 && w[j - 1] > w[j] {
                    w.swap(j - 1, j);
                    odd = !odd;
                    j -= 1;
                }
            }
            if w.windows(2).any(|x| x[0] == x[1]) {
                None
            } else {
                Some((Label::Ext(w), odd))
            }
        }
    }
}

pub fn image_of(e: &Element) -> Result<Image> {
    let fp = FpElement::new(e)?;
    Ok(fp.terms.into_iter().map(|(c, l, v)| ((c, l), v)).collect())
}

pub fn matrix_columns(m: &Matrix) -> Columns {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter_map(|i| m.get(i, j).residue_value().filter(|v| *v != 0).map(|v| (i, v)))
                .collect()
        })
        .collect()
}
