use crate::dense::{minimal_q, prefix_minimal_q, SymVector};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::limits::{EElement, Row, Tail, TruncatedElement};
use crate::schur::{Element, FunctorSpec, Kind, Label};

/// Shape of `(S^1)^a ⊕ P` with `P` a sum of `S^2` and `Λ^2` pieces, in the order
/// they appear in the spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Layout {
    pub linear: usize,
    pub pieces: Vec<Kind>,
}

impl Deg2Layout {
    /// Variables of `q` used per round.
    pub fn width(&self) -> usize {
        2 * self.pieces.len()
    }

    /// Level of `q` needed for `rows` output variables.
    pub fn q_level(&self, rows: usize) -> usize {
        self.linear + rows * self.width()
    }

    /// 0-based column of `q` for piece `i`, round `t`, slot `o ∈ {0, 1}`.
    pub fn column(&self, piece: usize, t: usize, o: usize) -> usize {
        self.linear + (t * self.pieces.len() + piece) * 2 + o
    }
}

/// Linear components first, then any mix of `S2` and `E2`.
pub fn deg2_layout(spec: &FunctorSpec) -> Result<Deg2Layout> {
    let kinds = spec.components();
    let linear = kinds.iter().take_while(|k| **k == Kind::Sym(1)).count();
    let pieces = kinds[linear..].to_vec();
    if let Some(bad) = pieces.iter().find(|k| !matches!(k, Kind::Sym(2) | Kind::Ext(2))) {
        return Err(Error::Unsupported(format!(
            "{spec}: expected S1 summands first, then S2 and E2 (found {bad})"
        )));
    }
    Ok(Deg2Layout { linear, pieces })
}

/// `(x_1, …, x_a, x_{a+1}x_{a+2} + …, …)` truncated for `rows` output variables.
pub fn canonical_q(spec: &FunctorSpec, field: Field, rows: usize) -> Result<TruncatedElement> {
    let layout = deg2_layout(spec)?;
    if layout.pieces.is_empty() {
        let mut top = Element::zero(spec.clone(), field, layout.linear);
        for s in 0..layout.linear {
            top.add_term(s, Label::Sym(vec![s]), field.one())?;
        }
        return TruncatedElement::from_top(&top, &[layout.linear]);
    }
    if layout.linear > 0 {
        prefix_minimal_q(spec, field, rows)
    } else {
        minimal_q(spec, field, rows, SymVector::Squarefree)
    }
}

/// Which family of renamed variables an index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `y`: variables of the quadric pieces.
    Y,
    /// `z`: variables of the alternating pieces.
    Z,
}

/// 1-based index in `x` of `y_m` or `z_m`: `y_{2ib+j} = x_{a+2ib+2ic+j}` and
/// `z_{2ic+j} = x_{a+2(i+1)b+2ic+j}`, with `1 ≤ j ≤ 2b` resp. `2c`.
pub fn interleave_index(a: usize, b: usize, c: usize, family: Family, m: usize) -> Option<usize> {
    let per = match family {
        Family::Y => 2 * b,
        Family::Z => 2 * c,
    };
    if per == 0 || m == 0 {
        return None;
    }
    let i = (m - 1) / per;
    let j = m - i * per;
    Some(match family {
        Family::Y => a + 2 * i * b + 2 * i * c + j,
        Family::Z => a + 2 * (i + 1) * b + 2 * i * c + j,
    })
}

/// The banded element of `E` sending the canonical `q` to `p` on the first
/// `rows` variables. For a quadric piece, column `2t−1` is the unit vector `e_t`
/// and column `2t` holds `a_{t,t}, a_{t,t+1}, …` from row `t` down; alternating
/// pieces start one row lower. Linear components map to their coefficient vectors.
pub fn deg2_specializer(p: &Element, rows: usize) -> Result<EElement> {
    let layout = deg2_layout(p.spec())?;
    if p.n() < rows {
        return Err(Error::InsufficientData(format!(
            "{rows} rows requested, coefficients known to level {}",
            p.n()
        )));
    }
    let field = p.field();
    let mut out: Vec<Row> = vec![Row::new(); rows];
    for ((c, label), v) in p.terms() {
        let idx = label.indices();
        if *c < layout.linear {
            if idx[0] < rows {
                out[idx[0]].insert(*c, v.clone());
            }
            continue;
        }
        let piece = c - layout.linear;
        let (t, k) = (idx[0], idx[1]);
        if k < rows {
            out[k].insert(layout.column(piece, t, 1), v.clone());
        }
    }
    for piece in 0..layout.pieces.len() {
        for (t, row) in out.iter_mut().enumerate() {
            row.insert(layout.column(piece, t, 0), field.one());
        }
    }
    EElement::from_rows(field, out, Tail::Truncated)
}
