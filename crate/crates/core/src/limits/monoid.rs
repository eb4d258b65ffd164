//! Row-finite `N × N` matrices stored to finite depth.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::limits::TruncatedElement;
use crate::schur::Element;

/// Finitely supported row, keyed by 0-based column.
pub type Row = BTreeMap<usize, Scalar>;

/// Behaviour past the stored rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Row `R + t` is the unit vector at column `C + t`.
    Identity,
    /// Every further row is zero.
    Zero,
    /// Nothing is known; queries fail with `InsufficientData`.
    Truncated,
}

impl std::fmt::Display for Tail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tail::Identity => "identity",
            Tail::Zero => "zero",
            Tail::Truncated => "truncated",
        })
    }
}

impl std::str::FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Tail::Identity),
            "zero" => Ok(Tail::Zero),
            "truncated" => Ok(Tail::Truncated),
            _ => Err(Error::Parse(format!("unknown tail `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Repr {
    /// Explicit rows; the identity tail starts at column `tail_col`.
    Rows { rows: Vec<Row>, tail_col: usize },
    /// Block diagonal; the identity tail continues the diagonal after the last block.
    Blocks(Vec<Matrix>),
}

/// An element of the monoid `E`, known to finite depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EElement {
    field: Field,
    repr: Repr,
    tail: Tail,
}

impl EElement {
    pub fn from_rows(field: Field, rows: Vec<Row>, tail: Tail) -> Result<Self> {
        let tail_col = rows.len();
        EElement::from_rows_with_tail(field, rows, tail, tail_col)
    }

    pub fn from_rows_with_tail(field: Field, rows: Vec<Row>, tail: Tail, tail_col: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().flat_map(|r| r.values()).find(|v| v.field() != field) {
            return Err(Error::MixedFields(field, bad.field()));
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(EElement {
            field,
            repr: Repr::Rows { rows, tail_col },
            tail,
        })
    }

    pub fn from_blocks(field: Field, blocks: Vec<Matrix>, tail: Tail) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.field() != field) {
            return Err(Error::MixedFields(field, b.field()));
        }
        Ok(EElement {
            field,
            repr: Repr::Blocks(blocks),
            tail,
        })
    }

    pub fn identity(field: Field) -> Self {
        EElement::from_blocks(field, vec![], Tail::Identity).expect("no entries")
    }

    pub fn zero(field: Field) -> Self {
        EElement::from_blocks(field, vec![], Tail::Zero).expect("no entries")
    }

    /// `g ↦ (g 0; 0 I_∞)`.
    pub fn from_gl(g: &Matrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::ShapeMismatch("GL element must be square".into()));
        }
        EElement::from_blocks(g.field(), vec![g.clone()], Tail::Identity)
    }

    /// A finite matrix in the upper-left corner followed by the given tail.
    pub fn from_matrix(m: &Matrix, tail: Tail) -> Result<Self> {
        EElement::from_blocks(m.field(), vec![m.clone()], tail)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `(R, C)`: the first tail row and the column its identity entry sits in.
    pub fn tail_start(&self) -> (usize, usize) {
        match &self.repr {
            Repr::Rows { rows, tail_col } => (rows.len(), *tail_col),
            Repr::Blocks(bs) => (bs.iter().map(Matrix::rows).sum(), bs.iter().map(Matrix::cols).sum()),
        }
    }

    pub fn stored_rows(&self) -> usize {
        self.tail_start().0
    }

    /// Row `i` (0-based).
    pub fn row(&self, i: usize) -> Result<Row> {
        let (r0, c0) = self.tail_start();
        if i >= r0 {
            return match self.tail {
                Tail::Identity => Ok(Row::from([(c0 + i - r0, self.field.one())])),
                Tail::Zero => Ok(Row::new()),
                Tail::Truncated => Err(Error::InsufficientData(format!("row {} beyond the {r0} stored rows", i + 1))),
            };
        }
        match &self.repr {
            Repr::Rows { rows, .. } => Ok(rows[i].clone()),
            Repr::Blocks(bs) => {
                let (mut r, mut c) = (0, 0);
                for b in bs {
                    if i < r + b.rows() {
                        return Ok((0..b.cols())
                            .filter(|&j| !b.get(i - r, j).is_zero())
                            .map(|j| (c + j, b.get(i - r, j).clone()))
                            .collect());
                    }
                    r += b.rows();
                    c += b.cols();
                }
                unreachable!("row index below the stored rows")
            }
        }
    }

    pub fn rows(&self, count: usize) -> Result<Vec<Row>> {
        (0..count).map(|i| self.row(i)).collect()
    }

    /// One more than the largest column used by the first `count` rows.
    pub fn support_bound(&self, count: usize) -> Result<usize> {
        Ok(self
            .rows(count)?
            .iter()
            .filter_map(|r| r.keys().next_back())
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0))
    }

    /// The upper-left `out × width` block `ψ`.
    pub fn psi(&self, out: usize, width: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(self.field, out, width);
        for (i, row) in self.rows(out)?.into_iter().enumerate() {
            for (j, v) in row {
                if j >= width {
                    return Err(Error::InsufficientData(format!(
                        "row {} uses column {} beyond width {width}",
                        i + 1,
                        j + 1
                    )));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Rows `0..count` as an explicit row list.
    pub fn to_rows(&self, count: usize) -> Result<Vec<Row>> {
        self.rows(count)
    }

    /// Largest `|i − j|` over nonzero entries in the first `count` rows.
    pub fn bandwidth(&self, count: usize) -> Result<usize> {
        Ok(self
            .rows(count)?
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.keys().map(move |&j| i.abs_diff(j)))
            .max()
            .unwrap_or(0))
    }
}

/// `q_L = P(ψ) p_N` with `ψ` the upper-left `L × N` block of `e`, for the smallest
/// stored level `N` covering the support of the first `L` rows.
pub fn e_apply(e: &EElement, p: &TruncatedElement, out_level: usize) -> Result<Element> {
    let need = e.support_bound(out_level)?;
    let width = p
        .levels()
        .iter()
        .copied()
        .find(|&l| l >= need)
        .ok_or_else(|| Error::InsufficientData(format!("need a layer of level >= {need}, top is {}", p.top_level())))?;
    e_apply_with_width(e, p, out_level, width)
}

/// [`e_apply`] with an explicit cut width `N`, which must cover the row support.
pub fn e_apply_with_width(e: &EElement, p: &TruncatedElement, out_level: usize, width: usize) -> Result<Element> {
    if e.field() != p.field() {
        return Err(Error::MixedFields(e.field(), p.field()));
    }
    let psi = e.psi(out_level, width)?;
    psi_apply(&psi, &p.project(width)?)
}

fn psi_apply(psi: &Matrix, layer: &Element) -> Result<Element> {
    layer.apply_map(psi)
}

/// `P(e) p` at each of the given levels.
pub fn e_act(e: &EElement, p: &TruncatedElement, levels: &[usize]) -> Result<TruncatedElement> {
    let layers = levels.iter().map(|&l| e_apply(e, p, l)).collect::<Result<Vec<_>>>()?;
    TruncatedElement::new(p.spec().clone(), p.field(), levels.to_vec(), layers)
}

/// The product `e1·e2`, so that `P(e1 e2) = P(e1) ∘ P(e2)`.
pub fn compose_e(e1: &EElement, e2: &EElement) -> Result<EElement> {
    if e1.field() != e2.field() {
        return Err(Error::MixedFields(e1.field(), e2.field()));
    }
    let field = e1.field();
    let tail = match (e1.tail(), e2.tail()) {
        (Tail::Zero, _) => Tail::Zero,
        (Tail::Truncated, _) | (Tail::Identity, Tail::Truncated) => Tail::Truncated,
        (Tail::Identity, t) => t,
    };
    if let (Repr::Blocks(a), Repr::Blocks(b)) = (e1.repr(), e2.repr()) {
        if a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.cols() == y.rows()) {
            let blocks = a.iter().zip(b).map(|(x, y)| x.mul(y)).collect::<Result<Vec<_>>>()?;
            return EElement::from_blocks(field, blocks, tail);
        }
    }
    let (r1, c1) = e1.tail_start();
    let (r2, c2) = e2.tail_start();
    let extra = r2.saturating_sub(c1);
    let count = if e1.tail() == Tail::Identity { r1 + extra } else { r1 };
    let mut rows = Vec::with_capacity(count);
    let mut tail = tail;
    for i in 0..count {
        match compose_row(&e1.row(i)?, e2, field) {
            Ok(r) => rows.push(r),
            Err(Error::InsufficientData(_)) => {
                tail = Tail::Truncated;
                break;
            }
            Err(err) => return Err(err),
        }
    }
    let tail_col = if tail == Tail::Identity { c2 + c1 + extra - r2 } else { rows.len() };
    EElement::from_rows_with_tail(field, rows, tail, tail_col)
}

fn compose_row(row: &Row, e2: &EElement, field: Field) -> Result<Row> {
    let mut out = Row::new();
    for (k, c) in row {
        for (j, v) in e2.row(*k)? {
            let slot = out.entry(j).or_insert_with(|| field.zero());
            *slot += &(c * &v);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{FunctorSpec, Label};

    const Q: Field = Field::Rationals;

    fn q_pairs(n: usize) -> Element {
        let spec: FunctorSpec = "S2".parse().unwrap();
        Element::from_terms(spec, Q, n, (0..n / 2).map(|i| (0, Label::Sym(vec![2 * i, 2 * i + 1]), Q.one()))).unwrap()
    }

    fn trunc(top: usize) -> TruncatedElement {
        let levels: Vec<usize> = (1..=top / 2).map(|i| 2 * i).collect();
        TruncatedElement::from_top(&q_pairs(top), &levels).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let p = trunc(8);
        assert_eq!(e_apply(&EElement::identity(Q), &p, 6).unwrap(), p.project(6).unwrap());
        assert!(e_apply(&EElement::zero(Q), &p, 6).unwrap().is_zero());
    }

    #[test]
    fn block_rows_and_tail() {
        let g = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        let e = EElement::from_blocks(Q, vec![g.clone(), Matrix::from_i64(Q, &[&[5, 6]])], Tail::Identity).unwrap();
        assert_eq!(e.tail_start(), (3, 4));
        assert_eq!(e.row(2).unwrap(), Row::from([(2, Q.from_i64(5)), (3, Q.from_i64(6))]));
        assert_eq!(e.row(3).unwrap(), Row::from([(4, Q.one())]));
        let t = EElement::from_blocks(Q, vec![g], Tail::Truncated).unwrap();
        assert!(matches!(t.row(2), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn block_products() {
        let a = Matrix::from_i64(Q, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_i64(Q, &[&[3, 0], &[1, 1]]);
        let ea = EElement::from_blocks(Q, vec![a.clone()], Tail::Identity).unwrap();
        let eb = EElement::from_blocks(Q, vec![b.clone()], Tail::Identity).unwrap();
        let c = compose_e(&ea, &eb).unwrap();
        assert_eq!(c, EElement::from_blocks(Q, vec![a.mul(&b).unwrap()], Tail::Identity).unwrap());
    }

    #[test]
    fn identity_and_zero_composition() {
        let rows = vec![Row::from([(1, Q.one()), (3, Q.from_i64(2))]), Row::from([(0, Q.one())])];
        let e = EElement::from_rows(Q, rows, Tail::Identity).unwrap();
        let id = EElement::identity(Q);
        let left = compose_e(&id, &e).unwrap();
        assert_eq!(left.rows(6).unwrap(), e.rows(6).unwrap());
        let right = compose_e(&e, &id).unwrap();
        assert_eq!(right.rows(6).unwrap(), e.rows(6).unwrap());
        let z = compose_e(&EElement::zero(Q), &e).unwrap();
        assert!(z.rows(6).unwrap().iter().all(Row::is_empty));
    }

    #[test]
    fn shifted_tail_composition() {
        // a 1x2 block followed by identity: row 1+t -> column 2+t
        let a = EElement::from_blocks(Q, vec![Matrix::from_i64(Q, &[&[1, 1]])], Tail::Identity).unwrap();
        let rows = vec![Row::from([(2, Q.one())]); 3];
        let b = EElement::from_rows(Q, rows, Tail::Identity).unwrap();
        let c = compose_e(&a, &b).unwrap();
        for i in 0..8 {
            let direct = compose_row(&a.row(i).unwrap(), &b, Q).unwrap();
            assert_eq!(c.row(i).unwrap(), direct, "row {i}");
        }
    }

    #[test]
    fn insufficient_layers() {
        let p = trunc(4);
        assert!(matches!(e_apply(&EElement::identity(Q), &p, 6), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn gl_inverse_round_trip() {
        let g = Matrix::from_i64(Q, &[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let e = EElement::from_gl(&g).unwrap();
        let einv = EElement::from_gl(&g.inverse().unwrap()).unwrap();
        let p = trunc(8);
        let moved = e_act(&e, &p, p.levels()).unwrap();
        let back = e_act(&einv, &moved, &[4, 6, 8]).unwrap();
        for l in [4, 6, 8] {
            assert_eq!(back.layer(l).unwrap(), &p.project(l).unwrap());
        }
    }
}
