use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::limits::TruncatedElement;
use crate::schur::{Element, Kind};

/// Class of a pair of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairClass {
    /// Independent; equivalent to `(x1, x2)`.
    Top,
    /// `(λu, μu)` with `u ≠ 0`, normalized so the first nonzero of `(λ, μ)` is 1.
    ProjectivePoint { lambda: Scalar, mu: Scalar },
    Zero,
}

/// Class of a degree-≤2 tuple, computed from a truncation at `level`. Ranks of a
/// truncation only bound the ranks of the limit from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Class {
    /// Counts `(a, b, c)` of `S^1`, `S^2` and `Λ^2` components.
    pub profile: (usize, usize, usize),
    pub level: usize,
    /// Dimension of the span of the linear components.
    pub linear_rank: usize,
    /// Set when `a = 2`.
    pub pair: Option<PairClass>,
    pub sym_ranks: Vec<usize>,
    pub alt_ranks: Vec<usize>,
}

impl fmt::Display for Deg2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match &self.pair {
            Some(PairClass::Top) => parts.push("pair top".to_string()),
            Some(PairClass::ProjectivePoint { lambda, mu }) => parts.push(format!("pair point [{lambda}:{mu}]")),
            Some(PairClass::Zero) => parts.push("pair zero".to_string()),
            None if self.profile.0 > 0 => parts.push(format!("linear rank {}", self.linear_rank)),
            None => {}
        }
        for r in &self.sym_ranks {
            parts.push(format!("rank {r}"));
        }
        for r in &self.alt_ranks {
            parts.push(format!("alternating rank {r}"));
        }
        write!(f, "{} at level {}", parts.join(", "), self.level)
    }
}

/// Gram matrix of a quadric: `a_ii` on the diagonal, `a_ij / 2` off it.
pub fn symmetric_matrix(e: &Element, component: usize) -> Result<Matrix> {
    let field = e.field();
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("quadric ranks in characteristic 2".into()));
    }
    let half = field.from_i64(2).inv().expect("char ≠ 2");
    let mut m = Matrix::zeros(field, e.n(), e.n());
    for ((c, l), v) in e.terms() {
        if *c != component {
            continue;
        }
        let (i, j) = (l.indices()[0], l.indices()[1]);
        if i == j {
            m.set(i, i, v.clone());
        } else {
            let h = v * &half;
            m.set(i, j, h.clone());
            m.set(j, i, h);
        }
    }
    Ok(m)
}

/// `A` with `a_ij = c`, `a_ji = −c` for each term `c x_i ∧ x_j`.
pub fn alternating_matrix(e: &Element, component: usize) -> Matrix {
    let field = e.field();
    let mut m = Matrix::zeros(field, e.n(), e.n());
    for ((c, l), v) in e.terms() {
        if *c == component {
            let (i, j) = (l.indices()[0], l.indices()[1]);
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    m
}

pub fn classify_deg2(e: &Element) -> Result<Deg2Class> {
    let field = e.field();
    let kinds = e.spec().components();
    let mut profile = (0, 0, 0);
    let mut linear = Vec::new();
    let mut sym_ranks = Vec::new();
    let mut alt_ranks = Vec::new();
    for (c, kind) in kinds.iter().enumerate() {
        match kind {
            Kind::Sym(1) => {
                profile.0 += 1;
                let mut row = vec![field.zero(); e.n()];
                for ((cc, l), v) in e.terms() {
                    if *cc == c {
                        row[l.indices()[0]] = v.clone();
                    }
                }
                linear.push(row);
            }
            Kind::Sym(2) => {
                profile.1 += 1;
                sym_ranks.push(symmetric_matrix(e, c)?.rank());
            }
            Kind::Ext(2) => {
                profile.2 += 1;
                let r = alternating_matrix(e, c).rank();
                if r % 2 != 0 {
                    return Err(Error::Invalid(format!("odd alternating rank {r}")));
                }
                alt_ranks.push(r);
            }
            other => return Err(Error::Unsupported(format!("classification of {other}"))),
        }
    }
    let linear_rank = if linear.is_empty() || e.n() == 0 {
        0
    } else {
        Matrix::from_rows(field, linear.clone())?.rank()
    };
    let pair = (profile.0 == 2).then(|| pair_class(&linear, linear_rank));
    Ok(Deg2Class {
        profile,
        level: e.n(),
        linear_rank,
        pair,
        sym_ranks,
        alt_ranks,
    })
}

/// Classifies the top layer of a truncation.
pub fn classify_truncated(p: &TruncatedElement) -> Result<Deg2Class> {
    let top = p.top().ok_or_else(|| Error::InsufficientData("empty truncation".into()))?;
    classify_deg2(top)
}

fn pair_class(rows: &[Vec<Scalar>], rank: usize) -> PairClass {
    match rank {
        0 => PairClass::Zero,
        2 => PairClass::Top,
        _ => {
            let k = rows[0]
                .iter()
                .zip(&rows[1])
                .position(|(v, w)| !v.is_zero() || !w.is_zero())
                .expect("rank 1");
            let (l, m) = (rows[0][k].clone(), rows[1][k].clone());
            let lead = if l.is_zero() { m.clone() } else { l.clone() };
            let inv = lead.inv().expect("nonzero");
            PairClass::ProjectivePoint {
                lambda: &l * &inv,
                mu: &m * &inv,
            }
        }
    }
}
