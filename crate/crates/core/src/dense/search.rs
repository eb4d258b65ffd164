//! Round-by-round search for a block matrix `e` with `P(e) p = q`, `q` the
//! minimal element. Round `i` appends a block `ψ_i` on fresh input columns; the
//! parts of `p` of degree one in those columns give linear conditions on the rows
//! of `ψ_i`, and the remaining candidates are enumerated over `F_p`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dense::kernel::{Columns, FpElement, Image};
use crate::dense::minimal::{linear_prefix, minimal_q, prefix_minimal_q, SymVector};
use crate::dense::witness::SpecializationWitness;
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::limits::{EElement, Tail, TruncatedElement};
use crate::schur::{Kind, Label};

const CHUNK: u64 = 2048;

/// Searches for a witness of `q ⪯ p` with `blocks` rounds, where `q` is the
/// minimal element of `p`'s functor (or `(x_1, …, x_k, q)` for `(S^1)^k ⊕ P`).
/// Only ever returns witnesses that re-verify; `NotFound` is not a disproof.
pub fn minimal_specializer_search(p: &TruncatedElement, blocks: usize, budget: u64) -> Result<SpecializationWitness> {
    let field = p.field();
    let Field::Prime(prime) = field else {
        return Err(Error::Unsupported("the search runs over F_p".into()));
    };
    let spec = p.spec();
    if spec.components().iter().any(|k| matches!(k, Kind::Schur(_) | Kind::Tensor(_))) {
        return Err(Error::Unsupported(format!("search over {spec}")));
    }
    if prime <= spec.degree() as u64 {
        return Err(Error::Unsupported(format!("search needs p > d, got p = {prime}")));
    }
    let (target, out_levels) = match linear_prefix(spec) {
        Some(_) => {
            let q = prefix_minimal_q(spec, field, blocks)?;
            let levels = q.levels().to_vec();
            (q, levels)
        }
        None => {
            let q = minimal_q(spec, field, blocks, SymVector::Squarefree)?;
            let levels = if blocks == 0 { vec![] } else { q.levels().to_vec() };
            (q, levels)
        }
    };
    let targets = out_levels
        .iter()
        .map(|&l| FpElement::new(&target.project(l)?).map(|f| f.image(&identity_columns(l))))
        .collect::<Result<Vec<_>>>()?;
    let mut search = Search {
        p: prime,
        source: p,
        out_levels: &out_levels,
        targets: &targets,
        budget,
        examined: 0,
    };
    let found = search.round(0, 0, Vec::new())?;
    let Some(psis) = found else {
        return Err(Error::NotFound {
            examined: search.examined,
        });
    };
    let blocks = psis
        .iter()
        .map(|(psi, w)| to_matrix(psi, *w, prime))
        .collect::<Result<Vec<_>>>()?;
    let e = EElement::from_blocks(field, blocks, Tail::Truncated)?;
    SpecializationWitness::checked(p.clone(), target, e, out_levels)
}

fn identity_columns(n: usize) -> Columns {
    (0..n).map(|j| vec![(j, 1)]).collect()
}

fn to_matrix(rows: &[Vec<u64>], width: usize, p: u64) -> Result<Matrix> {
    let f = Field::Prime(p);
    Matrix::from_rows(
        f,
        rows.iter()
            .map(|r| {
                let mut r: Vec<Scalar> = r.iter().map(|&v| f.residue(v)).collect();
                r.resize(width, f.zero());
                r
            })
            .collect(),
    )
}

type Psi = (Vec<Vec<u64>>, usize);

struct Search<'a> {
    p: u64,
    source: &'a TruncatedElement,
    out_levels: &'a [usize],
    targets: &'a [Image],
    budget: u64,
    examined: u64,
}

/// Key of a degree-one term after removing its new index: (component, slot, rest).
type RestKey = (usize, usize, Label);

fn remove_tail(label: &Label, m: usize) -> Option<(usize, Label, usize)> {
    let idx = label.indices();
    let pos = idx.iter().position(|&i| i >= m)?;
    let v = idx[pos];
    let mut rest = idx.to_vec();
    rest.remove(pos);
    Some(match label {
        Label::Sym(_) => (0, Label::Sym(rest), v),
        Label::Ext(_) => (0, Label::Ext(rest), v),
        Label::Word(_) => (pos, Label::Word(rest), v),
    })
}

impl Search<'_> {
    fn round(&mut self, i: usize, n_prev: usize, cols: Columns) -> Result<Option<Vec<Psi>>> {
        if i == self.out_levels.len() {
            return Ok(Some(Vec::new()));
        }
        let p = self.p;
        let out_prev = if i == 0 { 0 } else { self.out_levels[i - 1] };
        let rows = self.out_levels[i] - out_prev;
        let top = self.source.top_level();
        for w in rows..=top.saturating_sub(n_prev) {
            let n_i = n_prev + w;
            let layer = FpElement::new(&self.source.project(n_i)?)?;
            let deg1 = layer.filter(|l| l.tail_degree(n_prev) == 1);
            let high = layer.filter(|l| l.tail_degree(n_prev) >= 2);
            // degree-one conditions: W x_a = T_a for each output row a
            let mut system: BTreeMap<RestKey, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
            for (c, label, coeff) in &deg1.terms {
                let (slot, rest, v) = remove_tail(label, n_prev).expect("one new index");
                let img = FpElement {
                    p,
                    terms: vec![(*c, rest, *coeff)],
                }
                .image(&cols);
                for ((c2, l2), val) in img {
                    let entry = system
                        .entry((c2, slot, l2))
                        .or_insert_with(|| (vec![0; w], vec![0; rows]));
                    entry.0[v - n_prev] = (entry.0[v - n_prev] + val) % p;
                }
            }
            let mut goal_high = Image::new();
            for ((c, label), val) in &self.targets[i] {
                match label.tail_degree(out_prev) {
                    0 => {}
                    1 => {
                        let (slot, rest, a) = remove_tail(label, out_prev).expect("one new index");
                        let entry = system
                            .entry((*c, slot, rest))
                            .or_insert_with(|| (vec![0; w], vec![0; rows]));
                        entry.1[a - out_prev] = *val;
                    }
                    _ => {
                        goal_high.insert((*c, label.clone()), *val);
                    }
                }
            }
            let Some((particular, kernel)) = solve_rows(&system, w, rows, p) else {
                continue;
            };
            let ctx = Candidate {
                n_prev,
                out_prev,
                w,
                cols: &cols,
                high: &high,
                goal: &goal_high,
            };
            // coordinate maps first, identity first
            let mut coordinate = Vec::new();
            for sigma in injections(rows, w) {
                let psi: Vec<Vec<u64>> = sigma
                    .iter()
                    .map(|&s| (0..w).map(|v| u64::from(v == s)).collect())
                    .collect();
                let ok = psi.iter().enumerate().all(|(a, r)| satisfies(&system, r, a, p));
                if ok {
                    coordinate.push(psi);
                }
            }
            self.charge(coordinate.len() as u64)?;
            let hits: Vec<Vec<Vec<u64>>> = coordinate.into_par_iter().filter(|psi| ctx.check(psi)).collect();
            if let Some(done) = self.descend(i, n_i, &ctx, hits, w)? {
                return Ok(Some(done));
            }
            let digits = (rows * kernel.len()) as u32;
            let Some(total) = p.checked_pow(digits) else {
                return Err(Error::NotFound { examined: self.examined });
            };
            let mut start = 0;
            while start < total {
                let end = (start + CHUNK).min(total);
                self.charge(end - start)?;
                let hits: Vec<Vec<Vec<u64>>> = (start..end)
                    .into_par_iter()
                    .map(|t| assemble(t, &particular, &kernel, p))
                    .filter(|psi| ctx.check(psi))
                    .collect();
                if let Some(done) = self.descend(i, n_i, &ctx, hits, w)? {
                    return Ok(Some(done));
                }
                start = end;
            }
        }
        Ok(None)
    }

    fn descend(
        &mut self,
        i: usize,
        n_i: usize,
        ctx: &Candidate<'_>,
        hits: Vec<Vec<Vec<u64>>>,
        w: usize,
    ) -> Result<Option<Vec<Psi>>> {
        for psi in hits {
            let cols = ctx.columns(&psi);
            if let Some(mut rest) = self.round(i + 1, n_i, cols)? {
                rest.insert(0, (psi, w));
                return Ok(Some(rest));
            }
        }
        Ok(None)
    }

    fn charge(&mut self, n: u64) -> Result<()> {
        self.examined += n;
        if self.examined > self.budget {
            Err(Error::NotFound { examined: self.examined })
        } else {
            Ok(())
        }
    }
}

struct Candidate<'a> {
    n_prev: usize,
    out_prev: usize,
    w: usize,
    cols: &'a Columns,
    high: &'a FpElement,
    goal: &'a Image,
}

impl Candidate<'_> {
    fn columns(&self, psi: &[Vec<u64>]) -> Columns {
        let mut cols = self.cols.clone();
        cols.resize(self.n_prev, Vec::new());
        for v in 0..self.w {
            cols.push(
                psi.iter()
                    .enumerate()
                    .filter(|(_, r)| r[v] != 0)
                    .map(|(a, r)| (self.out_prev + a, r[v]))
                    .collect(),
            );
        }
        cols
    }

    fn check(&self, psi: &[Vec<u64>]) -> bool {
        self.high.image(&self.columns(psi)) == *self.goal
    }
}

/// Row `a` of `ψ` is `x_a + Σ_t c_{a,t} k_t`; `t` encodes all coefficients in base `p`.
fn assemble(mut t: u64, particular: &[Vec<u64>], kernel: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    particular
        .iter()
        .map(|x0| {
            let mut row = x0.clone();
            for k in kernel {
                let c = t % p;
                t /= p;
                if c != 0 {
                    for (r, kv) in row.iter_mut().zip(k) {
                        *r = (*r + c * kv) % p;
                    }
                }
            }
            row
        })
        .collect()
}

fn satisfies(system: &BTreeMap<RestKey, (Vec<u64>, Vec<u64>)>, row: &[u64], a: usize, p: u64) -> bool {
    system
        .values()
        .all(|(coeffs, rhs)| coeffs.iter().zip(row).map(|(x, y)| x * y % p).sum::<u64>() % p == rhs[a])
}

/// Particular solutions per output row and a common kernel basis, or `None` if
/// some row's system is inconsistent.
fn solve_rows(
    system: &BTreeMap<RestKey, (Vec<u64>, Vec<u64>)>,
    w: usize,
    rows: usize,
    p: u64,
) -> Option<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    let f = Field::Prime(p);
    let mat: Vec<Vec<Scalar>> = system
        .values()
        .map(|(c, _)| c.iter().map(|&v| f.residue(v)).collect())
        .collect();
    if mat.is_empty() {
        let kernel = (0..w).map(|j| (0..w).map(|i| u64::from(i == j)).collect()).collect();
        return Some((vec![vec![0; w]; rows], kernel));
    }
    let m = Matrix::from_rows(f, mat).expect("rectangular");
    let mut particular = Vec::with_capacity(rows);
    for a in 0..rows {
        let rhs: Vec<Scalar> = system.values().map(|(_, r)| f.residue(r[a])).collect();
        let x = m.solve_linear(&rhs).expect("shapes agree")?;
        particular.push(x.iter().map(|s| s.residue_value().expect("F_p")).collect());
    }
    let kernel = m
        .kernel()
        .into_iter()
        .map(|k| k.iter().map(|s| s.residue_value().expect("F_p")).collect())
        .collect();
    Some((particular, kernel))
}

/// Injective maps `[rows] → [w]` in lexicographic order (identity first).
fn injections(rows: usize, w: usize) -> Vec<Vec<usize>> {
    fn rec(rows: usize, w: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= 4096 {
            return;
        }
        if cur.len() == rows {
            out.push(cur.clone());
            return;
        }
        for s in 0..w {
            if !cur.contains(&s) {
                cur.push(s);
                rec(rows, w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(rows, w, &mut Vec::new(), &mut out);
    out
}
