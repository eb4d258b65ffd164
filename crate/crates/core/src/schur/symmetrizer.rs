//! Schur functors as Young symmetrizer images inside `T^d`.
//!
//! The canonical tableau of `λ` numbers the cells `0..d` row by row. The
//! symmetrizer `c_λ = b_λ ∘ a_λ` first symmetrizes over the row group, then
//! antisymmetrizes over the column group. Its image in `(K^n)^{⊗d}` is `S_λ(K^n)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::schur::Partition;

pub type Word = Vec<usize>;
pub type TensorVec = BTreeMap<Word, Scalar>;

/// Position permutations of the row and column groups of the canonical tableau.
#[derive(Clone, Debug)]
pub struct Symmetrizer {
    lambda: Partition,
    row_group: Vec<Vec<usize>>,
    col_group: Vec<(Vec<usize>, bool)>,
}

impl Symmetrizer {
    pub fn new(lambda: &Partition) -> Self {
        let mut cell_index = BTreeMap::new();
        for (k, cell) in lambda.cells().enumerate() {
            cell_index.insert(cell, k);
        }
        let d = lambda.size();
        let rows: Vec<Vec<usize>> = (0..lambda.len())
            .map(|r| (0..lambda.part(r)).map(|c| cell_index[&(r, c)]).collect())
            .collect();
        let conj = lambda.conjugate();
        let cols: Vec<Vec<usize>> = (0..conj.len())
            .map(|c| (0..conj.part(c)).map(|r| cell_index[&(r, c)]).collect())
            .collect();
        Symmetrizer {
            lambda: lambda.clone(),
            row_group: young_subgroup(d, &rows).into_iter().map(|(p, _)| p).collect(),
            col_group: young_subgroup(d, &cols),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.lambda
    }

    /// `c_λ` applied to a tensor.
    pub fn apply(&self, v: &TensorVec, field: Field) -> TensorVec {
        let sym = act(&self.row_group.iter().map(|p| (p.clone(), false)).collect::<Vec<_>>(), v, field);
        act(&self.col_group, &sym, field)
    }

    pub fn apply_word(&self, w: &[usize], field: Field) -> TensorVec {
        let mut v = TensorVec::new();
        v.insert(w.to_vec(), field.one());
        self.apply(&v, field)
    }

    /// The word placing letter `r` in every cell of row `r` (offset by `base`); its
    /// symmetrizer image is a highest weight vector of `S_λ`.
    pub fn highest_weight_word(&self, base: usize) -> Word {
        self.lambda.cells().map(|(r, _)| base + r).collect()
    }
}

/// All permutations preserving each block, with their parity.
fn young_subgroup(d: usize, blocks: &[Vec<usize>]) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![((0..d).collect::<Vec<_>>(), false)];
    for block in blocks {
        let perms = permutations(block.len());
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for (base, odd) in &out {
            for (perm, podd) in &perms {
                let mut p = base.clone();
                for (i, &j) in perm.iter().enumerate() {
                    p[block[i]] = base[block[j]];
                }
                next.push((p, odd ^ podd));
            }
        }
        out = next;
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting at `pos` moves the new largest element past `k - 1 - pos` others
            out.push((q, odd ^ ((k - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// `Σ ± σ·v` where `σ·w` moves the letter at position `i` to position `σ(i)`.
fn act(group: &[(Vec<usize>, bool)], v: &TensorVec, field: Field) -> TensorVec {
    let mut out = TensorVec::new();
    for (w, c) in v {
        for (perm, odd) in group {
            let mut moved = vec![0; w.len()];
            for (i, &letter) in w.iter().enumerate() {
                moved[perm[i]] = letter;
            }
            let slot = out.entry(moved).or_insert_with(|| field.zero());
            if *odd {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A basis of `S_λ(K^n)` embedded in `T^{|λ|}(K^n)`.
#[derive(Clone, Debug)]
pub struct SchurBasis {
    pub partition: Partition,
    pub n: usize,
    /// Basis vectors in word coordinates.
    pub vectors: Vec<TensorVec>,
}

impl SchurBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The `n^d × dim` embedding matrix, rows indexed by words in lexicographic order.
    pub fn embedding(&self) -> Matrix {
        let words = all_words(self.n, self.partition.size());
        let columns: Vec<Vec<Scalar>> = self
            .vectors
            .iter()
            .map(|v| {
                words
                    .iter()
                    .map(|w| v.get(w).cloned().unwrap_or_else(|| Field::Rationals.zero()))
                    .collect()
            })
            .collect();
        Matrix::from_columns(Field::Rationals, words.len(), &columns).expect("consistent shape")
    }

    /// Coordinates of a tensor with respect to this basis, or `None` when it is not
    /// in the span.
    pub fn coordinates(&self, v: &TensorVec) -> Result<Option<Vec<Scalar>>> {
        let words = all_words(self.n, self.partition.size());
        let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rhs = vec![Field::Rationals.zero(); words.len()];
        for (w, c) in v {
            let i = index
                .get(w)
                .ok_or_else(|| Error::IndexOutOfRange(format!("word {w:?} in dimension {}", self.n)))?;
            rhs[*i] = c.clone();
        }
        self.embedding().solve_linear(&rhs)
    }

    /// Basis vector combination `Σ coords_i b_i`.
    pub fn combine(&self, coords: &[(usize, Scalar)]) -> Result<TensorVec> {
        let mut out = TensorVec::new();
        for (i, c) in coords {
            let b = self
                .vectors
                .get(*i)
                .ok_or_else(|| Error::IndexOutOfRange(format!("basis index {i} of {}", self.dim())))?;
            for (w, v) in b {
                let slot = out.entry(w.clone()).or_insert_with(|| Field::Rationals.zero());
                *slot += &(v * c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

/// All words of length `d` over `[n]`, lexicographic.
pub fn all_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// Incremental echelon basis over sparse tensors, used to pick independent vectors.
#[derive(Default)]
pub(crate) struct SparseSpan {
    rows: Vec<(Word, TensorVec)>,
}

impl SparseSpan {
    /// Reduces `v` against the span; returns true (and extends the span) when independent.
    pub(crate) fn insert(&mut self, v: &TensorVec) -> bool {
        let mut r = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = r.get(pivot).cloned() {
                for (w, x) in row {
                    let slot = r.entry(w.clone()).or_insert_with(|| c.field().zero());
                    *slot -= &(&c * x);
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        let Some((pivot, lead)) = r.iter().next().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (w, x) in &r {
                    let slot = row.entry(w.clone()).or_insert_with(|| c.field().zero());
                    *slot -= &(&c * x);
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Basis of the image of the Young symmetrizer of `λ` on `T^{|λ|}(K^n)` over `Q`:
/// symmetrizer images of words in lexicographic order, keeping the independent ones.
pub fn schur_basis(lambda: &Partition, n: usize) -> SchurBasis {
    let sym = Symmetrizer::new(lambda);
    let mut span = SparseSpan::default();
    let mut vectors = Vec::new();
    if n > 0 || lambda.is_empty() {
        for w in all_words(n, lambda.size()) {
            // c_λ(w) only depends on w up to the row group, so row-sorted words suffice
            if !row_sorted(lambda, &w) {
                continue;
            }
            let img = sym.apply_word(&w, Field::Rationals);
            if !img.is_empty() && span.insert(&img) {
                vectors.push(img);
            }
        }
    }
    SchurBasis {
        partition: lambda.clone(),
        n,
        vectors,
    }
}

fn row_sorted(lambda: &Partition, w: &[usize]) -> bool {
    let mut k = 0;
    for r in 0..lambda.len() {
        let len = lambda.part(r);
        if w[k..k + len].windows(2).any(|p| p[0] > p[1]) {
            return false;
        }
        k += len;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn antisymmetrizer_example() {
        let b = schur_basis(&p("1,1"), 2);
        assert_eq!(b.dim(), 1);
        let v = &b.vectors[0];
        assert_eq!(v.len(), 2);
        assert_eq!(v[&vec![0, 1]], -v[&vec![1, 0]].clone());
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(schur_basis(&p("2"), 2).dim(), 3);
        assert_eq!(schur_basis(&p("2,1"), 2).dim(), 2);
        assert_eq!(schur_basis(&p("1,1"), 1).dim(), 0);
    }

    #[test]
    fn symmetrizer_is_quasi_idempotent() {
        // c_λ² = (d!/f^λ) c_λ
        let l = p("2,1");
        let s = Symmetrizer::new(&l);
        let v = s.apply_word(&[0, 1, 0], Field::Rationals);
        let vv = s.apply(&v, Field::Rationals);
        let factor = Field::Rationals.from_i64(3);
        for (w, c) in &v {
            assert_eq!(vv[w], c * &factor);
        }
    }

    #[test]
    fn highest_weight_vector_is_nonzero() {
        for l in Partition::all(4) {
            let s = Symmetrizer::new(&l);
            let hw = s.apply_word(&s.highest_weight_word(0), Field::Rationals);
            assert!(!hw.is_empty(), "{l}");
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let b = schur_basis(&p("2,1"), 3);
        let coords = vec![(0, Field::Rationals.from_i64(2)), (3, Field::Rationals.from_i64(-1))];
        let v = b.combine(&coords).unwrap();
        let x = b.coordinates(&v).unwrap().unwrap();
        assert_eq!(x[0], Field::Rationals.from_i64(2));
        assert_eq!(x[3], Field::Rationals.from_i64(-1));
        let mut outside = TensorVec::new();
        outside.insert(vec![0, 0, 0], Field::Rationals.one());
        assert_eq!(b.coordinates(&outside).unwrap(), None);
    }
}
