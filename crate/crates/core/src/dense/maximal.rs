//! The maximal element `r_d ∈ T^d_∞` and witnesses `P(e) r_d = p`.
//!
//! `r_1 = x_1` and `r_d = Σ_i Σ_j x_{ι(i,j,1)} ⊗_j r_{d−1}(x_{ι(i,j,2)}, x_{ι(i,j,3)}, …)`.

use std::collections::BTreeMap;

use crate::dense::witness::SpecializationWitness;
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::limits::{EElement, Row, Tail, TruncatedElement};
use crate::schur::{Element, FunctorSpec, Kind, Label, TensorVec, Word};

/// The injection `ι_d(i, j, k) = d·π(i−1, k−1) + j` (all 1-based), with `π` the
/// Cantor pairing `π(a, b) = (a+b)(a+b+1)/2 + b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingInjection;

impl PairingInjection {
    pub fn canonical() -> Self {
        PairingInjection
    }

    pub fn iota(&self, d: usize, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i >= 1 && k >= 1 && (1..=d).contains(&j));
        let (a, b) = (i - 1, k - 1);
        d * ((a + b) * (a + b + 1) / 2 + b) + j
    }

    /// Largest `ι_d(i, j, k)` with `i, k ≤ t`: the level of depth `t`.
    pub fn level(&self, d: usize, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.iota(d, t, d, t)
        }
    }
}

/// Inserts `v` into slot `j` (1-based) of every word of `t`.
pub fn slot_insert(j: usize, v: &TensorVec, t: &TensorVec) -> Result<TensorVec> {
    let deg = t.keys().next().map_or(0, Vec::len);
    if j == 0 || j > deg + 1 {
        return Err(Error::IndexOutOfRange(format!("slot {j} for words of length {deg}")));
    }
    let mut out = TensorVec::new();
    for (w, a) in t {
        for (letter, b) in v {
            let mut word = w.clone();
            word.insert(j - 1, *letter.first().ok_or_else(|| Error::Invalid("empty vector word".into()))?);
            let slot = out.entry(word).or_insert_with(|| a.field().zero());
            *slot += &(a * b);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `r_d` truncated at levels `ι`-depth `1..=depth`.
pub fn maximal_r(field: Field, d: usize, depth: usize, iota: &PairingInjection) -> Result<TruncatedElement> {
    if d == 0 {
        return Err(Error::Invalid("maximal_r needs d ≥ 1".into()));
    }
    if depth == 0 {
        return Err(Error::Invalid("maximal_r needs depth ≥ 1".into()));
    }
    let levels: Vec<usize> = (1..=depth).map(|t| iota.level(d, t)).collect();
    let top_level = *levels.last().expect("depth ≥ 1");
    let mut words = Vec::new();
    r_words(d, &|k| k - 1, top_level, iota, &mut words);
    let spec = FunctorSpec::single(Kind::Tensor(d));
    let top = Element::from_terms(spec, field, top_level, words.into_iter().map(|w| (0, Label::Word(w), field.one())))?;
    TruncatedElement::from_top(&top, &levels)
}

/// Words of `r_d(x_{f(1)}, x_{f(2)}, …)` with every letter below `limit`. `f`
/// takes 1-based variables to 0-based letters and is strictly increasing.
fn r_words(
    d: usize,
    f: &dyn Fn(usize) -> usize,
    limit: usize,
    iota: &PairingInjection,
    out: &mut Vec<Word>,
) {
    if d == 1 {
        if f(1) < limit {
            out.push(vec![f(1)]);
        }
        return;
    }
    let mut i = 1;
    while f(iota.iota(d, i, 1, 1)) < limit {
        for j in 1..=d {
            let head = f(iota.iota(d, i, j, 1));
            if head >= limit {
                break;
            }
            let inner = |k: usize| f(iota.iota(d, i, j, k + 1));
            let mut sub = Vec::new();
            r_words(d - 1, &inner, limit, iota, &mut sub);
            for mut w in sub {
                w.insert(j - 1, head);
                out.push(w);
            }
        }
        i += 1;
    }
}

/// Sparse columns keyed by 0-based source variable: `(output row, coeff)`.
type ColumnMap = BTreeMap<usize, Vec<(usize, Scalar)>>;

/// A witness `P(e) r = p` at every level of `p`. Each word of `p` is assigned to
/// `(i, j)` with `i` its smallest letter and `j` the first slot holding it.
pub fn maximal_specializer(p: &TruncatedElement, r: &TruncatedElement, budget: u64) -> Result<SpecializationWitness> {
    let d = match p.spec().components().as_slice() {
        [Kind::Tensor(d)] => *d,
        _ => return Err(Error::Unsupported(format!("maximal_specializer for {}", p.spec()))),
    };
    if r.spec() != p.spec() || r.field() != p.field() {
        return Err(Error::Invalid(format!("r in {} over {}", r.spec(), r.field())));
    }
    let top = p.top().ok_or_else(|| Error::InsufficientData("empty truncation".into()))?;
    let words: BTreeMap<Word, Scalar> = top
        .terms()
        .iter()
        .map(|((_, l), v)| (l.indices().to_vec(), v.clone()))
        .collect();
    let iota = PairingInjection::canonical();
    let cols = columns_for(p.field(), d, &words, &iota);
    let needed = cols.keys().next_back().map_or(0, |c| c + 1);
    if needed > r.top_level() {
        return Err(Error::DepthExceeded {
            needed,
            available: r.top_level(),
        });
    }
    let entries: u64 = cols.values().map(|c| c.len() as u64).sum();
    if entries > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let n = p.top_level();
    let mut rows: Vec<Row> = vec![Row::new(); n];
    for (c, col) in cols {
        for (row, v) in col {
            rows[row].insert(c, v);
        }
    }
    let e = EElement::from_rows(p.field(), rows, Tail::Truncated)?;
    SpecializationWitness::checked(r.clone(), p.clone(), e, p.levels().to_vec())
}

fn columns_for(field: Field, d: usize, words: &BTreeMap<Word, Scalar>, iota: &PairingInjection) -> ColumnMap {
    let mut cols = ColumnMap::new();
    if words.is_empty() {
        return cols;
    }
    if d == 1 {
        cols.insert(0, words.iter().map(|(w, c)| (w[0], c.clone())).collect());
        return cols;
    }
    let mut groups: BTreeMap<(usize, usize), BTreeMap<Word, Scalar>> = BTreeMap::new();
    for (w, c) in words {
        let i = *w.iter().min().expect("nonempty word");
        let j = w.iter().position(|&x| x == i).expect("minimum occurs");
        let mut rest = w.clone();
        rest.remove(j);
        groups.entry((i, j)).or_default().insert(rest, c.clone());
    }
    for ((i, j), rest) in groups {
        let head = iota.iota(d, i + 1, j + 1, 1) - 1;
        cols.insert(head, vec![(i, field.one())]);
        for (k, col) in columns_for(field, d - 1, &rest, iota) {
            cols.insert(iota.iota(d, i + 1, j + 1, k + 2) - 1, col);
        }
    }
    cols
}
