use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::kernel::{Columns, FpElement};
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::limits::TruncatedElement;
use crate::schur::{basis_labels, Element, Label, SparseSpan, TensorVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitOutcome {
    Full,
    NotFull,
    /// Sampling did not reach full dimension; this is not a disproof.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMode {
    Exhaustive,
    Span { samples: usize, seed: u64 },
}

pub fn orbit_image_full_check(q: &TruncatedElement, m: usize, mode: OrbitMode, budget: u64) -> Result<OrbitOutcome> {
    let top = q.top().ok_or_else(|| Error::InsufficientData("empty truncation".into()))?;
    if m == 0 || q.spec().num_components() == 0 {
        return Ok(OrbitOutcome::Full);
    }
    match mode {
        OrbitMode::Exhaustive => exhaustive(top, m, budget),
        OrbitMode::Span { samples, seed } => span(top, m, samples, seed),
    }
}

/// Enumerates every `φ ∈ Hom(F_p^n, F_p^m)` and marks the images `P(φ) q`.
fn exhaustive(q: &Element, m: usize, budget: u64) -> Result<OrbitOutcome> {
    let Field::Prime(p) = q.field() else {
        return Err(Error::Unsupported("exhaustive mode runs over F_p".into()));
    };
    let fp = FpElement::new(q)?;
    let mut positions = BTreeMap::new();
    for (c, kind) in q.spec().components().iter().enumerate() {
        for l in basis_labels(kind, m).expect("no Schur components over F_p") {
            let len = positions.len();
            positions.insert((c, l), len);
        }
    }
    let dim = positions.len();
    let n = q.n();
    let exp = |k: usize| p.checked_pow(k as u32).filter(|&v| v <= budget);
    let targets = exp(dim).ok_or(Error::BudgetExceeded { budget })?;
    // only variables that occur matter; the rest of φ is irrelevant to the image
    let used: Vec<usize> = {
        let mut u: Vec<usize> = q.terms().keys().flat_map(|(_, l)| l.indices().to_vec()).collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    let maps = exp(used.len() * m).ok_or(Error::BudgetExceeded { budget })?;
    let chunk = 4096u64;
    let seen: Vec<bool> = (0..maps.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut seen = vec![false; targets as usize];
            let mut cols: Columns = vec![Vec::new(); n];
            for code in c * chunk..((c + 1) * chunk).min(maps) {
                let mut x = code;
                for &j in &used {
                    cols[j].clear();
                    for r in 0..m {
                        let v = x % p;
                        x /= p;
                        if v != 0 {
                            cols[j].push((r, v));
                        }
                    }
                }
                let img = fp.image(&cols);
                let mut idx = 0u64;
                for (key, v) in img {
                    idx += v * p.pow(positions[&key] as u32);
                }
                seen[idx as usize] = true;
            }
            seen
        })
        .reduce(
            || vec![false; targets as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    Ok(if seen.iter().all(|&s| s) {
        OrbitOutcome::Full
    } else {
        OrbitOutcome::NotFull
    })
}

/// Grows `span{P(g) q}` over sampled `g` until every component has full dimension.
fn span(q: &Element, m: usize, samples: usize, seed: u64) -> Result<OrbitOutcome> {
    let field = q.field();
    let kinds = q.spec().components();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spans: Vec<SparseSpan> = kinds.iter().map(|_| Default::default()).collect();
    let full: Vec<usize> = kinds.iter().map(|k| k.dim(m)).collect();
    for _ in 0..samples {
        if spans.iter().zip(&full).all(|(s, f)| s.dim() == *f) {
            break;
        }
        let data = (0..m * q.n()).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
        let g = Matrix::new(field, m, q.n(), data)?;
        let img = q.apply_map(&g)?;
        for (c, s) in spans.iter_mut().enumerate() {
            let v: TensorVec = img
                .terms()
                .iter()
                .filter(|((cc, _), _)| *cc == c)
                .map(|((_, l), v)| (label_key(l), v.clone()))
                .collect();
            if !v.is_empty() {
                s.insert(&v);
            }
        }
    }
    Ok(if spans.iter().zip(&full).all(|(s, f)| s.dim() == *f) {
        OrbitOutcome::Full
    } else {
        OrbitOutcome::Inconclusive
    })
}

fn label_key(l: &Label) -> Vec<usize> {
    l.indices().to_vec()
}
