//! Exhaustive strength over a small prime field: forms are encoded as base-`p`
//! integers over the monomial basis, products are enumerated once, and strength
//! is the breadth-first distance from zero in the Cayley graph of the products.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{inv_mod, Field};
use crate::schur::{multisets, Element, Kind, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `f` is a sum of at most `k` products.
    Single,
    /// All components lie in the span of at most `k` reducible forms.
    Tuple,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Variant::Single),
            "tuple" => Ok(Variant::Tuple),
            _ => Err(Error::Parse(format!("unknown oracle variant `{s}`"))),
        }
    }
}

/// Degree-`d` forms in `n` variables over `F_p`, coded in base `p`.
#[derive(Clone, Debug)]
pub struct FormSpace {
    pub p: u64,
    pub n: usize,
    pub d: usize,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FormSpace {
    pub fn new(p: u64, n: usize, d: usize) -> Self {
        let monomials = multisets(n, d);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        FormSpace {
            p,
            n,
            d,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// `p^dim`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        self.p.checked_pow(self.dim() as u32)
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn decode(&self, mut code: u64) -> Vec<u64> {
        (0..self.dim())
            .map(|_| {
                let v = code % self.p;
                code /= self.p;
                v
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &v| acc * self.p + v)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.dim() {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn element_code(&self, e: &Element, component: usize) -> Result<u64> {
        let mut digits = vec![0; self.dim()];
        for ((c, label), v) in e.terms() {
            if *c != component {
                continue;
            }
            let i = self
                .index
                .get(label.indices())
                .ok_or_else(|| Error::Invalid(format!("label {label:?} outside S^{}", self.d)))?;
            digits[*i] = v.residue_value().ok_or_else(|| Error::Invalid("oracle needs F_p input".into()))?;
        }
        Ok(self.encode(&digits))
    }

    pub fn to_element(&self, code: u64) -> Element {
        let f = Field::Prime(self.p);
        let terms = self
            .decode(code)
            .into_iter()
            .zip(&self.monomials)
            .filter(|(v, _)| *v != 0)
            .map(|(v, m)| (0, Label::Sym(m.clone()), f.residue(v)))
            .collect::<Vec<_>>();
        Element::from_terms(crate::schur::FunctorSpec::single(Kind::Sym(self.d)), f, self.n, terms)
            .expect("valid monomials")
    }
}

/// Codes of all nonzero products `g·h` with `deg g, deg h ≥ 1`, sorted.
pub fn product_codes(space: &FormSpace, budget: u64) -> Result<Vec<u64>> {
    let p = space.p;
    let d = space.d;
    let size = space.size().filter(|&s| s <= budget).ok_or(Error::BudgetExceeded { budget })?;
    let mut seen = vec![false; size as usize];
    for e in 1..=d / 2 {
        let left = FormSpace::new(p, space.n, e);
        let right = FormSpace::new(p, space.n, d - e);
        let (ls, rs) = match (left.size(), right.size()) {
            (Some(a), Some(b)) if a.checked_mul(b).is_some_and(|w| w <= budget) => (a, b),
            _ => return Err(Error::BudgetExceeded { budget }),
        };
        // product index table: (i, j) -> position of the merged monomial
        let table: Vec<Vec<usize>> = left
            .monomials
            .iter()
            .map(|a| {
                right
                    .monomials
                    .iter()
                    .map(|b| {
                        let mut m = a.clone();
                        m.extend_from_slice(b);
                        m.sort_unstable();
                        space.index[&m]
                    })
                    .collect()
            })
            .collect();
        let found: Vec<Vec<u64>> = (1..ls)
            .into_par_iter()
            .map(|g| {
                let gd = left.decode(g);
                let mut out = Vec::new();
                for h in 1..rs {
                    let hd = right.decode(h);
                    let mut digits = vec![0u64; space.dim()];
                    for (i, &a) in gd.iter().enumerate().filter(|(_, a)| **a != 0) {
                        for (j, &b) in hd.iter().enumerate().filter(|(_, b)| **b != 0) {
                            let k = table[i][j];
                            digits[k] = (digits[k] + a * b) % p;
                        }
                    }
                    out.push(space.encode(&digits));
                }
                out
            })
            .collect();
        for c in found.into_iter().flatten() {
            seen[c as usize] = true;
        }
    }
    seen[0] = false;
    Ok(seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i as u64).collect())
}

/// Strength of every form of `S^d(F_p^n)`; `None` marks infinite strength
/// (nonzero forms of degree 1).
#[derive(Clone, Debug)]
pub struct StrengthTable {
    pub space: FormSpace,
    dist: Vec<u8>,
}

impl StrengthTable {
    pub fn build(p: u64, n: usize, d: usize, budget: u64) -> Result<Self> {
        check_prime(p, d)?;
        let space = FormSpace::new(p, n, d);
        let products = product_codes(&space, budget)?;
        let size = space.size().expect("checked by product_codes") as usize;
        if (size as u64).saturating_mul(products.len() as u64) > budget.saturating_mul(64) {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut dist = vec![u8::MAX; size];
        dist[0] = 0;
        let mut frontier = vec![0u64];
        let mut level = 0u8;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &f in &frontier {
                for &s in &products {
                    let g = space.add(f, s) as usize;
                    if dist[g] == u8::MAX {
                        dist[g] = level;
                        next.push(g as u64);
                    }
                }
            }
            frontier = next;
        }
        Ok(StrengthTable { space, dist })
    }

    pub fn strength(&self, code: u64) -> Option<usize> {
        match self.dist[code as usize] {
            u8::MAX => None,
            v => Some(v as usize),
        }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }
}

fn check_prime(p: u64, d: usize) -> Result<()> {
    if !crate::exact::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if p <= d as u64 {
        return Err(Error::Unsupported(format!("oracle needs p > d, got p = {p}, d = {d}")));
    }
    Ok(())
}

fn sym_degree(e: &Element) -> Result<usize> {
    let kinds = e.spec().components();
    match kinds.first() {
        Some(Kind::Sym(d)) if kinds.iter().all(|k| *k == Kind::Sym(*d)) => Ok(*d),
        _ => Err(Error::Unsupported(format!("oracle input must be (S^d)^e, got {}", e.spec()))),
    }
}

/// Decides `str(f) ≤ k` over `F_p` by exhaustive enumeration.
pub fn strength_leq_oracle(f: &Element, k: usize, variant: Variant, budget: u64) -> Result<bool> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::Unsupported("oracle runs over F_p only".into()));
    };
    let d = sym_degree(f)?;
    check_prime(p, d)?;
    let space = FormSpace::new(p, f.n(), d);
    match variant {
        Variant::Single => {
            if f.spec().num_components() != 1 {
                return Err(Error::Unsupported("single variant takes one form".into()));
            }
            let table = StrengthTable::build(p, f.n(), d, budget)?;
            let code = space.element_code(f, 0)?;
            Ok(table.strength(code).is_some_and(|s| s <= k))
        }
        Variant::Tuple => {
            let targets: Vec<Vec<u64>> = (0..f.spec().num_components())
                .map(|c| space.element_code(f, c).map(|code| space.decode(code)))
                .collect::<Result<_>>()?;
            let reducibles: Vec<Vec<u64>> = product_codes(&space, budget)?
                .into_iter()
                .map(|c| space.decode(c))
                .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
                .collect();
            let mut work = 0u64;
            let found = span_search(p, &targets, &reducibles, 0, k, &Basis::default(), &mut work, budget)?;
            Ok(found)
        }
    }
}

/// Row-reduced basis over `F_p`, pivot positions alongside.
#[derive(Clone, Debug, Default)]
struct Basis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Basis {
    fn reduce(&self, v: &[u64], p: u64) -> Vec<u64> {
        let mut r = v.to_vec();
        for (piv, row) in &self.rows {
            let c = r[*piv];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(row) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        r
    }

    fn with(&self, v: &[u64], p: u64) -> Option<Basis> {
        let r = self.reduce(v, p);
        let piv = r.iter().position(|&x| x != 0)?;
        let inv = inv_mod(r[piv], p);
        let r: Vec<u64> = r.iter().map(|x| x * inv % p).collect();
        let mut b = self.clone();
        for (_, row) in b.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        b.rows.push((piv, r));
        Some(b)
    }

    fn contains(&self, v: &[u64], p: u64) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }
}

#[allow(clippy::too_many_arguments)]
fn span_search(
    p: u64,
    targets: &[Vec<u64>],
    pool: &[Vec<u64>],
    start: usize,
    left: usize,
    basis: &Basis,
    work: &mut u64,
    budget: u64,
) -> Result<bool> {
    *work += 1;
    if *work > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if targets.iter().all(|t| basis.contains(t, p)) {
        return Ok(true);
    }
    if left == 0 {
        return Ok(false);
    }
    for i in start..pool.len() {
        if let Some(next) = basis.with(&pool[i], p) {
            if span_search(p, targets, pool, i + 1, left - 1, &next, work, budget)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Smallest `k` with `str(f) ≤ k`, searching `k = 0, 1, …, max_k`.
pub fn oracle_strength(f: &Element, variant: Variant, max_k: usize, budget: u64) -> Result<Option<usize>> {
    for k in 0..=max_k {
        if strength_leq_oracle(f, k, variant, budget)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
