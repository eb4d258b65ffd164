//! Independent oracles and seeded generators shared by the integration tests.
//! Nothing here calls the library's own algorithms for the quantity it checks.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use polyfunctor::limits::{EElement, Row, Tail, TruncatedElement};
use polyfunctor::{Element, Field, FunctorSpec, Kind, Label, Matrix, Partition, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const Q: Field = Field::Rationals;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(s: &str) -> FunctorSpec {
    s.parse().unwrap()
}

pub fn small(rng: &mut ChaCha8Rng, field: Field, r: i64) -> Scalar {
    field.from_i64(rng.gen_range(-r..=r))
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-6..=6);
        let d: i64 = rng.gen_range(1..=4);
        if n != 0 {
            return Scalar::Rational(BigRational::new(n.into(), d.into()));
        }
    }
}

/// Symmetric matrix `B D Bᵀ` of rank at most `r`.
pub fn symmetric_of_rank(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Matrix {
    let b = Matrix::from_rows(Q, (0..n).map(|_| (0..r).map(|_| small(rng, Q, 3)).collect()).collect()).unwrap();
    let mut d = Matrix::zeros(Q, r, r);
    for i in 0..r {
        d.set(i, i, small_rational(rng));
    }
    b.mul(&d).unwrap().mul(&b.transpose()).unwrap()
}

pub fn alternating_of_rank(rng: &mut ChaCha8Rng, n: usize, pairs: usize) -> Matrix {
    let b = Matrix::from_rows(Q, (0..n).map(|_| (0..2 * pairs).map(|_| small(rng, Q, 3)).collect()).collect())
        .unwrap();
    let mut j = Matrix::zeros(Q, 2 * pairs, 2 * pairs);
    for t in 0..pairs {
        let c = small_rational(rng);
        j.set(2 * t, 2 * t + 1, c.clone());
        j.set(2 * t + 1, 2 * t, -c);
    }
    b.mul(&j).unwrap().mul(&b.transpose()).unwrap()
}

fn as_rational(s: &Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational scalar")
}

/// Rank over Q by fraction-free (Bareiss) elimination on integers.
pub fn bareiss_rank(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut den = BigInt::one();
    for i in 0..rows {
        for j in 0..cols {
            let r = as_rational(m.get(i, j));
            den = num_integer::Integer::lcm(&den, r.denom());
        }
    }
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (as_rational(m.get(i, j)) * BigRational::from(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Value of the polynomial `e ∈ S^d(K^n)` at a point.
pub fn eval_sym(e: &Element, x: &[Scalar]) -> Scalar {
    let mut total = e.field().zero();
    for ((_, label), c) in e.terms() {
        let mut t = c.clone();
        for &i in label.indices() {
            t = &t * &x[i];
        }
        total += &t;
    }
    total
}

/// `Σ_{ij} a_ij x_i y_j` for a bilinear form.
pub fn bilinear(a: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut total = a.field().zero();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            total += &(&(a.get(i, j) * &x[i]) * &y[j]);
        }
    }
    total
}

/// Number of semistandard tableaux of shape `λ` with entries `1..=n`, by enumeration.
pub fn ssyt_brute(lambda: &[usize], n: usize) -> u64 {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut fill = vec![vec![0usize; lambda.first().copied().unwrap_or(0)]; lambda.len()];
    fn go(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        let mut count = 0;
        for v in lo_row.max(lo_col)..=n {
            fill[r][c] = v;
            count += go(k + 1, cells, fill, n);
        }
        count
    }
    go(0, &cells, &mut fill, n)
}

/// Pieri: `c^λ_{μ,(k)} = 1` iff `λ/μ` is a horizontal strip of size `k`.
pub fn pieri(lambda: &Partition, mu: &Partition, k: usize) -> u64 {
    if !lambda.contains(mu) || lambda.size() != mu.size() + k {
        return 0;
    }
    // no two boxes of λ/μ in one column: λ'_c − μ'_c ≤ 1
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let ok = (0..lambda.part(0)).all(|c| lc.part(c) - mc.part(c) <= 1);
    ok as u64
}

/// Nonnegative solutions of `Σ e_i d_i = d`, by nested enumeration.
pub fn count_brute(degrees: &[usize], d: usize) -> u128 {
    match degrees.split_first() {
        None => (d == 0) as u128,
        Some((&d0, rest)) => (0..=d / d0).map(|e| count_brute(rest, d - e * d0)).sum(),
    }
}

/// A random element of `spec` on `n` variables with about `terms` terms.
pub fn random_element(rng: &mut ChaCha8Rng, spec: &FunctorSpec, field: Field, n: usize, terms: usize) -> Element {
    let mut e = Element::zero(spec.clone(), field, n);
    let kinds = spec.components();
    for _ in 0..terms {
        let c = rng.gen_range(0..kinds.len());
        let d = kinds[c].degree();
        let idx: Vec<usize> = (0..d).map(|_| rng.gen_range(0..n)).collect();
        let label = match &kinds[c] {
            Kind::Sym(_) => {
                let mut s = idx;
                s.sort_unstable();
                Label::Sym(s)
            }
            Kind::Ext(_) => {
                let mut s = idx;
                s.sort_unstable();
                s.dedup();
                if s.len() < d {
                    continue;
                }
                Label::Ext(s)
            }
            _ => Label::Word(idx),
        };
        e.add_term(c, label, small(rng, field, 3)).unwrap();
    }
    e
}

/// A random row-finite element of `E` with `rows` stored rows, each supported
/// below `width`, with a truncated tail.
pub fn random_e(rng: &mut ChaCha8Rng, field: Field, rows: usize, width: usize, density: f64) -> EElement {
    let mut rs = vec![Row::new(); rows];
    for row in rs.iter_mut() {
        for j in 0..width {
            if rng.gen_bool(density) {
                let v = small(rng, field, 3);
                if !v.is_zero() {
                    row.insert(j, v);
                }
            }
        }
    }
    EElement::from_rows(field, rs, Tail::Truncated).unwrap()
}

/// `top` truncated at the given levels.
pub fn truncate(top: &Element, levels: &[usize]) -> TruncatedElement {
    TruncatedElement::from_top(top, levels).unwrap()
}

/// Stream with the tag `100 + 10i + j` at `(i, j)` (1-based), so every entry of
/// the specializer can be traced back to its coefficient.
pub fn tagged(kind: &Kind, n: usize) -> Element {
    let mut e = Element::zero(FunctorSpec::single(kind.clone()), Q, n);
    for i in 0..n {
        for j in i..n {
            let label = match kind {
                Kind::Sym(2) => Label::Sym(vec![i, j]),
                _ if i == j => continue,
                _ => Label::Ext(vec![i, j]),
            };
            e.add_term(0, label, Q.from_i64(100 + 10 * (i as i64 + 1) + j as i64 + 1)).unwrap();
        }
    }
    e
}

/// The upper-left `rows × cols` corner of the banded specializer, written with
/// symbolic coefficient names.
pub fn symbolic_layout(kind: &Kind, rows: usize, cols: usize) -> String {
    let p = tagged(kind, rows);
    let e = polyfunctor::quasiorder2::deg2_specializer(&p, rows).unwrap();
    let layout = polyfunctor::quasiorder2::deg2_layout(p.spec()).unwrap();
    let psi = e.psi(rows, layout.q_level(rows)).unwrap();
    let mut out = String::new();
    for i in 0..rows {
        let cells: Vec<String> = (0..cols)
            .map(|j| {
                let v = psi.get(i, j);
                if v.is_zero() {
                    "0".into()
                } else if v.is_one() {
                    "1".into()
                } else {
                    let t = v.to_string().trim_end_matches("/1").parse::<i64>().unwrap() - 100;
                    format!("a{}{}", t / 10, t % 10)
                }
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
