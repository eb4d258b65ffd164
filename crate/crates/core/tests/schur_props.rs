mod common;

use common::*;
use polyfunctor::schur::{basis_elements, derivative_dim, lessdot, lr_coefficient, shift_component_dim};
use polyfunctor::{Element, FunctorSpec, Kind, Label, Matrix, Partition};
use proptest::prelude::*;

fn random_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
    let mut g = rng(seed);
    Matrix::from_rows(Q, (0..rows).map(|_| (0..cols).map(|_| small(&mut g, Q, 2)).collect()).collect()).unwrap()
}

fn schur_element(seed: u64, lambda: &str, n: usize) -> Element {
    let p: Partition = lambda.parse().unwrap();
    let kind = Kind::Schur(p);
    let mut g = rng(seed);
    let mut e = Element::zero(FunctorSpec::single(kind.clone()), Q, n);
    for b in basis_elements(&kind, n) {
        let c = small(&mut g, Q, 3);
        for (l, v) in b {
            e.add_term(0, l, &v * &c).unwrap();
        }
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_map_is_functorial(seed in any::<u64>(), which in 0usize..5, n in 1usize..4, m in 1usize..4, k in 1usize..4) {
        let specs = ["S2", "E2+S1", "T3", "S3+E3", "[2,1]"];
        let s = spec(specs[which]);
        let e = if which == 4 {
            schur_element(seed, "2,1", n)
        } else {
            random_element(&mut rng(seed), &s, Q, n, 6)
        };
        let psi = random_matrix(seed ^ 1, m, n);
        let phi = random_matrix(seed ^ 2, k, m);
        let composed = e.apply_map(&phi.mul(&psi).unwrap()).unwrap();
        let stepwise = e.apply_map(&psi).unwrap().apply_map(&phi).unwrap();
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn identity_map_fixes_elements(seed in any::<u64>(), n in 1usize..5) {
        let e = random_element(&mut rng(seed), &spec("S2+E2+T2"), Q, n, 8);
        prop_assert_eq!(e.apply_map(&Matrix::identity(Q, n)).unwrap(), e);
    }

    #[test]
    fn lr_is_symmetric(d in 1usize..7, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), e in 0usize..7) {
        let e = e.min(d);
        let mus = Partition::all(e);
        let nus = Partition::all(d - e);
        let lams = Partition::all(d);
        let (mu, nu) = (&mus[i.index(mus.len())], &nus[j.index(nus.len())]);
        for lam in &lams {
            prop_assert_eq!(lr_coefficient(lam, mu, nu), lr_coefficient(lam, nu, mu));
        }
    }
}

#[test]
fn semistandard_counts_match_enumeration() {
    for d in 1..=6 {
        for lam in Partition::all(d) {
            for n in 1..=4 {
                assert_eq!(lam.semistandard_count(n), ssyt_brute(lam.parts(), n) as u128, "{lam} n={n}");
            }
        }
    }
}

#[test]
fn lr_matches_pieri_rule() {
    for d in 1..=7 {
        for k in 0..=d {
            for mu in Partition::all(d - k) {
                for lam in Partition::all(d) {
                    let row = Partition::row(k);
                    assert_eq!(lr_coefficient(&lam, &mu, &row), pieri(&lam, &mu, k), "{lam} {mu} ({k})");
                }
            }
        }
    }
}

#[test]
fn lr_dimension_identity() {
    // dim S_μ ⊗ S_ν = Σ_λ c^λ_{μν} dim S_λ, with dimensions counted by enumeration
    let n = 3;
    for a in 1..=3 {
        for b in 1..=3 {
            for mu in Partition::all(a) {
                for nu in Partition::all(b) {
                    let lhs = ssyt_brute(mu.parts(), n) * ssyt_brute(nu.parts(), n);
                    let rhs: u64 = Partition::all(a + b)
                        .iter()
                        .map(|lam| lr_coefficient(lam, &mu, &nu) * ssyt_brute(lam.parts(), n))
                        .sum();
                    assert_eq!(lhs, rhs, "{mu} {nu}");
                }
            }
        }
    }
}

#[test]
fn derivative_matches_degree_one_shift() {
    for s in ["S1", "S2", "S3", "S4", "E2", "E3", "E4", "[2,1]", "[2,2]", "S2+E3", "T2", "[2,1]+S1"] {
        let s = spec(s);
        for n in 0..=3 {
            for k in 0..=3 {
                assert_eq!(shift_component_dim(&s, n, k, 1).unwrap(), derivative_dim(&s, n) * k, "{s} n={n} k={k}");
            }
        }
    }
}

#[test]
fn shift_components_sum_to_dimension() {
    for s in ["S3", "E3", "[2,1]", "S2+E2"] {
        let s = spec(s);
        for (n, k) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let total: usize = (0..=s.degree()).map(|j| shift_component_dim(&s, n, k, j).unwrap()).sum();
            assert_eq!(total, s.dim(n + k), "{s} n={n} k={k}");
        }
    }
}

fn small_specs() -> Vec<FunctorSpec> {
    let kinds = ["S1", "S2", "S3", "E2", "E3", "[2,1]"];
    let mut out = vec![FunctorSpec::zero()];
    for a in 0..kinds.len() {
        out.push(spec(kinds[a]));
        for b in a..kinds.len() {
            out.push(spec(&format!("{}+{}", kinds[a], kinds[b])));
            for c in b..kinds.len() {
                out.push(spec(&format!("{}+{}+{}", kinds[a], kinds[b], kinds[c])));
            }
        }
    }
    out
}

#[test]
fn lessdot_is_irreflexive_and_acyclic() {
    let specs = small_specs();
    let n = specs.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| lessdot(&specs[i], &specs[j])).collect())
        .collect();
    for (i, s) in specs.iter().enumerate() {
        assert!(!adj[i].contains(&i), "{s} ⋖ {s}");
    }
    // Kahn's algorithm consumes every vertex iff there is no cycle
    let mut indeg = vec![0usize; n];
    for out in &adj {
        for &j in out {
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for &j in &adj[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    assert_eq!(seen, n);
}

#[test]
fn ext_labels_normalize_with_sign() {
    let mut e = Element::zero(spec("E2"), Q, 3);
    e.add_term(0, Label::Ext(vec![2, 0]), Q.one()).unwrap();
    assert_eq!(e.coeff(0, &Label::Ext(vec![0, 2])), Q.from_i64(-1));
}
