mod common;

use common::*;
use polyfunctor::strength::{
    image_strength_bound, oracle_strength, quadric_element, quadric_matrix, strength_deg2, strength_unipotent,
    unipotent_matrix, wedge_element, Combine, Mode, StrengthCertificate, StrengthTable, Variant,
};
use polyfunctor::{Field, Matrix, Scalar};
use proptest::prelude::*;

fn dot(g: &[Scalar], x: &[Scalar]) -> Scalar {
    let mut t = x[0].field().zero();
    for (a, b) in g.iter().zip(x) {
        t += &(a * b);
    }
    t
}

/// Value of the certificate's sum at `(x, y)`, reading each term as a bilinear
/// form; radicals contribute their base-field part `radicand·g'(x)h'(y)`.
fn eval_certificate(c: &StrengthCertificate, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut total = x[0].field().zero();
    for t in &c.terms {
        let mut pair = |g: &[Scalar], h: &[Scalar], scale: &Scalar| {
            let v = match &t.combine {
                Combine::Product => &(&dot(g, x) * &dot(h, y)) + &(&dot(h, x) * &dot(g, y)),
                Combine::Wedge => &(&dot(g, x) * &dot(h, y)) - &(&dot(h, x) * &dot(g, y)),
                Combine::Bilinear { a, b } => {
                    &(&(a * &dot(g, x)) * &dot(h, y)) + &(&(b * &dot(h, x)) * &dot(g, y))
                }
            };
            total += &(scale * &v);
        };
        pair(&t.g, &t.h, &x[0].field().one());
        if let Some(r) = &t.radical {
            pair(&r.g, &r.h, &r.radicand);
        }
    }
    total
}

fn point(seed: u64, n: usize) -> Vec<Scalar> {
    let mut g = rng(seed);
    (0..n).map(|_| small(&mut g, Q, 5)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadric_strength_is_half_rank(seed in any::<u64>(), n in 1usize..7, r in 0usize..7) {
        let r = r.min(n);
        let a = symmetric_of_rank(&mut rng(seed), n, r);
        let s = strength_deg2(&a, Mode::Sym).unwrap();
        let rank = bareiss_rank(&a);
        prop_assert_eq!(s.exact(), Some(rank.div_ceil(2)));
        prop_assert!(s.certificate.verify().unwrap());
        prop_assert_eq!(&s.certificate.target, &quadric_element(&a).unwrap());
        // xᵀAy·2 against the symmetrized products
        for k in 0..3 {
            let (x, y) = (point(seed ^ k, n), point(seed ^ (k + 7), n));
            let two = Q.from_i64(2);
            prop_assert_eq!(eval_certificate(&s.certificate, &x, &y), &two * &bilinear(&a, &x, &y));
        }
    }

    #[test]
    fn alternating_strength_is_half_rank(seed in any::<u64>(), n in 2usize..8, pairs in 0usize..4) {
        let pairs = pairs.min(n / 2);
        let a = alternating_of_rank(&mut rng(seed), n, pairs);
        let s = strength_deg2(&a, Mode::Alt).unwrap();
        prop_assert_eq!(s.exact(), Some(bareiss_rank(&a) / 2));
        prop_assert!(s.certificate.verify().unwrap());
        prop_assert_eq!(&s.certificate.target, &wedge_element(&a).unwrap());
        let (x, y) = (point(seed, n), point(seed ^ 3, n));
        prop_assert_eq!(eval_certificate(&s.certificate, &x, &y), bilinear(&a, &x, &y));
    }

    #[test]
    fn full_mode_bounds_are_consistent(seed in any::<u64>(), n in 1usize..6) {
        let mut g = rng(seed);
        let a = Matrix::from_rows(Q, (0..n).map(|_| (0..n).map(|_| small(&mut g, Q, 2)).collect()).collect()).unwrap();
        let s = strength_deg2(&a, Mode::Full).unwrap();
        prop_assert!(s.lower <= s.upper);
        prop_assert_eq!(s.certificate.claimed(), s.upper);
        prop_assert!(s.certificate.verify().unwrap());
        let (x, y) = (point(seed, n), point(seed ^ 5, n));
        prop_assert_eq!(eval_certificate(&s.certificate, &x, &y), bilinear(&a, &x, &y));
    }

    #[test]
    fn gram_matrix_round_trips(seed in any::<u64>(), n in 1usize..6) {
        let a = symmetric_of_rank(&mut rng(seed), n, n);
        prop_assert_eq!(quadric_matrix(&quadric_element(&a).unwrap()).unwrap(), a);
    }
}

#[test]
fn f5_quadrics_agree_with_oracle() {
    let f5 = Field::Prime(5);
    let table = StrengthTable::build(5, 3, 2, 1 << 30).unwrap();
    let mut g = rng(17);
    for round in 0..60 {
        let n = 3;
        let mut a = Matrix::zeros(f5, n, n);
        for i in 0..n {
            for j in i..n {
                let v = small(&mut g, f5, 2);
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
        }
        let e = quadric_element(&a).unwrap();
        let direct = strength_deg2(&a, Mode::Sym).unwrap();
        assert!(direct.certificate.verify().unwrap());
        let brute = table.strength(table.space.element_code(&e, 0).unwrap());
        assert_eq!(direct.exact(), brute, "{a}");
        if round < 2 {
            assert_eq!(oracle_strength(&e, Variant::Single, 3, 1 << 24).unwrap(), brute);
        }
    }
}

#[test]
fn unipotent_family() {
    for (x, s) in [("2", 2), ("-2", 2), ("0", 1), ("1", 1), ("5/2", 1), ("-3", 1)] {
        let u = strength_unipotent(&x.parse().unwrap()).unwrap();
        assert_eq!(u.strength, s, "x = {x}");
        if let Some(c) = &u.certificate {
            assert!(c.verify().unwrap());
        }
    }
    let x: Scalar = "5/2".parse().unwrap();
    let u = strength_unipotent(&x).unwrap();
    assert_eq!(u.mu, Some("2".parse().unwrap()));
    assert_eq!(u.a, Some("4/3".parse().unwrap()));
    assert_eq!(u.b, Some("-1/3".parse().unwrap()));
    let c = u.certificate.unwrap();
    for k in 0..4 {
        let (p, q) = (point(k, 2), point(k + 40, 2));
        assert_eq!(eval_certificate(&c, &p, &q), bilinear(&unipotent_matrix(&x), &p, &q));
    }
}

#[test]
fn bound_matches_brute_count() {
    let mut g = rng(5);
    use rand::Rng;
    for _ in 0..30 {
        let d = g.gen_range(2..9);
        let k = g.gen_range(1..4);
        let degrees: Vec<usize> = (0..k).map(|_| g.gen_range(1..d)).collect();
        let s = spec(&degrees.iter().map(|e| format!("S{e}")).collect::<Vec<_>>().join("+"));
        assert_eq!(image_strength_bound(&s, d).unwrap(), count_brute(&degrees, d), "{s} d={d}");
    }
}
