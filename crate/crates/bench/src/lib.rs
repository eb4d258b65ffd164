//! Fixed inputs shared by the benchmarks.

use polyfunctor::limits::TruncatedElement;
use polyfunctor::{Element, Field, FunctorSpec, Label, Matrix};

/// Small deterministic generator so the inputs do not depend on a crate version.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407))
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    /// Uniform in `-r..=r`.
    pub fn small(&mut self, r: i64) -> i64 {
        (self.next() % (2 * r as u64 + 1)) as i64 - r
    }
}

pub fn symmetric_matrix(field: Field, n: usize, seed: u64) -> Matrix {
    let mut g = Lcg::new(seed);
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let v = field.from_i64(g.small(4));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// A quadric over `F_p` on `n` variables truncated at `level`.
pub fn random_quadric(p: u64, n: usize, seed: u64) -> TruncatedElement {
    let field = Field::Prime(p);
    let mut g = Lcg::new(seed);
    let mut e = Element::zero(FunctorSpec::single(polyfunctor::Kind::Sym(2)), field, n);
    for i in 0..n {
        for j in i..n {
            e.add_term(0, Label::Sym(vec![i, j]), field.from_i64(g.small(2)))
                .expect("labels in range");
        }
    }
    TruncatedElement::from_top(&e, &[n]).expect("single level")
}

/// `x1^3 + x1 x2^2 + x2^3` over `F_p`.
pub fn sample_cubic(p: u64) -> Element {
    let field = Field::Prime(p);
    let spec = FunctorSpec::single(polyfunctor::Kind::Sym(3));
    Element::from_terms(
        spec,
        field,
        2,
        [vec![0, 0, 0], vec![0, 1, 1], vec![1, 1, 1]]
            .into_iter()
            .map(|m| (0, Label::Sym(m), field.one())),
    )
    .expect("valid cubic")
}
