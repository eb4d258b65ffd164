use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::schur::{FunctorSpec, Kind};

/// Basis label of one coordinate. Variable indices are 0-based.
///
/// `Sym` holds a sorted multiset (a monomial), `Ext` a strictly increasing index
/// list (a wedge of basis vectors) and `Word` a tensor word. Tensor and Schur
/// components both use `Word`: a Schur component is stored through its
/// coordinates inside `T^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Sym(Vec<usize>),
    Ext(Vec<usize>),
    Word(Vec<usize>),
}

impl Label {
    pub fn indices(&self) -> &[usize] {
        match self {
            Label::Sym(v) | Label::Ext(v) | Label::Word(v) => v,
        }
    }

    /// Number of indices `>= m`: the degree in the trailing variables.
    pub fn tail_degree(&self, m: usize) -> usize {
        self.indices().iter().filter(|&&i| i >= m).count()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.indices().iter().copied().max()
    }

    fn fits(&self, kind: &Kind) -> bool {
        let idx = self.indices();
        if idx.len() != kind.degree() {
            return false;
        }
        match (self, kind) {
            (Label::Sym(v), Kind::Sym(_)) => v.windows(2).all(|w| w[0] <= w[1]),
            (Label::Ext(v), Kind::Ext(_)) => v.windows(2).all(|w| w[0] < w[1]),
            (Label::Word(_), Kind::Tensor(_) | Kind::Schur(_)) => true,
            _ => false,
        }
    }
}

/// Coordinate key: (component index, basis label).
pub type Key = (usize, Label);

/// A vector of `P(K^n)` in explicit coordinates. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    spec: FunctorSpec,
    field: Field,
    n: usize,
    terms: BTreeMap<Key, Scalar>,
}

impl Element {
    pub fn zero(spec: FunctorSpec, field: Field, n: usize) -> Self {
        Element {
            spec,
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        spec: FunctorSpec,
        field: Field,
        n: usize,
        terms: impl IntoIterator<Item = (usize, Label, Scalar)>,
    ) -> Result<Self> {
        let mut e = Element::zero(spec, field, n);
        for (c, label, coeff) in terms {
            e.add_term(c, label, coeff)?;
        }
        Ok(e)
    }

    /// A linear form `Σ c_i x_i` as an element of `S^1(K^n)`.
    pub fn linear_form(field: Field, coeffs: &[Scalar]) -> Self {
        let mut e = Element::zero(FunctorSpec::single(Kind::Sym(1)), field, coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(0, Label::Sym(vec![i]), c.clone()).expect("valid linear label");
        }
        e
    }

    pub fn spec(&self) -> &FunctorSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Key, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, component: usize, label: &Label) -> Scalar {
        self.terms
            .get(&(component, label.clone()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `coeff` to a coordinate. Ext labels may be given unsorted; they are
    /// normalized with the sign of the sorting permutation.
    pub fn add_term(&mut self, component: usize, label: Label, coeff: Scalar) -> Result<()> {
        if coeff.field() != self.field {
            return Err(Error::MixedFields(self.field, coeff.field()));
        }
        let kind = self.spec.component(component).ok_or_else(|| {
            Error::IndexOutOfRange(format!("component {component} of {}", self.spec))
        })?;
        let (label, coeff) = match label {
            Label::Sym(mut v) => {
                v.sort_unstable();
                (Label::Sym(v), coeff)
            }
            Label::Ext(v) => match sort_with_sign(v) {
                Some((v, odd)) => (Label::Ext(v), if odd { -coeff } else { coeff }),
                None => return Ok(()),
            },
            w => (w, coeff),
        };
        if !label.fits(&kind) {
            return Err(Error::Invalid(format!("label {label:?} does not fit {kind}")));
        }
        if label.indices().iter().any(|&i| i >= self.n) {
            return Err(Error::IndexOutOfRange(format!(
                "label {label:?} in dimension {}",
                self.n
            )));
        }
        self.accumulate((component, label), coeff);
        Ok(())
    }

    fn accumulate(&mut self, key: Key, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &coeff;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field, other.field));
        }
        if self.spec != other.spec || self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "{} over K^{} vs {} over K^{}",
                self.spec, self.n, other.spec, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        let mut out = Element::zero(self.spec.clone(), self.field, self.n);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v * s);
        }
        out
    }

    /// Image under the coordinate projection `K^n → K^m` (`m <= n`), i.e. every
    /// variable with index `>= m` set to zero.
    pub fn restrict(&self, m: usize) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|((_, l), _)| l.indices().iter().all(|&i| i < m))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Element {
            spec: self.spec.clone(),
            field: self.field,
            n: m.min(self.n),
            terms,
        }
    }

    /// Image under the inclusion `K^n → K^m` onto the first coordinates.
    pub fn embed(&self, m: usize) -> Result<Element> {
        if m < self.n && self.terms.keys().any(|(_, l)| l.max_index().is_some_and(|i| i >= m)) {
            return Err(Error::Invalid(format!("cannot embed into K^{m}")));
        }
        let mut e = self.clone();
        e.n = m;
        Ok(e)
    }

    /// Relabels variables through `map` (index `i` goes to `map(i)`) into `K^m`.
    pub fn relabel(&self, m: usize, map: impl Fn(usize) -> usize) -> Result<Element> {
        let mut out = Element::zero(self.spec.clone(), self.field, m);
        for ((c, l), v) in &self.terms {
            let moved: Vec<usize> = l.indices().iter().map(|&i| map(i)).collect();
            let label = match l {
                Label::Sym(_) => Label::Sym(moved),
                Label::Ext(_) => Label::Ext(moved),
                Label::Word(_) => Label::Word(moved),
            };
            out.add_term(*c, label, v.clone())?;
        }
        Ok(out)
    }

    /// Keeps only the coordinates of one component (the others become zero).
    pub fn component_part(&self, component: usize) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|((c, _), _)| *c == component)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Element {
            spec: self.spec.clone(),
            field: self.field,
            n: self.n,
            terms,
        }
    }

    pub(crate) fn push_raw(&mut self, key: Key, coeff: Scalar) {
        self.accumulate(key, coeff);
    }

    /// `P(φ)` for `φ: K^n → K^m` given as an `m × n` matrix; column `j` is the
    /// image of the `j`-th basis vector (the substitution `x_j ↦ Σ_i φ_ij y_i`).
    pub fn apply_map(&self, phi: &Matrix) -> Result<Element> {
        if phi.field() != self.field {
            return Err(Error::MixedFields(phi.field(), self.field));
        }
        if phi.cols() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "map with {} columns applied in dimension {}",
                phi.cols(),
                self.n
            )));
        }
        let columns: Vec<Vec<(usize, Scalar)>> = (0..phi.cols())
            .map(|j| {
                (0..phi.rows())
                    .filter_map(|i| {
                        let v = phi.get(i, j);
                        (!v.is_zero()).then(|| (i, v.clone()))
                    })
                    .collect()
            })
            .collect();
        let mut out = Element::zero(self.spec.clone(), self.field, phi.rows());
        for ((c, label), coeff) in &self.terms {
            for (img, v) in expand_label(label, &columns, self.field) {
                out.accumulate((*c, img), &v * coeff);
            }
        }
        Ok(out)
    }
}

/// Sorts and reports the parity of the permutation; `None` on a repeated index.
pub(crate) fn sort_with_sign(mut v: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// Expands the image of one basis label under the map with the given sparse columns.
pub(crate) fn expand_label(
    label: &Label,
    columns: &[Vec<(usize, Scalar)>],
    field: Field,
) -> BTreeMap<Label, Scalar> {
    let mut partial: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    partial.insert(Vec::new(), field.one());
    for &j in label.indices() {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (word, a) in &partial {
            for (row, b) in &columns[j] {
                let (w, coeff) = match label {
                    Label::Word(_) => {
                        let mut w = word.clone();
                        w.push(*row);
                        (w, a * b)
                    }
                    Label::Sym(_) => {
                        let mut w = word.clone();
                        let pos = w.partition_point(|&x| x <= *row);
                        w.insert(pos, *row);
                        (w, a * b)
                    }
                    Label::Ext(_) => {
                        let pos = word.partition_point(|&x| x < *row);
                        if word.get(pos) == Some(row) {
                            continue;
                        }
                        let mut w = word.clone();
                        w.insert(pos, *row);
                        // moving e_row left past the larger indices
                        let swaps = word.len() - pos;
                        let c = a * b;
                        (w, if swaps % 2 == 1 { -c } else { c })
                    }
                };
                let slot = next.entry(w).or_insert_with(|| field.zero());
                *slot += &coeff;
            }
        }
        next.retain(|_, v| !v.is_zero());
        partial = next;
    }
    partial
        .into_iter()
        .map(|(w, v)| {
            let l = match label {
                Label::Sym(_) => Label::Sym(w),
                Label::Ext(_) => Label::Ext(w),
                Label::Word(_) => Label::Word(w),
            };
            (l, v)
        })
        .collect()
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let multi = self.spec.num_components() > 1;
        let mut first = true;
        for ((c, label), v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if multi {
                write!(f, "[{c}]")?;
            }
            if !v.is_one() {
                write!(f, "({v})*")?;
            }
            let vars: Vec<String> = label.indices().iter().map(|i| format!("x{}", i + 1)).collect();
            let sep = match label {
                Label::Sym(_) => "*",
                Label::Ext(_) => "^",
                Label::Word(_) => "@",
            };
            write!(f, "{}", vars.join(sep))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn spec(s: &str) -> FunctorSpec {
        s.parse().unwrap()
    }

    #[test]
    fn sym_substitution() {
        // x1 x2 under x1, x2 ↦ y1
        let e = Element::from_terms(spec("S2"), Q, 2, [(0, Label::Sym(vec![0, 1]), Q.one())]).unwrap();
        let phi = Matrix::from_i64(Q, &[&[1, 1]]);
        let img = e.apply_map(&phi).unwrap();
        let expected = Element::from_terms(spec("S2"), Q, 1, [(0, Label::Sym(vec![0, 0]), Q.one())]).unwrap();
        assert_eq!(img, expected);
    }

    #[test]
    fn ext_determinant_scaling() {
        let e = Element::from_terms(spec("E2"), Q, 2, [(0, Label::Ext(vec![0, 1]), Q.one())]).unwrap();
        let phi = Matrix::from_i64(Q, &[&[2, 0], &[0, 3]]);
        let img = e.apply_map(&phi).unwrap();
        assert_eq!(img.coeff(0, &Label::Ext(vec![0, 1])), Q.from_i64(6));
        assert_eq!(img.num_terms(), 1);
        // a swap gives the sign
        let swap = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(e.apply_map(&swap).unwrap(), e.scale(&Q.from_i64(-1)));
    }

    #[test]
    fn ext_labels_normalize() {
        let mut e = Element::zero(spec("E2"), Q, 3);
        e.add_term(0, Label::Ext(vec![2, 0]), Q.one()).unwrap();
        assert_eq!(e.coeff(0, &Label::Ext(vec![0, 2])), Q.from_i64(-1));
        e.add_term(0, Label::Ext(vec![1, 1]), Q.one()).unwrap();
        assert_eq!(e.num_terms(), 1);
    }

    #[test]
    fn identity_map_fixes_everything() {
        let s = spec("S2+E2+T2");
        let e = Element::from_terms(
            s,
            Q,
            3,
            [
                (0, Label::Sym(vec![0, 2]), Q.from_i64(3)),
                (1, Label::Ext(vec![1, 2]), Q.from_i64(-1)),
                (2, Label::Word(vec![2, 0]), Q.from_i64(5)),
            ],
        )
        .unwrap();
        assert_eq!(e.apply_map(&Matrix::identity(Q, 3)).unwrap(), e);
    }

    #[test]
    fn bad_labels_are_rejected() {
        let mut e = Element::zero(spec("S2"), Q, 2);
        assert!(e.add_term(0, Label::Sym(vec![0]), Q.one()).is_err());
        assert!(e.add_term(0, Label::Sym(vec![0, 2]), Q.one()).is_err());
        assert!(e.add_term(0, Label::Ext(vec![0, 1]), Q.one()).is_err());
        assert!(e.add_term(1, Label::Sym(vec![0, 1]), Q.one()).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let e = Element::zero(spec("S2"), Q, 3);
        assert!(e.apply_map(&Matrix::identity(Q, 2)).is_err());
    }
}
