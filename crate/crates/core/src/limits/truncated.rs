use crate::error::{Error, Result};
use crate::exact::Field;
use crate::schur::{Element, FunctorSpec};

/// A truncation `(p_{n_0}, …, p_{n_t})` of an element of `P_∞`. `shift` records an
/// index offset for elements of `P_{∞−m}`; it does not change any computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedElement {
    spec: FunctorSpec,
    field: Field,
    levels: Vec<usize>,
    layers: Vec<Element>,
    pub shift: usize,
}

impl TruncatedElement {
    pub fn new(spec: FunctorSpec, field: Field, levels: Vec<usize>, layers: Vec<Element>) -> Result<Self> {
        if levels.len() != layers.len() {
            return Err(Error::ShapeMismatch(format!("{} levels for {} layers", levels.len(), layers.len())));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("levels {levels:?} are not strictly increasing")));
        }
        for (n, e) in levels.iter().zip(&layers) {
            if e.n() != *n || e.spec() != &spec || e.field() != field {
                return Err(Error::Invalid(format!("layer at level {n} does not match {spec} over {field}")));
            }
        }
        Ok(TruncatedElement {
            spec,
            field,
            levels,
            layers,
            shift: 0,
        })
    }

    /// Projects one element to each of the given levels (all `<= top.n()`).
    pub fn from_top(top: &Element, levels: &[usize]) -> Result<Self> {
        if let Some(&bad) = levels.iter().find(|&&l| l > top.n()) {
            return Err(Error::InsufficientData(format!("level {bad} above {}", top.n())));
        }
        let layers = levels.iter().map(|&l| top.restrict(l)).collect();
        TruncatedElement::new(top.spec().clone(), top.field(), levels.to_vec(), layers)
    }

    pub fn spec(&self) -> &FunctorSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn layers(&self) -> &[Element] {
        &self.layers
    }

    pub fn top_level(&self) -> usize {
        self.levels.last().copied().unwrap_or(0)
    }

    pub fn top(&self) -> Option<&Element> {
        self.layers.last()
    }

    pub fn layer(&self, level: usize) -> Option<&Element> {
        self.levels.iter().position(|&l| l == level).map(|i| &self.layers[i])
    }

    /// `p_n`, projected from the lowest stored layer at or above `n`.
    pub fn project(&self, n: usize) -> Result<Element> {
        let i = self
            .levels
            .iter()
            .position(|&l| l >= n)
            .ok_or_else(|| Error::InsufficientData(format!("no layer at or above level {n}")))?;
        Ok(self.layers[i].restrict(n))
    }

    /// True iff every layer projects onto the one below it.
    pub fn coherence_check(&self) -> bool {
        self.levels
            .windows(2)
            .zip(self.layers.windows(2))
            .all(|(l, e)| e[1].restrict(l[0]) == e[0])
    }
}
