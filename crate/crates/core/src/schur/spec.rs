use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::schur::Partition;

/// One irreducible-or-tensor building block of a functor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `S^d`
    Sym(usize),
    /// `Λ^d`
    Ext(usize),
    /// `V ↦ V^{⊗d}`
    Tensor(usize),
    /// `S_λ`, realized inside `V^{⊗|λ|}` as a Young symmetrizer image.
    Schur(Partition),
}

impl Kind {
    pub fn degree(&self) -> usize {
        match self {
            Kind::Sym(d) | Kind::Ext(d) | Kind::Tensor(d) => *d,
            Kind::Schur(l) => l.size(),
        }
    }

    /// Decomposition into Schur functors with multiplicities.
    pub fn irreducibles(&self) -> Vec<(Partition, usize)> {
        match self {
            Kind::Sym(d) => vec![(Partition::row(*d), 1)],
            Kind::Ext(d) => vec![(Partition::column(*d), 1)],
            Kind::Schur(l) => vec![(l.clone(), 1)],
            Kind::Tensor(d) => Partition::all(*d)
                .into_iter()
                .map(|l| {
                    let f = l.standard_tableaux() as usize;
                    (l, f)
                })
                .collect(),
        }
    }

    /// `dim P(K^n)`.
    pub fn dim(&self, n: usize) -> usize {
        match self {
            Kind::Sym(d) => binomial(n + d - 1, *d),
            Kind::Ext(d) => binomial(n, *d),
            Kind::Tensor(d) => n.pow(*d as u32),
            Kind::Schur(l) => l.semistandard_count(n) as usize,
        }
    }

    /// True when the component is stored through its `T^d` coordinates.
    pub fn uses_words(&self) -> bool {
        matches!(self, Kind::Tensor(_) | Kind::Schur(_))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Sym(d) => write!(f, "S{d}"),
            Kind::Ext(d) => write!(f, "E{d}"),
            Kind::Tensor(d) => write!(f, "T{d}"),
            Kind::Schur(l) => {
                let parts: Vec<String> = l.parts().iter().map(usize::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub kind: Kind,
    pub multiplicity: usize,
}

/// A pure polynomial functor given as a direct sum of building blocks.
///
/// Textual form: summands joined by `+`, each `S<d>`, `E<d>`, `T<d>` or `[λ]`,
/// optionally followed by `^<multiplicity>`; e.g. `S1^2+S2+[2,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorSpec {
    summands: Vec<Summand>,
}

impl FunctorSpec {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if s.kind.degree() == 0 {
                return Err(Error::Invalid(format!("summand {} has degree 0", s.kind)));
            }
            if s.multiplicity == 0 {
                return Err(Error::Invalid(format!("summand {} has multiplicity 0", s.kind)));
            }
        }
        Ok(FunctorSpec { summands })
    }

    pub fn single(kind: Kind) -> Self {
        FunctorSpec::new(vec![Summand {
            kind,
            multiplicity: 1,
        }])
        .expect("positive degree")
    }

    /// `P = 0`.
    pub fn zero() -> Self {
        FunctorSpec { summands: vec![] }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Summands expanded by multiplicity; element coordinates are indexed by position here.
    pub fn components(&self) -> Vec<Kind> {
        self.summands
            .iter()
            .flat_map(|s| std::iter::repeat(s.kind.clone()).take(s.multiplicity))
            .collect()
    }

    pub fn component(&self, idx: usize) -> Option<Kind> {
        let mut i = idx;
        for s in &self.summands {
            if i < s.multiplicity {
                return Some(s.kind.clone());
            }
            i -= s.multiplicity;
        }
        None
    }

    pub fn num_components(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn degree(&self) -> usize {
        self.summands.iter().map(|s| s.kind.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.summands.iter().all(|s| s.kind.degree() == d)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.summands.iter().map(|s| s.multiplicity * s.kind.dim(n)).sum()
    }

    /// Multiset of irreducible summands, grouped by degree.
    pub fn irreducible_profile(&self) -> BTreeMap<usize, BTreeMap<Partition, usize>> {
        let mut out: BTreeMap<usize, BTreeMap<Partition, usize>> = BTreeMap::new();
        for s in &self.summands {
            for (l, m) in s.kind.irreducibles() {
                *out.entry(l.size()).or_default().entry(l).or_default() += m * s.multiplicity;
            }
        }
        out
    }

    /// Degrees of the irreducible summands, with multiplicity.
    pub fn irreducible_degrees(&self) -> Vec<usize> {
        self.irreducible_profile()
            .into_iter()
            .flat_map(|(d, parts)| {
                let count: usize = parts.values().sum();
                std::iter::repeat(d).take(count)
            })
            .collect()
    }

    /// Merges equal kinds, keeping first-appearance order.
    pub(crate) fn from_kinds(kinds: impl IntoIterator<Item = (Kind, usize)>) -> Self {
        let mut summands: Vec<Summand> = Vec::new();
        for (kind, m) in kinds {
            if m == 0 || kind.degree() == 0 {
                continue;
            }
            match summands.iter_mut().find(|s| s.kind == kind) {
                Some(s) => s.multiplicity += m,
                None => summands.push(Summand {
                    kind,
                    multiplicity: m,
                }),
            }
        }
        FunctorSpec { summands }
    }
}

impl fmt::Display for FunctorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                if s.multiplicity == 1 {
                    s.kind.to_string()
                } else {
                    format!("{}^{}", s.kind, s.multiplicity)
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for FunctorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(FunctorSpec::zero());
        }
        let bad = |t: &str| Error::Parse(format!("bad functor summand `{t}` in `{s}`"));
        let mut summands = Vec::new();
        for term in split_terms(s) {
            let term = term.trim();
            let (body, mult) = match term.rsplit_once('^') {
                Some((b, m)) => {
                    (b.trim(), m.trim().parse::<usize>().map_err(|_| bad(term))?)
                }
                _ => (term, 1),
            };
            let kind = if body.starts_with('[') || body.starts_with('(') {
                Kind::Schur(body.parse()?)
            } else {
                let (tag, d) = body.split_at(1);
                let d: usize = d.trim().parse().map_err(|_| bad(term))?;
                match tag.to_ascii_uppercase().as_str() {
                    "S" => Kind::Sym(d),
                    "E" => Kind::Ext(d),
                    "T" => Kind::Tensor(d),
                    _ => return Err(bad(term)),
                }
            };
            summands.push(Summand {
                kind,
                multiplicity: mult,
            });
        }
        FunctorSpec::new(summands)
    }
}

/// Splits on `+` outside brackets.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
