//! Canonical JSON for the interchange formats: object keys sorted, no floats,
//! scalars as `"a/b"` or `"r mod p"`, all variable and component indices 1-based.
//!
//! Labels: `S^d` monomials are exponent maps `{"1":2,"3":1}`, `Λ^d` labels are
//! increasing lists, tensor labels are words, and Schur labels are 1-based
//! indices into the basis from [`schur_basis`].

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::dense::SpecializationWitness;
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::limits::{EElement, Repr, Row, Tail, TruncatedElement};
use crate::schur::{schur_basis, Element, FunctorSpec, Kind, Label, TensorVec};
use crate::strength::{Combine, Radical, StrengthCertificate, Term};

/// Conversion to and from the canonical JSON value.
pub trait Json: Sized {
    fn to_json(&self) -> Result<Value>;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Pretty-printed canonical text with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

fn field_of(v: &Value) -> Result<Field> {
    v.get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("a \"field\" string", v))?
        .parse()
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing key \"{key}\" in {v}")))
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad("a nonnegative integer", v))
}

fn array<'a>(v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad("an array", v))
}

fn one_based(v: &Value) -> Result<usize> {
    match usize_of(v)? {
        0 => Err(Error::Parse("indices are 1-based".into())),
        i => Ok(i - 1),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Accepts `"a/b"`, `"a"`, `"r mod p"` or a JSON integer, read in `field`.
pub fn scalar_from_json(v: &Value, field: Field) -> Result<Scalar> {
    let s: Scalar = match v {
        Value::String(s) => s.parse()?,
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| bad("an integer or a string scalar", v))?;
            Field::Rationals.from_i64(i)
        }
        _ => return Err(bad("a scalar", v)),
    };
    match (&s, field) {
        (Scalar::Rational(r), f) => f.from_rational(r),
        (Scalar::Residue { prime, .. }, Field::Prime(p)) if *prime == p => Ok(s),
        _ => Err(Error::MixedFields(field, s.field())),
    }
}

pub fn scalars_from_json(v: &Value, field: Field) -> Result<Vec<Scalar>> {
    array(v)?.iter().map(|x| scalar_from_json(x, field)).collect()
}

fn scalars_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

fn rows_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars_to_json(r)).collect())
}

fn rows_from_json(v: &Value, field: Field) -> Result<Matrix> {
    let rows = array(v)?
        .iter()
        .map(|r| scalars_from_json(r, field))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

impl Json for Matrix {
    fn to_json(&self) -> Result<Value> {
        Ok(json!({"field": self.field().to_string(), "rows": rows_to_json(self)}))
    }

    fn from_json(v: &Value) -> Result<Self> {
        rows_from_json(get(v, "rows")?, field_of(v)?)
    }
}

/// A matrix given either as `{"field", "rows"}` or as a bare array of rows in `field`.
pub fn matrix_from_json(v: &Value, field: Field) -> Result<Matrix> {
    if v.is_array() {
        rows_from_json(v, field)
    } else {
        Matrix::from_json(v)
    }
}

fn label_to_json(label: &Label) -> Value {
    match label {
        Label::Sym(idx) => {
            let mut exps: BTreeMap<usize, u64> = BTreeMap::new();
            for &i in idx {
                *exps.entry(i + 1).or_default() += 1;
            }
            Value::Object(exps.into_iter().map(|(i, e)| (i.to_string(), json!(e))).collect())
        }
        Label::Ext(idx) | Label::Word(idx) => Value::Array(idx.iter().map(|i| json!(i + 1)).collect()),
    }
}

fn label_from_json(v: &Value, kind: &Kind) -> Result<Label> {
    match kind {
        Kind::Sym(_) => {
            let obj = v.as_object().ok_or_else(|| bad("an exponent map", v))?;
            let mut idx = Vec::new();
            for (k, e) in obj {
                let i: usize = k.parse().map_err(|_| bad("a 1-based variable key", v))?;
                if i == 0 {
                    return Err(Error::Parse("indices are 1-based".into()));
                }
                idx.extend(std::iter::repeat(i - 1).take(usize_of(e)?));
            }
            idx.sort_unstable();
            Ok(Label::Sym(idx))
        }
        Kind::Ext(_) => Ok(Label::Ext(array(v)?.iter().map(one_based).collect::<Result<_>>()?)),
        Kind::Tensor(_) | Kind::Schur(_) => Ok(Label::Word(array(v)?.iter().map(one_based).collect::<Result<_>>()?)),
    }
}

impl Json for Element {
    fn to_json(&self) -> Result<Value> {
        let kinds = self.spec().components();
        let mut terms = Vec::new();
        let mut schur_parts: BTreeMap<usize, TensorVec> = BTreeMap::new();
        for ((c, label), v) in self.terms() {
            if let Kind::Schur(_) = kinds[*c] {
                schur_parts.entry(*c).or_default().insert(label.indices().to_vec(), v.clone());
                continue;
            }
            terms.push(json!({"summand": c + 1, "label": label_to_json(label), "coeff": scalar_to_json(v)}));
        }
        for (c, tv) in schur_parts {
            let Kind::Schur(l) = &kinds[c] else { unreachable!() };
            let basis = schur_basis(l, self.n());
            let coords = basis
                .coordinates(&tv)?
                .ok_or_else(|| Error::Invalid(format!("component {} is not in S_{l}", c + 1)))?;
            for (k, x) in coords.iter().enumerate() {
                if !x.is_zero() {
                    terms.push(json!({"summand": c + 1, "label": k + 1, "coeff": scalar_to_json(x)}));
                }
            }
        }
        Ok(json!({
            "field": self.field().to_string(),
            "spec": self.spec().to_string(),
            "n": self.n(),
            "terms": terms,
        }))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let field = field_of(v)?;
        let spec: FunctorSpec = get(v, "spec")?.as_str().ok_or_else(|| bad("a spec string", v))?.parse()?;
        let n = usize_of(get(v, "n")?)?;
        let kinds = spec.components();
        let mut e = Element::zero(spec, field, n);
        let mut bases = BTreeMap::new();
        for t in array(get(v, "terms")?)? {
            let c = one_based(get(t, "summand")?)?;
            let kind = kinds
                .get(c)
                .ok_or_else(|| Error::IndexOutOfRange(format!("summand {}", c + 1)))?;
            let coeff = scalar_from_json(get(t, "coeff")?, field)?;
            if let Kind::Schur(l) = kind {
                if field != Field::Rationals {
                    return Err(Error::Unsupported("Schur components need characteristic 0".into()));
                }
                let k = one_based(get(t, "label")?)?;
                let basis = bases.entry(c).or_insert_with(|| schur_basis(l, n));
                for (w, x) in basis.combine(&[(k, coeff)])? {
                    e.add_term(c, Label::Word(w), x)?;
                }
            } else {
                e.add_term(c, label_from_json(get(t, "label")?, kind)?, coeff)?;
            }
        }
        Ok(e)
    }
}

impl Json for TruncatedElement {
    fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "field": self.field().to_string(),
            "spec": self.spec().to_string(),
            "levels": self.levels(),
            "layers": self.layers().iter().map(Json::to_json).collect::<Result<Vec<_>>>()?,
            "shift": self.shift,
        }))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let field = field_of(v)?;
        let spec: FunctorSpec = get(v, "spec")?.as_str().ok_or_else(|| bad("a spec string", v))?.parse()?;
        let levels = array(get(v, "levels")?)?.iter().map(usize_of).collect::<Result<Vec<_>>>()?;
        let layers = array(get(v, "layers")?)?
            .iter()
            .map(Element::from_json)
            .collect::<Result<Vec<_>>>()?;
        let mut t = TruncatedElement::new(spec, field, levels, layers)?;
        if let Some(s) = v.get("shift") {
            t.shift = usize_of(s)?;
        }
        Ok(t)
    }
}

fn row_to_json(row: &Row) -> Value {
    Value::Object(
        row.iter()
            .map(|(c, x)| ((c + 1).to_string(), scalar_to_json(x)))
            .collect::<Map<_, _>>(),
    )
}

impl Json for EElement {
    fn to_json(&self) -> Result<Value> {
        let mut out = Map::new();
        out.insert("field".into(), json!(self.field().to_string()));
        out.insert("tail".into(), json!(self.tail().to_string()));
        match self.repr() {
            Repr::Rows { rows, tail_col } => {
                out.insert("rows".into(), Value::Array(rows.iter().map(row_to_json).collect()));
                if self.tail() == Tail::Identity {
                    out.insert("tail_col".into(), json!(tail_col + 1));
                }
            }
            Repr::Blocks(bs) => {
                out.insert("blocks".into(), Value::Array(bs.iter().map(rows_to_json).collect()));
            }
        }
        Ok(Value::Object(out))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let field = field_of(v)?;
        let tail: Tail = get(v, "tail")?.as_str().ok_or_else(|| bad("a tail string", v))?.parse()?;
        if let Some(blocks) = v.get("blocks") {
            let bs = array(blocks)?
                .iter()
                .map(|b| rows_from_json(b, field))
                .collect::<Result<Vec<_>>>()?;
            return EElement::from_blocks(field, bs, tail);
        }
        let rows = array(get(v, "rows")?)?
            .iter()
            .map(|r| {
                let obj = r.as_object().ok_or_else(|| bad("a row object", r))?;
                obj.iter()
                    .map(|(k, x)| {
                        let c: usize = k.parse().map_err(|_| bad("a 1-based column key", r))?;
                        if c == 0 {
                            return Err(Error::Parse("indices are 1-based".into()));
                        }
                        Ok((c - 1, scalar_from_json(x, field)?))
                    })
                    .filter(|x| !matches!(x, Ok((_, s)) if s.is_zero()))
                    .collect::<Result<Row>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match v.get("tail_col") {
            Some(c) => EElement::from_rows_with_tail(field, rows, tail, one_based(c)?),
            None => EElement::from_rows(field, rows, tail),
        }
    }
}

impl Json for SpecializationWitness {
    fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "source": self.source.to_json()?,
            "target": self.target.to_json()?,
            "e": self.e.to_json()?,
            "verified_levels": self.verified_levels,
        }))
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(SpecializationWitness {
            source: TruncatedElement::from_json(get(v, "source")?)?,
            target: TruncatedElement::from_json(get(v, "target")?)?,
            e: EElement::from_json(get(v, "e")?)?,
            verified_levels: array(get(v, "verified_levels")?)?
                .iter()
                .map(usize_of)
                .collect::<Result<_>>()?,
        })
    }
}

impl Json for StrengthCertificate {
    fn to_json(&self) -> Result<Value> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let combine = match &t.combine {
                    Combine::Product => json!("product"),
                    Combine::Wedge => json!("wedge"),
                    Combine::Bilinear { a, b } => json!({"bilinear": [scalar_to_json(a), scalar_to_json(b)]}),
                };
                let mut m = Map::new();
                m.insert("combine".into(), combine);
                m.insert("g".into(), scalars_to_json(&t.g));
                m.insert("h".into(), scalars_to_json(&t.h));
                if let Some(r) = &t.radical {
                    m.insert(
                        "radical".into(),
                        json!({"radicand": scalar_to_json(&r.radicand), "g": scalars_to_json(&r.g), "h": scalars_to_json(&r.h)}),
                    );
                }
                Value::Object(m)
            })
            .collect();
        Ok(json!({"target": self.target.to_json()?, "terms": Value::Array(terms)}))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let target = Element::from_json(get(v, "target")?)?;
        let field = target.field();
        let terms = array(get(v, "terms")?)?
            .iter()
            .map(|t| {
                let c = get(t, "combine")?;
                let combine = match c.as_str() {
                    Some("product") => Combine::Product,
                    Some("wedge") => Combine::Wedge,
                    _ => {
                        let ab = array(get(c, "bilinear")?)?;
                        if ab.len() != 2 {
                            return Err(bad("two bilinear coefficients", c));
                        }
                        Combine::Bilinear {
                            a: scalar_from_json(&ab[0], field)?,
                            b: scalar_from_json(&ab[1], field)?,
                        }
                    }
                };
                let radical = match t.get("radical") {
                    None | Some(Value::Null) => None,
                    Some(r) => Some(Radical {
                        radicand: scalar_from_json(get(r, "radicand")?, field)?,
                        g: scalars_from_json(get(r, "g")?, field)?,
                        h: scalars_from_json(get(r, "h")?, field)?,
                    }),
                };
                Ok(Term {
                    combine,
                    g: scalars_from_json(get(t, "g")?, field)?,
                    h: scalars_from_json(get(t, "h")?, field)?,
                    radical,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StrengthCertificate { target, terms })
    }
}

/// Reads `{"a": {"i,j": coeff, …}}` as `Σ a_ij x_i x_j` (`S2`) or
/// `Σ a_ij x_i ∧ x_j` (`E2`) on `level` variables (default: the largest index).
pub fn stream_from_json(v: &Value, kind: &Kind, field: Field, level: Option<usize>) -> Result<Element> {
    let obj = get(v, "a")?.as_object().ok_or_else(|| bad("an object of coefficients", v))?;
    let mut entries = Vec::new();
    for (k, x) in obj {
        let (i, j) = k.split_once(',').ok_or_else(|| Error::Parse(format!("bad index pair `{k}`")))?;
        let parse = |s: &str| -> Result<usize> {
            match s.trim().parse::<usize>() {
                Ok(0) | Err(_) => Err(Error::Parse(format!("bad index pair `{k}` (1-based)"))),
                Ok(i) => Ok(i - 1),
            }
        };
        let (i, j) = (parse(i)?, parse(j)?);
        entries.push((i, j, scalar_from_json(x, field)?));
    }
    let max = entries.iter().map(|(i, j, _)| i.max(j) + 1).max().unwrap_or(0);
    let n = level.unwrap_or(max);
    if max > n {
        return Err(Error::IndexOutOfRange(format!("index {max} above level {n}")));
    }
    let mut e = Element::zero(FunctorSpec::single(kind.clone()), field, n);
    for (i, j, c) in entries {
        let label = match kind {
            Kind::Sym(2) => Label::Sym(vec![i.min(j), i.max(j)]),
            Kind::Ext(2) => Label::Ext(vec![i, j]),
            _ => return Err(Error::Unsupported(format!("coefficient streams for {kind}"))),
        };
        e.add_term(0, label, c)?;
    }
    Ok(e)
}

/// Inverse of [`stream_from_json`] for one `S2` or `E2` component.
pub fn stream_to_json(e: &Element, component: usize) -> Value {
    let a: Map<String, Value> = e
        .terms()
        .iter()
        .filter(|((c, _), _)| *c == component)
        .map(|((_, l), x)| {
            let idx = l.indices();
            (format!("{},{}", idx[0] + 1, idx[1] + 1), scalar_to_json(x))
        })
        .collect();
    json!({"a": a})
}
