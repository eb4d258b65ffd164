use std::path::{Path, PathBuf};

use polyfunctor::dense::{
    linear_prefix, maximal_r, maximal_specializer, minimal_q, minimal_specializer_search, omega_check,
    orbit_image_full_check, prefix_minimal_q, OrbitMode, OrbitOutcome, PairingInjection, SpecializationWitness,
    SymVector,
};
use polyfunctor::json::{
    matrix_from_json, parse_str, scalar_from_json, scalar_to_json, stream_from_json, to_canonical_string, Json,
};
use polyfunctor::limits::{e_apply, e_apply_with_width, EElement, TruncatedElement};
use polyfunctor::quasiorder2::{canonical_q, classify_deg2, deg2_layout, deg2_specializer, PairClass};
use polyfunctor::schur::{derivative_constant, derivative_spec, lessdot, lr_coefficient, shift_component_dim};
use polyfunctor::strength::{oracle_strength, strength_deg2, strength_unipotent, Mode, Variant};
use polyfunctor::{Element, Error, Field, FunctorSpec, Kind, Partition, Result};
use serde_json::{json, Value};

use crate::{Command, Done, JobConfig};

pub(crate) fn dispatch(job: &JobConfig) -> Result<Done> {
    match &job.command {
        Command::Strength {
            mode,
            matrix,
            unipotent,
            form,
            variant,
            max_k,
            certificate_out,
        } => {
            if let Some(path) = matrix {
                strength_matrix(job, mode, path, certificate_out.as_deref())
            } else if let Some(x) = unipotent {
                strength_x(job, x, certificate_out.as_deref())
            } else if let Some(path) = form {
                strength_form(job, path, variant, *max_k)
            } else {
                Err(Error::Invalid("strength needs --matrix, --unipotent or --form".into()))
            }
        }
        Command::Lr { lambda, mu, nu } => {
            let (l, m, n): (Partition, Partition, Partition) = (lambda.parse()?, mu.parse()?, nu.parse()?);
            Ok(Done {
                operation: "lr_coefficient",
                inputs: json!({"lambda": l.to_string(), "mu": m.to_string(), "nu": n.to_string()}),
                result: json!({"value": lr_coefficient(&l, &m, &n)}),
                witness_path: None,
            })
        }
        Command::Derive { spec } => {
            let s: FunctorSpec = spec.parse()?;
            Ok(Done {
                operation: "derivative_spec",
                inputs: json!({"spec": s.to_string()}),
                result: json!({"derivative": derivative_spec(&s).to_string(), "constant": derivative_constant(&s)}),
                witness_path: None,
            })
        }
        Command::Shift { spec, n, k } => {
            let s: FunctorSpec = spec.parse()?;
            let dims = (0..=s.degree())
                .map(|j| shift_component_dim(&s, *n, *k, j))
                .collect::<Result<Vec<_>>>()?;
            Ok(Done {
                operation: "shift_component_dim",
                inputs: json!({"spec": s.to_string(), "n": n, "k": k}),
                result: json!({"dims": dims, "total": s.dim(n + k)}),
                witness_path: None,
            })
        }
        Command::Lessdot { q, p } => {
            let (qs, ps): (FunctorSpec, FunctorSpec) = (q.parse()?, p.parse()?);
            Ok(Done {
                operation: "lessdot",
                inputs: json!({"q": qs.to_string(), "p": ps.to_string()}),
                result: json!({"value": lessdot(&qs, &ps)}),
                witness_path: None,
            })
        }
        Command::MinimalQ {
            spec,
            blocks,
            verify,
            power,
        } => {
            let s: FunctorSpec = spec.parse()?;
            let field = job.field()?;
            let sym = if *power { SymVector::Power } else { SymVector::Squarefree };
            let q = minimal_for(&s, field, *blocks, sym)?;
            let mut result = json!({
                "q": q.to_json()?,
                "levels": q.levels(),
                "top": q.top().map(|t| t.to_string()),
            });
            if *verify {
                result["coherent"] = json!(q.coherence_check());
            }
            Ok(Done {
                operation: "minimal_q",
                inputs: json!({"spec": s.to_string(), "blocks": blocks, "verify": verify, "power": power}),
                result,
                witness_path: None,
            })
        }
        Command::MaximalR { d, depth } => {
            let field = job.field()?;
            let r = maximal_r(field, *d, *depth, &PairingInjection::canonical())?;
            Ok(Done {
                operation: "maximal_r",
                inputs: json!({"d": d, "depth": depth}),
                result: json!({
                    "r": r.to_json()?,
                    "levels": r.levels(),
                    "terms": r.top().map_or(0, Element::num_terms),
                    "coherent": r.coherence_check(),
                }),
                witness_path: None,
            })
        }
        Command::Specialize {
            element,
            blocks,
            maximal,
            witness_out,
        } => specialize(job, element, *blocks, *maximal, witness_out.as_deref()),
        Command::Specialize2 {
            stream,
            kind,
            element,
            rows,
            witness_out,
        } => specialize2(job, stream.as_deref(), kind, element.as_deref(), *rows, witness_out.as_deref()),
        Command::EApply { e, p, level, width } => {
            let ev = EElement::from_json(&read_json(e)?)?;
            let pv = TruncatedElement::from_json(&read_json(p)?)?;
            job.agree(pv.field())?;
            if ev.field() != pv.field() {
                return Err(Error::MixedFields(ev.field(), pv.field()));
            }
            let out = match width {
                Some(w) => e_apply_with_width(&ev, &pv, *level, *w)?,
                None => e_apply(&ev, &pv, *level)?,
            };
            Ok(Done {
                operation: "e_apply",
                inputs: json!({"e": path_str(e), "p": path_str(p), "level": level, "width": width}),
                result: json!({"element": out.to_json()?, "display": out.to_string()}),
                witness_path: None,
            })
        }
        Command::OrbitCheck {
            q,
            spec,
            blocks,
            m,
            samples,
        } => {
            let qv = match (q, spec) {
                (Some(path), _) => {
                    let t = TruncatedElement::from_json(&read_json(path)?)?;
                    job.agree(t.field())?;
                    t
                }
                (None, Some(s)) => minimal_for(&s.parse()?, job.field()?, *blocks, SymVector::Squarefree)?,
                (None, None) => return Err(Error::Invalid("orbit-check needs --q or --spec".into())),
            };
            let mode = match samples {
                Some(n) => OrbitMode::Span {
                    samples: *n,
                    seed: job.seed,
                },
                None => OrbitMode::Exhaustive,
            };
            let outcome = orbit_image_full_check(&qv, *m, mode, job.budget)?;
            let word = match outcome {
                OrbitOutcome::Full => "full",
                OrbitOutcome::NotFull => "not_full",
                OrbitOutcome::Inconclusive => "inconclusive",
            };
            Ok(Done {
                operation: "orbit_image_full_check",
                inputs: json!({
                    "q": q.as_deref().map(path_str),
                    "spec": qv.spec().to_string(),
                    "level": qv.top_level(),
                    "m": m,
                    "samples": samples,
                }),
                result: json!({"outcome": word, "mode": if samples.is_some() { "span" } else { "exhaustive" }}),
                witness_path: None,
            })
        }
        Command::OmegaCheck { kind, n } => {
            let k = single_kind(kind)?;
            let r = omega_check(&k, *n)?;
            Ok(Done {
                operation: "omega_check",
                inputs: json!({"kind": k.to_string(), "n": n}),
                result: json!({"rank": r.rank, "dim": r.dim, "full": r.full}),
                witness_path: None,
            })
        }
        Command::Classify2 {
            stream,
            kind,
            element,
            level,
        } => {
            let (e, source) = deg2_input(job, stream.as_deref(), kind, element.as_deref(), *level)?;
            let c = classify_deg2(&e)?;
            let pair = c.pair.as_ref().map(|p| match p {
                PairClass::Top => json!("top"),
                PairClass::Zero => json!("zero"),
                PairClass::ProjectivePoint { lambda, mu } => {
                    json!({"point": [scalar_to_json(lambda), scalar_to_json(mu)]})
                }
            });
            Ok(Done {
                operation: "classify_deg2",
                inputs: source,
                result: json!({
                    "profile": [c.profile.0, c.profile.1, c.profile.2],
                    "level": c.level,
                    "linear_rank": c.linear_rank,
                    "pair": pair,
                    "sym_ranks": c.sym_ranks,
                    "alt_ranks": c.alt_ranks,
                    "summary": c.to_string(),
                    "caveat": "ranks of a truncation are lower bounds for the limit; \
                               a failed comparison at a finite level proves nothing about the limit",
                }),
                witness_path: None,
            })
        }
        Command::VerifyWitness { witness } => {
            let w = SpecializationWitness::from_json(&read_json(witness)?)?;
            job.agree(w.target.field())?;
            if !w.verify()? {
                return Err(Error::Invalid(format!("{} does not verify", witness.display())));
            }
            Ok(Done {
                operation: "verify_witness",
                inputs: json!({"witness": path_str(witness)}),
                result: json!({"verified": true, "levels": w.verified_levels}),
                witness_path: None,
            })
        }
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_canonical_string(v))
        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

/// The minimal element, with the `(S1)^k` prefix split off when present.
fn minimal_for(spec: &FunctorSpec, field: Field, blocks: usize, sym: SymVector) -> Result<TruncatedElement> {
    if linear_prefix(spec).is_some() {
        prefix_minimal_q(spec, field, blocks)
    } else {
        minimal_q(spec, field, blocks, sym)
    }
}

fn single_kind(s: &str) -> Result<Kind> {
    let spec: FunctorSpec = s.parse()?;
    match spec.components().as_slice() {
        [k] => Ok(k.clone()),
        _ => Err(Error::Invalid(format!("expected a single summand, got {spec}"))),
    }
}

fn stream_kind(s: &str) -> Result<Kind> {
    match s {
        "quadric" | "sym" | "S2" => Ok(Kind::Sym(2)),
        "alternating" | "alt" | "E2" => Ok(Kind::Ext(2)),
        _ => Err(Error::Parse(format!("unknown stream kind `{s}` (quadric or alternating)"))),
    }
}

fn strength_matrix(job: &JobConfig, mode: &str, path: &Path, cert_out: Option<&Path>) -> Result<Done> {
    let v = read_json(path)?;
    let field = match v.get("field").and_then(Value::as_str) {
        Some(f) => job.agree(f.parse()?)?,
        None => job.field()?,
    };
    let a = matrix_from_json(&v, field)?;
    let m: Mode = mode.parse()?;
    let s = strength_deg2(&a, m)?;
    let cert = s.certificate.to_json()?;
    if let Some(out) = cert_out {
        write_json(out, &cert)?;
    }
    Ok(Done {
        operation: "strength_deg2",
        inputs: json!({"mode": mode, "matrix": path_str(path), "n": a.rows()}),
        result: json!({
            "value": s.exact(),
            "lower": s.lower,
            "upper": s.upper,
            "rank": a.rank(),
            "certificate": cert,
            "certificate_verified": s.certificate.verify()?,
        }),
        witness_path: cert_out.map(Path::to_path_buf),
    })
}

fn strength_x(job: &JobConfig, x: &str, cert_out: Option<&Path>) -> Result<Done> {
    let field = job.field()?;
    let xv = scalar_from_json(&Value::String(x.to_string()), field)?;
    let u = strength_unipotent(&xv)?;
    let opt = |s: &Option<polyfunctor::Scalar>| s.as_ref().map(scalar_to_json);
    let cert = u.certificate.as_ref().map(Json::to_json).transpose()?;
    if let (Some(out), Some(c)) = (cert_out, &cert) {
        write_json(out, c)?;
    }
    let verified = u.certificate.as_ref().map(|c| c.verify()).transpose()?;
    Ok(Done {
        operation: "strength_unipotent",
        inputs: json!({"x": scalar_to_json(&xv)}),
        result: json!({
            "value": u.strength,
            "mu": opt(&u.mu),
            "a": opt(&u.a),
            "b": opt(&u.b),
            "quadratic": u.quadratic.iter().map(scalar_to_json).collect::<Vec<_>>(),
            "certificate": cert,
            "certificate_verified": verified,
        }),
        witness_path: cert_out.filter(|_| cert.is_some()).map(Path::to_path_buf),
    })
}

fn strength_form(job: &JobConfig, path: &Path, variant: &str, max_k: usize) -> Result<Done> {
    let f = Element::from_json(&read_json(path)?)?;
    job.agree(f.field())?;
    let var: Variant = variant.parse()?;
    let s = oracle_strength(&f, var, max_k, job.budget)?;
    Ok(Done {
        operation: "oracle_strength",
        inputs: json!({"form": path_str(path), "variant": variant, "max_k": max_k}),
        // null: strength above max_k
        result: json!({"value": s, "display": f.to_string()}),
        witness_path: None,
    })
}

fn specialize(
    job: &JobConfig,
    element: &Path,
    blocks: usize,
    maximal: Option<usize>,
    out: Option<&Path>,
) -> Result<Done> {
    let t = TruncatedElement::from_json(&read_json(element)?)?;
    job.agree(t.field())?;
    let (method, w) = match maximal {
        Some(depth) => {
            let d = match t.spec().components().as_slice() {
                [Kind::Tensor(d)] => *d,
                _ => return Err(Error::Unsupported(format!("maximal source for {}", t.spec()))),
            };
            let r = maximal_r(t.field(), d, depth, &PairingInjection::canonical())?;
            ("maximal_specializer", maximal_specializer(&t, &r, job.budget)?)
        }
        None => ("minimal_specializer_search", minimal_specializer_search(&t, blocks, job.budget)?),
    };
    let wj = w.to_json()?;
    if let Some(path) = out {
        write_json(path, &wj)?;
    }
    Ok(Done {
        operation: method,
        inputs: json!({"element": path_str(element), "blocks": blocks, "maximal_depth": maximal}),
        result: json!({
            "verified": w.verify()?,
            "verified_levels": w.verified_levels,
            "witness": wj,
        }),
        witness_path: out.map(Path::to_path_buf),
    })
}

/// A degree-≤2 element from a stream or an element file, with its input echo.
fn deg2_input(
    job: &JobConfig,
    stream: Option<&Path>,
    kind: &str,
    element: Option<&Path>,
    level: Option<usize>,
) -> Result<(Element, Value)> {
    match (stream, element) {
        (Some(path), _) => {
            let k = stream_kind(kind)?;
            let e = stream_from_json(&read_json(path)?, &k, job.field()?, level)?;
            Ok((e, json!({"stream": path_str(path), "kind": kind, "level": level})))
        }
        (None, Some(path)) => {
            let e = Element::from_json(&read_json(path)?)?;
            job.agree(e.field())?;
            let e = match level {
                Some(l) if l < e.n() => e.restrict(l),
                Some(l) => e.embed(l)?,
                None => e,
            };
            Ok((e, json!({"element": path_str(path), "level": level})))
        }
        (None, None) => Err(Error::Invalid("needs --stream or --element".into())),
    }
}

fn specialize2(
    job: &JobConfig,
    stream: Option<&Path>,
    kind: &str,
    element: Option<&Path>,
    rows: usize,
    out: Option<&Path>,
) -> Result<Done> {
    let (p, mut inputs) = deg2_input(job, stream, kind, element, None)?;
    inputs["rows"] = json!(rows);
    let layout = deg2_layout(p.spec())?;
    let e = deg2_specializer(&p, rows)?;
    let q = canonical_q(p.spec(), p.field(), rows)?;
    let target = p.restrict(rows);
    let tt = TruncatedElement::from_top(&target, &[rows])?;
    let w = SpecializationWitness::checked(q, tt, e, vec![rows])?;
    let wj = w.to_json()?;
    let written: Option<PathBuf> = match out {
        Some(path) => {
            write_json(path, &wj)?;
            Some(path.to_path_buf())
        }
        None => None,
    };
    let q_level = layout.q_level(rows);
    let psi = w.e.psi(rows, q_level)?;
    Ok(Done {
        operation: "deg2_specializer",
        inputs,
        result: json!({
            "e": w.e.to_json()?,
            "psi": psi.to_json()?,
            "q_level": q_level,
            "bandwidth": w.e.bandwidth(rows)?,
            "verified": w.verify()?,
        }),
        witness_path: written,
    })
}
