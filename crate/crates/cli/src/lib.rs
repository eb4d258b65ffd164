//! Front end for the `polyfunctor` binary: argument parsing, job dispatch and
//! the JSON report.
//!
//! Every run produces one canonical JSON report
//! `{"command", "operation", "inputs", "result", "witness_path"?, "wall_ms"}`.
//! Two runs with the same arguments give byte-identical reports apart from
//! `wall_ms`.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use polyfunctor::{Error, Field};
use serde_json::{json, Value};

mod commands;

/// Exit status for malformed JSON input.
pub const STATUS_PARSE: u8 = 2;
/// Exit status when an enumeration budget runs out before an answer.
pub const STATUS_BUDGET: u8 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "polyfunctor", version, about = "Exact computations with polynomial functors")]
pub struct Cli {
    /// Ground field: `q` or `fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Enumeration budget for searches and oracles.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Size of the worker pool.
    #[arg(long, global = true, env = "POLYFUNCTOR_WORKERS")]
    pub workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every sampled input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Strength of a degree-2 tensor, of the unipotent 2x2 family, or of a form over F_p.
    Strength {
        /// `sym`, `alt` or `full`; used with `--matrix`.
        #[arg(long, default_value = "sym")]
        mode: String,
        /// File with a JSON matrix: bare rows or `{"field", "rows"}`.
        #[arg(long, conflicts_with_all = ["unipotent", "form"])]
        matrix: Option<PathBuf>,
        /// The entry `x` of `[[1, x], [0, 1]]`.
        #[arg(long, conflicts_with = "form", allow_hyphen_values = true)]
        unipotent: Option<String>,
        /// File with a JSON element in `(S^d)^e` over F_p, decided by exhaustive search.
        #[arg(long)]
        form: Option<PathBuf>,
        /// `single` or `tuple`; used with `--form`.
        #[arg(long, default_value = "single")]
        variant: String,
        /// Largest strength tried with `--form`.
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Littlewood-Richardson coefficient `c^λ_{μν}`, with `λ` the outer shape.
    Lr {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Derivative of a functor spec.
    Derive {
        #[arg(long)]
        spec: String,
    },
    /// Dimensions of the pieces of `P(K^{n+k})` by degree in the last `k` variables.
    Shift {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Whether `q ⋖ p`.
    Lessdot {
        #[arg(long)]
        q: String,
        #[arg(long)]
        p: String,
    },
    /// The block-diagonal element with a dense orbit.
    MinimalQ {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        blocks: usize,
        /// Run the coherence check on the truncation.
        #[arg(long)]
        verify: bool,
        /// Use `x_1^d` instead of `x_1⋯x_d` for symmetric powers.
        #[arg(long)]
        power: bool,
    },
    /// The maximal element of `T^d` truncated at the given depth.
    MaximalR {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Specialization witness for a JSON truncation `p`. By default searches
    /// for `e` with `P(e) p = q`, `q` the minimal element (over F_p only); with
    /// `--maximal` finds `e` with `P(e) r = p` instead.
    Specialize {
        #[arg(long)]
        element: PathBuf,
        /// Blocks of the minimal source for the search.
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        /// Use the maximal element of this depth as the source instead.
        #[arg(long)]
        maximal: Option<usize>,
        /// Write the witness to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Banded specializer for a degree-2 stream.
    Specialize2 {
        /// `{"a": {"i,j": coeff}}` coefficient stream.
        #[arg(long, conflicts_with = "element")]
        stream: Option<PathBuf>,
        /// `quadric` or `alternating`; used with `--stream`.
        #[arg(long, default_value = "quadric")]
        kind: String,
        /// File with a JSON element of `(S1)^a ⊕ (S2)^b ⊕ (E2)^c`.
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// `P(e) p` at an output level.
    EApply {
        /// File with a JSON element of E.
        #[arg(long)]
        e: PathBuf,
        /// File with a JSON truncation.
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        level: usize,
        /// Cut the source at this width instead of the smallest one that suffices.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Whether the orbit of a truncation covers `P(K^m)`.
    OrbitCheck {
        /// File with a JSON truncation; defaults to the minimal element of `--spec`.
        #[arg(long, conflicts_with = "spec")]
        q: Option<PathBuf>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        #[arg(long)]
        m: usize,
        /// Sample this many maps instead of enumerating all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Rank of `ω ↦ P([id | ω]) r` against `dim P(K^n)`.
    OmegaCheck {
        /// A single summand, e.g. `T3`, `S2` or `[2,1]`.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
    /// Class of a degree-≤2 tuple from a truncation.
    Classify2 {
        #[arg(long, conflicts_with = "element")]
        stream: Option<PathBuf>,
        #[arg(long, default_value = "quadric")]
        kind: String,
        #[arg(long)]
        element: Option<PathBuf>,
        /// Number of variables the stream is read on.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Re-check a stored specialization witness.
    VerifyWitness {
        #[arg(long)]
        witness: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Strength { .. } => "strength",
            Command::Lr { .. } => "lr",
            Command::Derive { .. } => "derive",
            Command::Shift { .. } => "shift",
            Command::Lessdot { .. } => "lessdot",
            Command::MinimalQ { .. } => "minimal-q",
            Command::MaximalR { .. } => "maximal-r",
            Command::Specialize { .. } => "specialize",
            Command::Specialize2 { .. } => "specialize2",
            Command::EApply { .. } => "e-apply",
            Command::OrbitCheck { .. } => "orbit-check",
            Command::OmegaCheck { .. } => "omega-check",
            Command::Classify2 { .. } => "classify2",
            Command::VerifyWitness { .. } => "verify-witness",
        }
    }
}

/// Everything a run depends on.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub field: Option<String>,
    pub budget: u64,
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl From<Cli> for JobConfig {
    fn from(c: Cli) -> Self {
        JobConfig {
            command: c.command,
            field: c.field,
            budget: c.budget,
            workers: c.workers,
            output: c.output,
            seed: c.seed,
        }
    }
}

impl JobConfig {
    /// Parses a full argument list, program name first.
    pub fn from_args<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Into::into)
    }

    /// The `--field` value, `q` when absent.
    pub fn field(&self) -> polyfunctor::Result<Field> {
        self.field.as_deref().unwrap_or("q").parse()
    }

    /// Field of a document, checked against an explicit `--field`.
    pub(crate) fn agree(&self, doc: Field) -> polyfunctor::Result<Field> {
        match &self.field {
            Some(f) if f.parse::<Field>()? != doc => {
                Err(Error::Invalid(format!("--field {f} but the input is over {doc}")))
            }
            _ => Ok(doc),
        }
    }
}

/// The outcome of [`run`]: exit status, report and, on failure, a diagnostic.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: u8,
    pub report: Value,
    pub error: Option<Value>,
}

/// What a command hands back before timing is attached.
pub(crate) struct Done {
    pub operation: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub witness_path: Option<PathBuf>,
}

pub fn status_of(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => STATUS_PARSE,
        Error::BudgetExceeded { .. } | Error::NotFound { .. } => STATUS_BUDGET,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MixedFields(..) => "mixed_fields",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::Parse(_) => "parse",
        Error::Invalid(_) => "invalid",
        Error::Unsupported(_) => "unsupported",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::InsufficientData(_) => "insufficient_data",
        Error::NotEnoughBlocks { .. } => "not_enough_blocks",
        Error::NotFound { .. } => "not_found",
        Error::DepthExceeded { .. } => "depth_exceeded",
        Error::IndexOutOfRange(_) => "index_out_of_range",
    }
}

/// Runs one job. Never panics on bad input; failures come back as a nonzero
/// status with a JSON diagnostic.
pub fn run(job: &JobConfig) -> Outcome {
    let start = Instant::now();
    let res = commands::dispatch(job);
    let wall_ms = start.elapsed().as_millis() as u64;
    let name = job.command.name();
    match res {
        Ok(done) => {
            let mut report = json!({
                "command": name,
                "operation": done.operation,
                "inputs": common_inputs(job, done.inputs),
                "result": done.result,
                "wall_ms": wall_ms,
            });
            if let Some(p) = done.witness_path {
                report["witness_path"] = Value::String(p.display().to_string());
            }
            Outcome {
                status: 0,
                report,
                error: None,
            }
        }
        Err(e) => {
            let diag = json!({
                "command": name,
                "error": error_kind(&e),
                "message": e.to_string(),
            });
            Outcome {
                status: status_of(&e),
                report: Value::Null,
                error: Some(diag),
            }
        }
    }
}

fn common_inputs(job: &JobConfig, mut inputs: Value) -> Value {
    if let Value::Object(m) = &mut inputs {
        m.insert("budget".into(), json!(job.budget));
        m.insert("seed".into(), json!(job.seed));
        if let Some(f) = &job.field {
            m.insert("field".into(), json!(f));
        }
    }
    inputs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        assert_eq!(status_of(&Error::Parse("x".into())), STATUS_PARSE);
        assert_eq!(status_of(&Error::BudgetExceeded { budget: 1 }), STATUS_BUDGET);
        assert_eq!(status_of(&Error::NotFound { examined: 4 }), STATUS_BUDGET);
        assert_eq!(status_of(&Error::Invalid("x".into())), 1);
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let job = JobConfig::from_args(["polyfunctor", "lr", "--lambda", "2", "--mu", "1", "--nu", "1", "--seed", "4"])
            .unwrap();
        assert_eq!(job.seed, 4);
        assert_eq!(job.command.name(), "lr");
        assert_eq!(job.field().unwrap(), Field::Rationals);
    }

    #[test]
    fn run_attaches_inputs() {
        let job = JobConfig::from_args(["polyfunctor", "--field", "fp:5", "derive", "--spec", "S2+E3"]).unwrap();
        let out = run(&job);
        assert_eq!(out.status, 0);
        assert_eq!(out.report["inputs"]["field"], "fp:5");
        assert_eq!(out.report["result"]["derivative"], "S1+E2");
    }

    #[test]
    fn bad_field_is_a_parse_error() {
        let job = JobConfig::from_args(["polyfunctor", "--field", "fp:x", "maximal-r", "--d", "2", "--depth", "1"]).unwrap();
        assert_eq!(run(&job).status, STATUS_PARSE);
    }
}
