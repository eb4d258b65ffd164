use std::process::ExitCode;

use clap::Parser;
use polyfunctor::json::to_canonical_string;
use polyfunctor_cli::{run, Cli, JobConfig};

fn main() -> ExitCode {
    let job = JobConfig::from(Cli::parse());
    if let Some(w) = job.workers {
        // fails only if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let outcome = run(&job);
    if let Some(diag) = &outcome.error {
        eprint!("{}", to_canonical_string(diag));
        return ExitCode::from(outcome.status);
    }
    let text = to_canonical_string(&outcome.report);
    match &job.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
