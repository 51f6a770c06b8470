use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::report::{Category, Outcome};
use super::{letter_specs, run, Command, JobSpec, Payload, EXIT_INVALID};
use crate::corpus::{random_planar_word, rng, Signs};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub obstructed: usize,
    pub passed: usize,
    pub unknown: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchOutput {
    /// One compact JSON line per nonblank corpus line, in input order.
    pub lines: Vec<String>,
    pub outcomes: Vec<Option<Outcome>>,
    pub tally: Tally,
}

impl BatchOutput {
    pub fn tally_line(&self) -> String {
        json!({ "tally": self.tally }).to_string()
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&self.tally_line());
        out.push('\n');
        out
    }
}

/// Runs newline-delimited JobSpecs. Malformed lines are recorded and skipped.
pub fn run_batch(corpus: &str) -> BatchOutput {
    let jobs: Vec<(usize, &str)> = corpus
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let results: Vec<(String, Option<Outcome>)> = jobs
        .par_iter()
        .map(|&(line_no, text)| match JobSpec::from_json(text) {
            Err(e) => (
                json!({ "line": line_no, "error": { "code": EXIT_INVALID, "message": e.to_string() } }).to_string(),
                None,
            ),
            Ok(job) => {
                let outcome = run(&job);
                let mut v: serde_json::Value = serde_json::from_str(&outcome.to_json()).expect("valid report");
                v["line"] = json!(line_no);
                (v.to_string(), Some(outcome))
            }
        })
        .collect();

    let mut tally = Tally::default();
    for (_, o) in &results {
        match o.as_ref().and_then(Outcome::category) {
            Some(Category::Obstructed) => tally.obstructed += 1,
            Some(Category::Passed) => tally.passed += 1,
            Some(Category::Unknown) => tally.unknown += 1,
            None => tally.errors += 1,
        }
    }
    let (lines, outcomes) = results.into_iter().unzip();
    BatchOutput {
        lines,
        outcomes,
        tally,
    }
}

/// Convenience: batch output as text, one line per report plus the tally.
pub fn run_batch_text(corpus: &str) -> String {
    run_batch(corpus).to_text()
}

/// `count` analyze jobs on random planar words with 2 ≤ b ≤ `max_boundary`.
pub fn corpus_jobs(seed: u64, count: usize, max_boundary: usize, signs: Signs) -> Vec<JobSpec> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let w = random_planar_word(&mut r, max_boundary.max(2), 6, signs);
            let input = Payload {
                genus: Some(0),
                boundary: Some(w.surface().boundary_count()),
                word: Some(letter_specs(&w)),
                ..Payload::default()
            };
            JobSpec {
                seed,
                ..JobSpec::new(Command::Analyze, input)
            }
        })
        .collect()
}
