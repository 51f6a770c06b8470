// Generate a random corpus of analyze jobs and run it as a batch.
//
// cargo run -p bofill --example batch_corpus

use bofill::cli::{corpus_jobs, run_batch};
use bofill::corpus::Signs;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut corpus = String::new();
    for signs in [Signs::Positive, Signs::Mixed] {
        for job in corpus_jobs(42, 25, 5, signs) {
            corpus.push_str(&job.to_json());
            corpus.push('\n');
        }
    }
    let out = run_batch(&corpus);
    println!(
        "first report: {}",
        &out.lines[0][..out.lines[0].len().min(160)]
    );
    println!("{}", out.tally_line());
    assert_eq!(out.lines.len(), 50);
    assert!(out.tally.obstructed >= 25);
    assert_eq!(out.tally.errors, 0);
    Ok(())
}

fn main() {
    run_example().expect("batch_corpus example failed");
}
