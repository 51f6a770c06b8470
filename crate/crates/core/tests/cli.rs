use std::io::Write;
use std::process::{Command as Process, Output, Stdio};

use bofill::cli::{
    corpus_jobs, run, run_batch, Command, Format, JobSpec, LetterSpec, Payload, EXIT_INVALID,
    EXIT_OK, EXIT_TOLERANCE,
};
use bofill::corpus::Signs;
use proptest::prelude::*;
use serde_json::Value;

fn bin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Process::new(env!("CARGO_BIN_EXE_bofill"))
        .args(args)
        .env("BOFILL_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn analyze_job(b: usize, word: &str) -> JobSpec {
    JobSpec::new(
        Command::Analyze,
        Payload::default().with_word_text(0, b, word).unwrap(),
    )
}

#[test]
fn annulus_cube_is_obstructed_by_injection() {
    let out = bin(
        &[
            "analyze",
            "--genus",
            "0",
            "--boundary",
            "2",
            "--word",
            "[S{1}:+3]",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_out(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["result"]["summary"], "NotStronglyFillable");
    assert_eq!(v["result"]["h1"]["display"], "Z/3");
    let cites: Vec<&str> = v["citations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert!(cites.iter().any(|c| c.starts_with("Thm B")));
    for key in ["input_echo", "result", "citations", "witnesses"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn brieskorn_three_five() {
    let out = bin(&["brieskorn", "--n", "3", "--k", "5"], None);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_out(&out);
    assert_eq!(v["result"]["group"], "Z/5");
    assert_eq!(v["result"]["summary"], "NotStronglyFillable");
}

#[test]
fn empty_word_is_stein() {
    let out = bin(
        &["analyze", "--genus", "0", "--boundary", "2", "--word", ""],
        None,
    );
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_out(&out);
    assert_eq!(v["result"]["summary"], "SteinFillable");
    assert_eq!(v["result"]["criteria"][0]["status"], "Passed");
}

#[test]
fn text_format_and_other_subcommands() {
    let out = bin(
        &["--format", "text", "pants-factorize", "--a", "-2,0,0"],
        None,
    );
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command: pants-factorize"), "{text}");
    let out = bin(
        &[
            "h1",
            "--genus",
            "1",
            "--boundary",
            "1",
            "--word",
            "[v(1,0):1][v(0,1):1]",
        ],
        None,
    );
    assert_eq!(json_out(&out)["result"]["group"], "0");
    let out = bin(
        &["stabilize", "--boundary", "1", "--i", "1", "--j", "1"],
        None,
    );
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(json_out(&out)["result"]["word"], "[S{1}:+1]");
    let out = bin(
        &["reeb", "--model", "paper-spine", "--point", "0,0,0,0,0"],
        None,
    );
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(json_out(&out)["result"]["vector"][0], 1.0);
    let out = bin(
        &[
            "verify-contact",
            "--model",
            "paper-page",
            "--resolution",
            "4,4,4,4,4",
        ],
        None,
    );
    let v = json_out(&out);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["result"]["sign"], "Negative");
}

#[test]
fn invalid_input_exits_two_and_names_the_field() {
    let out = bin(&["analyze", "--boundary", "2", "--word", "[S{4}:1]"], None);
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
    let out = bin(&["analyze", "--boundary", "0"], None);
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
    let o = run(&JobSpec::new(Command::Brieskorn, Payload::default()));
    assert_eq!(o.exit_code, EXIT_INVALID);
    assert!(o.to_json().contains("\"n: required\""), "{}", o.to_json());
    let o = run(&JobSpec::new(
        Command::Reeb,
        Payload {
            model: Some("no-such-model.toml".into()),
            point: Some(vec![0.0; 5]),
            ..Payload::default()
        },
    ));
    assert_eq!(o.exit_code, EXIT_INVALID);
    assert!(o.to_json().contains("model:"));
}

#[test]
fn degenerate_reeb_point_is_an_input_error() {
    // β = dx on a 3-chart has no Reeb field anywhere.
    let dir = std::env::temp_dir().join(format!("bofill-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("degenerate.toml");
    std::fs::write(
        &path,
        "name = \"dx\"\n[[axis]]\nname = \"x\"\nrange = [0, 1]\n[[axis]]\nname = \"y\"\nrange = [0, 1]\n[[axis]]\nname = \"z\"\nrange = [0, 1]\n[[term]]\nindex = [\"x\"]\ncoeff = \"1\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let scan = bin(&["verify-contact", "--model", p], None);
    assert_eq!(json_out(&scan)["result"]["verdict"], "NonPositive");
    let out = bin(&["reeb", "--model", p, "--point", "0.5,0.5,0.5"], None);
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
}

#[test]
fn exit_code_three_is_reserved_for_failed_checks() {
    // Nothing in the shipped models trips a tolerance; only check the constant's role.
    assert_ne!(EXIT_TOLERANCE, EXIT_INVALID);
    assert_ne!(EXIT_TOLERANCE, EXIT_OK);
}

#[test]
fn job_file_round_trip_through_binary() {
    let job = analyze_job(3, "[S{1}:1][S{2}:-1]");
    let out = bin(&["job", "-"], Some(&job.to_json()));
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v = json_out(&out);
    assert_eq!(v["input_echo"], serde_json::to_value(&job.input).unwrap());
    assert_eq!(v["result"]["summary"], "NotStronglyFillable");
    assert_eq!(
        v["witnesses"]["commutator-subgroup"]["vector"]["coords"],
        serde_json::json!([0, 1, -1])
    );
}

fn letter() -> impl Strategy<Value = LetterSpec> {
    let e = prop_oneof![-5i64..=-1, 1i64..=5];
    (
        prop::option::of(prop::collection::vec(1usize..=4, 1..3)),
        prop::collection::vec(-3i64..=3, 1..6),
        e,
    )
        .prop_map(|(subset, vector, exponent)| match subset {
            Some(s) => LetterSpec {
                subset: Some(s),
                vector: None,
                exponent,
            },
            None => LetterSpec {
                subset: None,
                vector: Some(vector),
                exponent,
            },
        })
}

fn job() -> impl Strategy<Value = JobSpec> {
    let commands = prop::sample::select(vec![
        Command::Analyze,
        Command::Stabilize,
        Command::Brieskorn,
        Command::PantsFactorize,
        Command::H1,
        Command::VerifyContact,
        Command::VerifyCobordism,
        Command::MinimalK,
        Command::Reeb,
    ]);
    (
        commands,
        prop::option::of(0usize..4),
        prop::option::of(1usize..6),
        prop::option::of(prop::collection::vec(letter(), 0..4)),
        prop::option::of((-1e6f64..1e6, 1u32..9, -9i64..9)),
        prop::option::of(prop::collection::vec(-10f64..10.0, 5)),
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(
            |(command, genus, boundary, word, nums, point, seed, text)| {
                let input = Payload {
                    genus,
                    boundary,
                    word,
                    n: nums.map(|x| x.1),
                    k: nums.map(|x| x.2),
                    a: nums.map(|x| [x.2, -x.2, 1]),
                    k_range: nums.map(|x| [0.0, x.0.abs() + 0.1]),
                    point,
                    model: seed.is_multiple_of(3).then(|| "paper-page".to_string()),
                    ..Payload::default()
                };
                JobSpec {
                    command,
                    input,
                    format: if text { Format::Text } else { Format::Json },
                    seed,
                }
            },
        )
}

proptest! {
    #[test]
    fn job_spec_round_trips_byte_identically(job in job()) {
        let text = job.to_json();
        let back = JobSpec::from_json(&text).unwrap();
        prop_assert_eq!(&back, &job);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(
        JobSpec::from_json(r#"{"command":"analyze","input":{"boundary":2,"bogus":1}}"#).is_err()
    );
    assert!(JobSpec::from_json(r#"{"command":"nope"}"#).is_err());
}

fn corpus(n: usize, seed: u64, signs: Signs) -> String {
    corpus_jobs(seed, n, 5, signs)
        .iter()
        .map(|j| j.to_json() + "\n")
        .collect()
}

#[test]
fn batch_of_positive_words_is_all_obstructed() {
    let out = run_batch(&corpus(100, 1, Signs::Positive));
    assert_eq!(out.tally.obstructed, 100);
    assert_eq!(out.lines.len(), 100);
    for (i, l) in out.lines.iter().enumerate() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["line"], i + 1);
        assert!(v["citations"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c.as_str().unwrap().starts_with("Cor D")));
    }
}

#[test]
fn empty_batch_tallies_zero() {
    let out = run_batch("");
    assert_eq!(
        out.tally_line(),
        r#"{"tally":{"obstructed":0,"passed":0,"unknown":0,"errors":0}}"#
    );
    let proc = bin(&["batch", "-"], Some(""));
    assert_eq!(proc.status.code(), Some(EXIT_OK));
}

#[test]
fn malformed_line_is_recorded_and_skipped() {
    let mut lines: Vec<String> = corpus(99, 2, Signs::Mixed)
        .lines()
        .map(String::from)
        .collect();
    lines.insert(40, "{not json".into());
    let out = run_batch(&lines.join("\n"));
    let t = out.tally;
    assert_eq!(t.obstructed + t.passed + t.unknown, 99);
    assert_eq!(t.errors, 1);
    let err: Value = serde_json::from_str(&out.lines[40]).unwrap();
    assert_eq!(err["line"], 41);
    assert_eq!(err["error"]["code"], EXIT_INVALID);
}

#[test]
fn unreadable_corpus_exits_two() {
    let out = bin(&["batch", "/nonexistent/corpus.ndjson"], None);
    assert_eq!(out.status.code(), Some(EXIT_INVALID));
}

#[test]
fn batch_binary_matches_library_and_is_deterministic() {
    let gen = bin(
        &["--seed", "9", "corpus", "--count", "40", "--signs", "mixed"],
        None,
    );
    let corpus = String::from_utf8(gen.stdout).unwrap();
    assert_eq!(corpus, self::corpus(40, 9, Signs::Mixed));
    let a = bin(&["batch", "-"], Some(&corpus));
    let b = bin(&["batch", "-"], Some(&corpus));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        String::from_utf8(a.stdout).unwrap(),
        run_batch(&corpus).to_text()
    );
}

#[test]
fn obstructed_reports_carry_theorem_citations() {
    for line in run_batch(&corpus(60, 3, Signs::Mixed)).lines {
        let v: Value = serde_json::from_str(&line).unwrap();
        for c in v["result"]["criteria"].as_array().unwrap() {
            if c["status"] == "Obstructed" {
                let cite = c["citation"].as_str().unwrap();
                assert!(
                    ["Thm", "Cor", "Rmk"].iter().any(|p| cite.starts_with(p)),
                    "{cite}"
                );
                assert!(v["citations"].as_array().unwrap().iter().any(|x| x == cite));
            }
        }
    }
}
