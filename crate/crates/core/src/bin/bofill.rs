use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bofill::cli::{self, Command, Format, JobSpec, Payload};
use bofill::corpus::Signs;
use formslab::{CobordismParams, LargeKModel};

#[derive(Parser)]
#[command(
    name = "bofill",
    version,
    about = "Fillability obstructions for Bourgeois contact manifolds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutFormat::Json, global = true)]
    format: OutFormat,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Args)]
struct WordArgs {
    #[arg(long, default_value_t = 0)]
    genus: usize,
    #[arg(long)]
    boundary: usize,
    /// Twist word, e.g. "[S{1,3}:+2][v(1,0,-1):-1]"; empty for the identity.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand)]
enum Sub {
    /// Run every homological criterion on BO(Σ, φ).
    Analyze(WordArgs),
    /// Positively stabilize along a handle from boundary i to boundary j, then analyze.
    Stabilize {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Middle homology and verdict for the Brieskorn family.
    Brieskorn {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Factor τ₁^a₁ τ₂^a₂ τ₃^a₃ on the pants.
    PantsFactorize {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
    },
    /// First homology of the 3-dimensional open book.
    H1(WordArgs),
    /// Grid-scan β ∧ (dβ)^n for a built-in model or a TOML model file.
    VerifyContact {
        #[arg(long)]
        model: String,
        #[arg(long, value_delimiter = ',')]
        resolution: Option<Vec<usize>>,
    },
    /// Grid-scan the top power of the collar symplectic form.
    VerifyCobordism {
        #[arg(long)]
        amplitude: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        resolution: Option<Vec<usize>>,
        /// TOML file with cobordism parameters.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Smallest K making the large-K model contact on the grid.
    MinimalK {
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 0.0)]
        k_lo: f64,
        #[arg(long, default_value_t = 100.0)]
        k_hi: f64,
        #[arg(long, value_delimiter = ',')]
        resolution: Option<Vec<usize>>,
    },
    /// Solve for the Reeb field at a point.
    Reeb {
        #[arg(long)]
        model: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<f64>,
    },
    /// Run a JobSpec JSON file ("-" for stdin).
    Job { file: PathBuf },
    /// Run newline-delimited JobSpecs; prints one report per line and a tally.
    Batch { file: PathBuf },
    /// Print random planar analyze jobs, one per line.
    Corpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_boundary: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Positive)]
        signs: SignArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Positive,
    Negative,
    Mixed,
}

fn word_payload(w: &WordArgs) -> Result<Payload, String> {
    Payload::default()
        .with_word_text(w.genus, w.boundary, &w.word)
        .map_err(|e| e.to_string())
}

fn read_input(file: &PathBuf) -> std::io::Result<String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn build_job(cli: &Cli) -> Result<JobSpec, String> {
    let (command, input) = match &cli.command {
        Sub::Analyze(w) => (Command::Analyze, word_payload(w)?),
        Sub::H1(w) => (Command::H1, word_payload(w)?),
        Sub::Stabilize { word, i, j } => (
            Command::Stabilize,
            Payload {
                i: Some(*i),
                j: Some(*j),
                ..word_payload(word)?
            },
        ),
        Sub::Brieskorn { n, k } => (
            Command::Brieskorn,
            Payload {
                n: Some(*n),
                k: Some(*k),
                ..Payload::default()
            },
        ),
        Sub::PantsFactorize { a } => {
            let a: [i64; 3] = a
                .as_slice()
                .try_into()
                .map_err(|_| "a: expected three integers".to_string())?;
            (
                Command::PantsFactorize,
                Payload {
                    a: Some(a),
                    ..Payload::default()
                },
            )
        }
        Sub::VerifyContact { model, resolution } => (
            Command::VerifyContact,
            Payload {
                model: Some(model.clone()),
                resolution: resolution.clone(),
                ..Payload::default()
            },
        ),
        Sub::VerifyCobordism {
            amplitude,
            resolution,
            params,
        } => {
            let mut p: CobordismParams = match params {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| format!("params: {e}"))?;
                    toml::from_str(&text).map_err(|e| format!("params: {e}"))?
                }
                None => CobordismParams::default(),
            };
            if let Some(a) = amplitude {
                p.amplitude = *a;
            }
            (
                Command::VerifyCobordism,
                Payload {
                    cobordism: Some(p),
                    resolution: resolution.clone(),
                    ..Payload::default()
                },
            )
        }
        Sub::MinimalK {
            amplitude,
            k_lo,
            k_hi,
            resolution,
        } => (
            Command::MinimalK,
            Payload {
                large_k: Some(LargeKModel::with_amplitude(*amplitude)),
                k_range: Some([*k_lo, *k_hi]),
                resolution: resolution.clone(),
                ..Payload::default()
            },
        ),
        Sub::Reeb { model, point } => (
            Command::Reeb,
            Payload {
                model: Some(model.clone()),
                point: Some(point.clone()),
                ..Payload::default()
            },
        ),
        Sub::Job { .. } | Sub::Batch { .. } | Sub::Corpus { .. } => unreachable!("handled in main"),
    };
    Ok(JobSpec {
        command,
        input,
        format: match cli.format {
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        },
        seed: cli.seed,
    })
}

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    cli::configure_threads();
    let args = Cli::parse();
    match &args.command {
        Sub::Batch { file } => match read_input(file) {
            Ok(text) => {
                emit(&cli::run_batch_text(&text));
                exit(cli::EXIT_OK)
            }
            Err(e) => {
                eprintln!("batch: cannot read {}: {e}", file.display());
                exit(cli::EXIT_INVALID)
            }
        },
        Sub::Corpus {
            count,
            max_boundary,
            signs,
        } => {
            let signs = match signs {
                SignArg::Positive => Signs::Positive,
                SignArg::Negative => Signs::Negative,
                SignArg::Mixed => Signs::Mixed,
            };
            for job in cli::corpus_jobs(args.seed, *count, *max_boundary, signs) {
                emit(&format!("{}\n", job.to_json()));
            }
            exit(cli::EXIT_OK)
        }
        Sub::Job { file } => {
            let job = read_input(file)
                .map_err(|e| format!("job: {e}"))
                .and_then(|t| JobSpec::from_json(&t).map_err(|e| e.to_string()));
            match job {
                Ok(job) => {
                    let out = cli::run(&job);
                    emit(&format!("{}\n", out.render(job.format)));
                    exit(out.exit_code)
                }
                Err(e) => {
                    eprintln!("{e}");
                    exit(cli::EXIT_INVALID)
                }
            }
        }
        _ => match build_job(&args) {
            Ok(job) => {
                let out = cli::run(&job);
                emit(&format!("{}\n", out.render(job.format)));
                exit(out.exit_code)
            }
            Err(e) => {
                eprintln!("{e}");
                exit(cli::EXIT_INVALID)
            }
        },
    }
}
