//! Job specifications, report rendering and batch runs behind the `bofill` binary.

mod batch;
mod report;
mod run;

use serde::{Deserialize, Serialize};

use formslab::{CobordismParams, LargeKModel};

use crate::error::{invalid, Result};
use crate::mcg::{Letter, TwistWord};
use crate::surface::Surface;

pub use batch::{corpus_jobs, run_batch, run_batch_text, BatchOutput, Tally};
pub use report::{ErrorReport, Outcome, Report, SCHEMA_VERSION};
pub use run::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

/// Residual bound for Reeb solutions; above it `run` exits with code 3.
pub const REEB_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Stabilize,
    Brieskorn,
    PantsFactorize,
    H1,
    VerifyContact,
    VerifyCobordism,
    MinimalK,
    Reeb,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Stabilize => "stabilize",
            Command::Brieskorn => "brieskorn",
            Command::PantsFactorize => "pants-factorize",
            Command::H1 => "h1",
            Command::VerifyContact => "verify-contact",
            Command::VerifyCobordism => "verify-cobordism",
            Command::MinimalK => "minimal-k",
            Command::Reeb => "reeb",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// One twist letter: exactly one of `subset` or `vector`, and a nonzero exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<i64>>,
    pub exponent: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<LetterSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<[i64; 3]>,
    /// `paper-page`, `paper-spine`, or a path to a TOML model file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cobordism: Option<CobordismParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub large_k: Option<LargeKModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_range: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub input: Payload,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub seed: u64,
}

impl JobSpec {
    pub fn new(command: Command, input: Payload) -> JobSpec {
        JobSpec {
            command,
            input,
            format: Format::Json,
            seed: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("job specs serialize")
    }

    pub fn from_json(text: &str) -> Result<JobSpec> {
        serde_json::from_str(text).map_err(|e| invalid("job", e.to_string()))
    }
}

impl Payload {
    pub fn surface(&self) -> Result<Surface> {
        let g = self.genus.unwrap_or(0);
        let b = self
            .boundary
            .ok_or_else(|| invalid("boundary", "required"))?;
        Surface::new(g, b).map_err(|e| invalid("boundary", e.to_string()))
    }

    /// Surface plus word; a missing word is the identity.
    pub fn word(&self) -> Result<TwistWord> {
        let s = self.surface()?;
        let mut w = TwistWord::identity(&s);
        for (idx, l) in self.word.iter().flatten().enumerate() {
            let field = format!("word[{idx}]");
            let curve = match (&l.subset, &l.vector) {
                (Some(sub), None) => s.planar_curve(sub),
                (None, Some(v)) => s.curve_from_i64(v),
                _ => return Err(invalid(&field, "needs exactly one of subset or vector")),
            }
            .map_err(|e| invalid(&field, e.to_string()))?;
            w.push(Letter {
                curve,
                exponent: l.exponent,
            })
            .map_err(|e| invalid(&field, e.to_string()))?;
        }
        Ok(w)
    }

    /// Sets surface and letters from a word in bracket syntax.
    pub fn with_word_text(mut self, genus: usize, boundary: usize, text: &str) -> Result<Payload> {
        let s = Surface::new(genus, boundary).map_err(|e| invalid("boundary", e.to_string()))?;
        let w = TwistWord::parse(&s, text).map_err(|e| invalid("word", e.to_string()))?;
        self.genus = Some(genus);
        self.boundary = Some(boundary);
        self.word = Some(letter_specs(&w));
        Ok(self)
    }
}

/// The payload form of a word.
pub fn letter_specs(word: &TwistWord) -> Vec<LetterSpec> {
    word.letters()
        .iter()
        .map(|l| match &l.curve.planar_subset {
            Some(sub) => LetterSpec {
                subset: Some(sub.iter().copied().collect()),
                vector: None,
                exponent: l.exponent,
            },
            None => LetterSpec {
                subset: None,
                vector: Some(
                    l.curve
                        .coeffs
                        .iter()
                        .map(|x| i64::try_from(x).expect("word coordinates fit in i64"))
                        .collect(),
                ),
                exponent: l.exponent,
            },
        })
        .collect()
}

/// Applies `BOFILL_THREADS` to the global thread pool, once.
pub fn configure_threads() {
    if let Some(n) = std::env::var("BOFILL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}
