//! TOML model files.
//!
//! ```toml
//! name = "page"
//! resolution = [7, 7, 7, 7, 7]   # optional
//!
//! [[axis]]
//! name = "s"
//! range = [1.0, 2.0]
//!
//! [[axis]]
//! name = "theta"
//! period = 6.283185307179586
//!
//! [[term]]
//! index = ["x"]
//! coeff = "s"
//! ```
//!
//! Term indices are axis names in any order; out-of-order lists pick up the
//! permutation sign.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::FormError;
use crate::form::{Axis, AxisKind, Chart, FormField};
use crate::models::ContactModel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub resolution: Option<Vec<usize>>,
    pub axis: Vec<AxisSpec>,
    #[serde(default)]
    pub term: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: String,
    #[serde(default)]
    pub range: Option<[f64; 2]>,
    #[serde(default)]
    pub period: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub index: Vec<String>,
    pub coeff: String,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile, FormError> {
        toml::from_str(text).map_err(|e| FormError::ModelFile(e.to_string()))
    }

    pub fn into_model(self) -> Result<ContactModel, FormError> {
        let axes = self
            .axis
            .iter()
            .map(|a| {
                let kind = match (a.range, a.period) {
                    (Some([lo, hi]), None) => AxisKind::Interval { lo, hi },
                    (None, Some(period)) => AxisKind::Periodic { period },
                    _ => {
                        return Err(FormError::ModelFile(format!(
                            "axis '{}' needs exactly one of range or period",
                            a.name
                        )))
                    }
                };
                Ok(Axis {
                    name: a.name.clone(),
                    kind,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let chart = Chart::new(axes)?;
        let degree = match (self.degree, self.term.first()) {
            (Some(d), _) => d,
            (None, Some(t)) => t.index.len(),
            (None, None) => return Err(FormError::ModelFile("no terms and no degree".into())),
        };
        let terms: Vec<(Vec<&str>, &str)> = self
            .term
            .iter()
            .map(|t| {
                (
                    t.index.iter().map(String::as_str).collect(),
                    t.coeff.as_str(),
                )
            })
            .collect();
        if let Some(t) = self.term.iter().find(|t| t.index.len() != degree) {
            return Err(FormError::ModelFile(format!(
                "term {:?} does not have degree {degree}",
                t.index
            )));
        }
        let form = FormField::parse_terms(&chart, degree, &terms)?;
        let mut model = ContactModel::new(self.name.as_deref().unwrap_or("model"), form);
        if let Some(r) = self.resolution {
            if r.len() != chart.dimension() {
                return Err(FormError::ModelFile(format!(
                    "resolution has {} entries for a {}-dimensional chart",
                    r.len(),
                    chart.dimension()
                )));
            }
            model.resolution = r;
        }
        Ok(model)
    }
}

pub fn load_model(text: &str) -> Result<ContactModel, FormError> {
    ModelFile::parse(text)?.into_model()
}

pub fn load_model_file(path: &Path) -> Result<ContactModel, FormError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormError::ModelFile(format!("{}: {e}", path.display())))?;
    load_model(&text)
}
