//! Contact and symplectic checks built on grid scans.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, FormError};
use crate::expr::Expr;
use crate::form::{FormField, MultiIndex};
use crate::models::{CobordismParams, ContactModel, LargeKModel};
use crate::scan::{scan, ScanReport, ScanVerdict};

/// Precomputed `β` and `dβ` for evaluating `β ∧ (dβ)^n` pointwise.
pub struct ContactDensity {
    beta: FormField<Expr>,
    dbeta: FormField<Expr>,
    half_dim: usize,
}

impl ContactDensity {
    pub fn new(beta: &FormField<Expr>) -> Result<ContactDensity, FormError> {
        let dim = beta.chart().dimension();
        if dim.is_multiple_of(2) {
            return Err(FormError::EvenDimension(dim));
        }
        if beta.degree() != 1 {
            return Err(FormError::NotOneForm(beta.degree()));
        }
        Ok(ContactDensity {
            beta: beta.clone(),
            dbeta: beta.d()?,
            half_dim: dim / 2,
        })
    }

    pub fn at(&self, point: &[f64]) -> f64 {
        let b = self.beta.evaluate(point);
        let db = self.dbeta.evaluate(point);
        let vol = db
            .wedge_power(self.half_dim)
            .and_then(|w| b.wedge(&w))
            .and_then(|w| w.top_coefficient());
        vol.expect("degrees checked at construction")
    }

    /// The same density as a single expression.
    pub fn symbolic(&self) -> Result<Expr, FormError> {
        let w = self.dbeta.wedge_power(self.half_dim)?;
        self.beta.wedge(&w)?.top_density()
    }

    pub fn dbeta(&self) -> &FormField<Expr> {
        &self.dbeta
    }
}

/// Scans `β ∧ (dβ)^n` over the model's chart.
pub fn verify_contact(
    model: &ContactModel,
    resolution: Option<&[usize]>,
) -> Result<ScanReport, FormError> {
    let density = ContactDensity::new(&model.form)?;
    let res = resolution.unwrap_or(&model.resolution);
    scan(&model.name, model.chart(), res, |p| density.at(p))
}

/// Scans the top power of the collar symplectic form over both sphere charts.
pub fn verify_cobordism(params: &CobordismParams) -> Result<ScanReport, FormError> {
    let forms = params.forms()?;
    let mut merged: Option<ScanReport> = None;
    for (label, omega) in forms {
        let n = omega.chart().dimension() / 2;
        let report = scan(&label, omega.chart(), &params.resolution, |p| {
            omega
                .evaluate(p)
                .wedge_power(n)
                .and_then(|w| w.top_coefficient())
                .expect("2-form on an even chart")
        })?;
        merged = Some(match merged {
            None => report,
            Some(m) => m.merge(report),
        });
    }
    Ok(merged.expect("two sphere charts"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalK {
    pub k_min: f64,
    /// Every K tried, with whether the scan came back Positive, sorted by K.
    pub tested: Vec<(f64, bool)>,
    /// Positive at `k_min` implies Positive at every larger tested K.
    pub monotone: bool,
    pub report_at_k_min: ScanReport,
}

/// Smallest K in `range` (to bisection tolerance) whose contact scan is Positive.
pub fn minimal_k(
    model: &LargeKModel,
    range: (f64, f64),
    resolution: Option<&[usize]>,
) -> Result<MinimalK, FormError> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(invalid("k_range", "need finite lo < hi"));
    }
    let chart = model.chart()?;
    let default_res = chart.default_resolution();
    let res = resolution.unwrap_or(&default_res).to_vec();
    let run = |k: f64| -> Result<ScanReport, FormError> {
        let m = ContactModel {
            name: format!("large-k(K={k})"),
            form: model.form(k)?,
            resolution: res.clone(),
        };
        verify_contact(&m, None)
    };
    let mut tested = Vec::new();
    let positive = |r: &ScanReport| r.verdict == ScanVerdict::Positive;

    let lo_report = run(lo)?;
    tested.push((lo, positive(&lo_report)));
    let (k_min, report) = if positive(&lo_report) {
        (lo, lo_report)
    } else {
        let hi_report = run(hi)?;
        tested.push((hi, positive(&hi_report)));
        if !positive(&hi_report) {
            return Err(FormError::NoPositiveK { lo, hi });
        }
        let (mut a, mut b, mut best) = (lo, hi, hi_report);
        for _ in 0..200 {
            if b - a <= 1e-9 * b.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (a + b);
            let r = run(mid)?;
            tested.push((mid, positive(&r)));
            if positive(&r) {
                b = mid;
                best = r;
            } else {
                a = mid;
            }
        }
        (b, best)
    };
    for factor in [2.0, 4.0] {
        let k = k_min * factor;
        if k > k_min {
            let r = run(k)?;
            tested.push((k, positive(&r)));
        }
    }
    tested.sort_by(|x, y| x.0.total_cmp(&y.0));
    let monotone = tested
        .iter()
        .filter(|(k, _)| *k >= k_min)
        .all(|(_, ok)| *ok);
    Ok(MinimalK {
        k_min,
        tested,
        monotone,
        report_at_k_min: report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReebSolution {
    pub point: Vec<f64>,
    pub vector: Vec<f64>,
    /// `|β(R) − 1|`.
    pub normalization_residual: f64,
    /// `max_j |(ι_R dβ)_j|`.
    pub kernel_residual: f64,
    /// `β ∧ (dβ)^n` at the point.
    pub density: f64,
}

impl ReebSolution {
    pub fn max_residual(&self) -> f64 {
        self.normalization_residual.max(self.kernel_residual)
    }
}

/// Below this |density| the Reeb system is treated as singular.
pub const REEB_SINGULAR_DENSITY: f64 = 1e-12;

/// Solves `β(R) = 1`, `ι_R dβ = 0` at a point.
pub fn reeb_solve(beta: &FormField<Expr>, point: &[f64]) -> Result<ReebSolution, FormError> {
    let density_fn = ContactDensity::new(beta)?;
    let dim = beta.chart().dimension();
    if point.len() != dim {
        return Err(invalid(
            "point",
            format!("expected {dim} coordinates, got {}", point.len()),
        ));
    }
    let density = density_fn.at(point);
    if !(density.abs() >= REEB_SINGULAR_DENSITY) {
        return Err(FormError::Singular { density });
    }
    let b = beta.evaluate(point);
    let db = density_fn.dbeta().evaluate(point);
    let mut w = DMatrix::<f64>::zeros(dim, dim);
    for (mi, c) in db.terms() {
        let idx: Vec<usize> = mi.indices().collect();
        w[(idx[0], idx[1])] = *c;
        w[(idx[1], idx[0])] = -*c;
    }
    // ker dβ is one-dimensional at a contact point: take the right singular
    // vector of the smallest singular value and normalise with β.
    let svd = w.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty chart");
    let kernel: Vec<f64> = v_t.row(k).iter().copied().collect();
    let beta_vals: Vec<f64> = (0..dim)
        .map(|i| b.coefficient(MultiIndex::single(i)))
        .collect();
    let pairing: f64 = kernel.iter().zip(&beta_vals).map(|(a, b)| a * b).sum();
    if pairing == 0.0 {
        return Err(FormError::Singular { density });
    }
    let vector: Vec<f64> = kernel.iter().map(|x| x / pairing).collect();

    let beta_r: f64 = vector.iter().zip(&beta_vals).map(|(a, b)| a * b).sum();
    let contracted = db.contract(&vector)?;
    let kernel_residual = contracted.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    Ok(ReebSolution {
        point: point.to_vec(),
        vector,
        normalization_residual: (beta_r - 1.0).abs(),
        kernel_residual,
        density,
    })
}
