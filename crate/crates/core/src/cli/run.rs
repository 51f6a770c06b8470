use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use formslab::{
    load_model_file, minimal_k, reeb_solve, verify_cobordism, verify_contact, ContactModel,
    FormError, ScanReport, ScanVerdict,
};

use super::report::{Outcome, Report, SCHEMA_VERSION};
use super::{Command, JobSpec, Payload, EXIT_INVALID, EXIT_TOLERANCE, REEB_TOLERANCE};
use crate::error::{invalid, BofillError, Result};
use crate::openbook::{pants_factorization, BrieskornPoint, OpenBookPresentation};
use crate::verdict::{analyze, bofill_verdict, check_stabilization, cite, Verdict};

struct Computed {
    result: Value,
    citations: Vec<String>,
    witnesses: Map<String, Value>,
    /// Set when an internal check failed; the report is still emitted.
    tolerance_failure: Option<String>,
}

impl Computed {
    fn new(result: Value, citations: Vec<String>) -> Computed {
        Computed {
            result,
            citations,
            witnesses: Map::new(),
            tolerance_failure: None,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn witnesses_of(v: &Verdict) -> Map<String, Value> {
    v.criteria
        .iter()
        .filter_map(|c| {
            c.witness
                .as_ref()
                .map(|w| (c.name.to_string(), to_value(w)))
        })
        .collect()
}

fn verdict_fields(v: &Verdict, result: &mut Map<String, Value>) {
    result.insert("summary".into(), to_value(&v.summary));
    result.insert("weakly_fillable".into(), json!(v.weakly_fillable));
    result.insert("tightness_note".into(), json!(v.tightness_note));
    result.insert("criteria".into(), to_value(&v.criteria));
}

fn required<T: Copy>(v: Option<T>, field: &str) -> Result<T> {
    v.ok_or_else(|| invalid(field, "required"))
}

fn form_error(field: &str, e: FormError) -> BofillError {
    invalid(field, e.to_string())
}

fn run_analyze(p: &Payload) -> Result<Computed> {
    let word = p.word()?;
    let v = analyze(&word)?;
    let h1 = OpenBookPresentation::new(&word)?.h1();
    let mut r = Map::new();
    r.insert("surface".into(), to_value(word.surface()));
    r.insert("word".into(), json!(word.to_string()));
    r.insert("h1".into(), to_value(&h1));
    verdict_fields(&v, &mut r);
    r.insert("warnings".into(), json!(word.warnings()));
    Ok(Computed {
        witnesses: witnesses_of(&v),
        ..Computed::new(Value::Object(r), v.citations())
    })
}

fn run_stabilize(p: &Payload) -> Result<Computed> {
    let word = p.word()?;
    let c = check_stabilization(&word, required(p.i, "i")?, required(p.j, "j")?)?;
    let st = &c.stabilization;
    let mut r = Map::new();
    r.insert("surface_before".into(), to_value(word.surface()));
    r.insert("word_before".into(), json!(word.to_string()));
    r.insert("surface".into(), to_value(st.surface()));
    r.insert("word".into(), json!(st.word.to_string()));
    r.insert("new_curve".into(), to_value(&st.new_curve));
    r.insert("basis_map".into(), to_value(&st.basis_map));
    r.insert("h1_before".into(), to_value(&c.h1_before));
    r.insert("h1".into(), to_value(&c.h1_after));
    r.insert("h1_preserved".into(), json!(c.h1_preserved()));
    r.insert("new_curve_nonzero".into(), json!(c.new_curve_nonzero));
    r.insert(
        "new_curve_vanishes_in_h1".into(),
        json!(c.new_curve_vanishes_in_h1),
    );
    verdict_fields(&c.verdict, &mut r);
    let mut out = Computed {
        witnesses: witnesses_of(&c.verdict),
        ..Computed::new(Value::Object(r), c.verdict.citations())
    };
    if !c.h1_preserved() {
        out.tolerance_failure = Some(format!(
            "stabilization changed H1 from {} to {}",
            c.h1_before, c.h1_after
        ));
    }
    Ok(out)
}

fn run_brieskorn(p: &Payload) -> Result<Computed> {
    let point = BrieskornPoint::new(required(p.n, "n")?, required(p.k, "k")?)?;
    let v = bofill_verdict(point)?;
    let group = crate::openbook::brieskorn_homology(point)?;
    let mut r = Map::new();
    r.insert("n".into(), json!(point.n));
    r.insert("k".into(), json!(point.k));
    r.insert("dimension".into(), json!(2 * point.n + 1));
    r.insert("group".into(), json!(group.to_string()));
    r.insert("homology".into(), to_value(&group));
    if point.n % 2 == 0 && point.k % 2 == 0 && point.k != 0 {
        r.insert(
            "torsion_note".into(),
            json!("torsion unspecified by source; only the rational rank is claimed"),
        );
    }
    verdict_fields(&v, &mut r);
    Ok(Computed {
        witnesses: witnesses_of(&v),
        ..Computed::new(Value::Object(r), v.citations())
    })
}

fn run_pants(p: &Payload) -> Result<Computed> {
    let a = required(p.a, "a")?;
    let f = pants_factorization(a)?;
    let h1 = OpenBookPresentation::new(&crate::openbook::pants_word(a))?.h1();
    let side = |s: &crate::openbook::OrbifoldSide| {
        json!({
            "coefficients": s.coefficients,
            "chi_orb": s.chi.to_string(),
            "chi_orb_standard": s.chi_standard.to_string(),
            "sign_differs": s.sign_differs(),
        })
    };
    let result = json!({
        "a": a,
        "n": f.n,
        "f": f.f.to_string(),
        "g": f.g.to_string(),
        "f_side": side(&f.f_side),
        "g_side": side(&f.g_side),
        "surgery_coefficients": f.surgery_coefficients.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "recomposes": f.recomposes,
        "h1": to_value(&h1),
    });
    let mut out = Computed::new(result, vec![cite::FACTORIZATION.into(), cite::PANTS.into()]);
    if !f.recomposes {
        out.tolerance_failure = Some("G then F does not recompose φ".into());
    }
    Ok(out)
}

fn run_h1(p: &Payload) -> Result<Computed> {
    let word = p.word()?;
    let pres = OpenBookPresentation::new(&word)?;
    let h1 = pres.h1();
    let rank = pres.relation_rank();
    let result = json!({
        "surface": to_value(word.surface()),
        "word": word.to_string(),
        "group": h1.to_string(),
        "h1": to_value(&h1),
        "b1": h1.free_rank,
        "homologically_trivial": pres.action.is_identity(),
        "page_injects_rationally": rank == 0,
        "warnings": word.warnings(),
    });
    let mut out = Computed::new(result, vec![cite::MONODROMY.into(), cite::INJECTION.into()]);
    out.witnesses
        .insert("relations".into(), to_value(&pres.relations));
    out.witnesses
        .insert("action".into(), to_value(&pres.action));
    Ok(out)
}

/// `pass` is the acceptance reading: contact scans need a constant nonzero
/// sign (orientation is a convention), symplectic volume must be positive.
fn scan_result(report: &ScanReport, pass: bool) -> Value {
    let mut v = to_value(report);
    v["pass"] = json!(pass);
    v["sign"] = to_value(&report.sign());
    v["nondegenerate"] = json!(report.nondegenerate());
    v["description"] = json!(report.summary());
    v
}

fn load_model(p: &Payload) -> Result<ContactModel> {
    let name = p
        .model
        .as_deref()
        .ok_or_else(|| invalid("model", "required"))?;
    match ContactModel::builtin(name) {
        Some(m) => Ok(m),
        None => load_model_file(Path::new(name)).map_err(|e| form_error("model", e)),
    }
}

fn run_verify_contact(p: &Payload) -> Result<Computed> {
    let model = load_model(p)?;
    let report =
        verify_contact(&model, p.resolution.as_deref()).map_err(|e| form_error("model", e))?;
    Ok(Computed::new(
        scan_result(&report, report.nondegenerate()),
        vec![cite::CONTACT.into()],
    ))
}

fn run_verify_cobordism(p: &Payload) -> Result<Computed> {
    let mut params = p.cobordism.clone().unwrap_or_default();
    if let Some(r) = &p.resolution {
        params.resolution = r.clone();
    }
    let report = verify_cobordism(&params).map_err(|e| form_error("cobordism", e))?;
    let mut v = scan_result(&report, report.verdict == ScanVerdict::Positive);
    v["params"] = to_value(&params);
    Ok(Computed::new(v, vec![cite::COBORDISM.into()]))
}

fn run_minimal_k(p: &Payload) -> Result<Computed> {
    let model = p.large_k.clone().unwrap_or_default();
    let [lo, hi] = p.k_range.unwrap_or([0.0, 100.0]);
    let r = minimal_k(&model, (lo, hi), p.resolution.as_deref()).map_err(|e| match e {
        FormError::NoPositiveK { .. } => form_error("k_range", e),
        e => form_error("large_k", e),
    })?;
    let mut v = to_value(&r);
    v["report_at_k_min"] = scan_result(&r.report_at_k_min, true);
    v["model"] = to_value(&model);
    Ok(Computed::new(v, vec![cite::LARGE_K.into()]))
}

fn run_reeb(p: &Payload) -> Result<Computed> {
    let model = load_model(p)?;
    let point = p
        .point
        .as_deref()
        .ok_or_else(|| invalid("point", "required"))?;
    let sol = reeb_solve(&model.form, point).map_err(|e| form_error("point", e))?;
    let mut v = to_value(&sol);
    v["model"] = json!(model.name);
    v["max_residual"] = json!(sol.max_residual());
    v["tolerance"] = json!(REEB_TOLERANCE);
    let mut out = Computed::new(v, vec![cite::REEB.into()]);
    if !(sol.max_residual() <= REEB_TOLERANCE) {
        out.tolerance_failure = Some(format!(
            "Reeb residual {:e} exceeds {:e}",
            sol.max_residual(),
            REEB_TOLERANCE
        ));
    }
    Ok(out)
}

/// Runs one job. Obstructions are successful results (exit 0); invalid input
/// exits 2 and failed internal checks exit 3.
pub fn run(job: &JobSpec) -> Outcome {
    let p = &job.input;
    let computed = match job.command {
        Command::Analyze => run_analyze(p),
        Command::Stabilize => run_stabilize(p),
        Command::Brieskorn => run_brieskorn(p),
        Command::PantsFactorize => run_pants(p),
        Command::H1 => run_h1(p),
        Command::VerifyContact => run_verify_contact(p),
        Command::VerifyCobordism => run_verify_cobordism(p),
        Command::MinimalK => run_minimal_k(p),
        Command::Reeb => run_reeb(p),
    };
    match computed {
        Err(e) => Outcome::failed(EXIT_INVALID, Some(job.command), e.to_string(), None),
        Ok(c) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: job.command,
                input_echo: job.input.clone(),
                result: c.result,
                citations: c.citations,
                witnesses: c.witnesses,
            };
            match c.tolerance_failure {
                None => Outcome::ok(report),
                Some(msg) => Outcome::failed(EXIT_TOLERANCE, Some(job.command), msg, Some(report)),
            }
        }
    }
}
