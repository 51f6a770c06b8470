//! Combines the homological criteria into one cited report.

use serde::Serialize;

use crate::algebra::{row_span_contains, AbelianGroup, IntMatrix};
use crate::error::Result;
use crate::mcg::{positive_stabilization, AbelianizationVector, Stabilization, TwistWord};
use crate::openbook::{brieskorn_homology, h1_open_book, BrieskornPoint, OpenBookPresentation};
use crate::surface::CurveClass;

pub mod cite {
    pub const MONODROMY: &str =
        "Rmk 1.2: a strong filling forces trivial monodromy on rational homology";
    pub const INJECTION: &str =
        "Thm B: a strong filling forces the page to inject in rational homology";
    pub const DISC: &str =
        "Cor C: with b1(V) = 0, a strongly fillable BO(Σ,φ) has a disc page (then Stein fillable)";
    pub const COMMUTATOR: &str =
        "Cor D: a strongly fillable planar BO(Σ,φ) has φ in the commutator subgroup";
    pub const SIGN_COHERENT: &str =
        "Thm E: planar sign-coherent monodromy gives a weakly but not strongly fillable BO(Σ,φ)";
    pub const TIGHT: &str = "Thm A: BO(Σ,φ) is universally tight in dimension 5";
    pub const STABILIZATION: &str =
        "Cor 1.6: BO of a positive stabilization is not strongly fillable";
    pub const BRIESKORN: &str =
        "Thm F: BO(D*S^n, τ^k) is strongly fillable only if H_n(V;Q) ≠ 0 or k = 0";
    pub const BRIESKORN_EVEN: &str =
        "Thm F: BOFill(n) is a subgroup of Z; for even n its generator k0(n) is even";
    pub const BRIESKORN_WEAK: &str = "Thm F: BO(D*S^n, τ^k) is weakly fillable for every k";
    pub const PANTS: &str = "Lemma 5.2: orbifold Euler characteristic of the pants factorization";
    pub const FACTORIZATION: &str = "Factorization Lemma: φ = F ∘ G with both factors of negative orbifold Euler characteristic";
    pub const CONTACT: &str = "Thm 2.1: β is a contact form on the model chart";
    pub const LARGE_K: &str = "Large-K lemma: K dθ + λ is contact for K large";
    pub const COBORDISM: &str = "Lemma 6.2: the collar form is symplectic";
    pub const REEB: &str = "Obs 2.4: Reeb field equations β(R) = 1, ι_R dβ = 0";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Obstructed,
    Passed,
    NotApplicable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summary {
    NotStronglyFillable,
    SteinFillable,
    NoObstructionFound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Matrix {
        matrix: IntMatrix,
    },
    Relations {
        matrix: IntMatrix,
        rational_rank: usize,
    },
    Group {
        group: AbelianGroup,
    },
    Abelianization {
        vector: AbelianizationVector,
    },
    Betti {
        b1_open_book: usize,
        b1_page: usize,
        bound_holds: bool,
    },
    Stabilization {
        new_curve: CurveClass,
        h1: AbelianGroup,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub status: Status,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Criterion {
    fn new(name: &'static str, citation: &'static str, status: Status) -> Criterion {
        Criterion {
            name,
            status,
            citation,
            witness: None,
            detail: String::new(),
        }
    }

    fn with_witness(mut self, w: Witness) -> Criterion {
        self.witness = Some(w);
        self
    }

    fn with_detail(mut self, d: impl Into<String>) -> Criterion {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub criteria: Vec<Criterion>,
    pub summary: Summary,
    /// A weak filling is known to exist.
    pub weakly_fillable: bool,
    pub tightness_note: String,
}

impl Verdict {
    fn assemble(
        criteria: Vec<Criterion>,
        identity: bool,
        weakly_fillable: bool,
        tightness_note: String,
    ) -> Verdict {
        let summary = if criteria.iter().any(|c| c.status == Status::Obstructed) {
            Summary::NotStronglyFillable
        } else if identity {
            Summary::SteinFillable
        } else {
            Summary::NoObstructionFound
        };
        Verdict {
            criteria,
            summary,
            weakly_fillable: weakly_fillable || summary == Summary::SteinFillable,
            tightness_note,
        }
    }

    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name == name)
    }

    pub fn is_obstructed(&self) -> bool {
        self.summary == Summary::NotStronglyFillable
    }

    /// Citations of every criterion that ran, then the tightness note, without repeats.
    pub fn citations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.criteria {
            if c.status != Status::NotApplicable && !out.iter().any(|x| x == c.citation) {
                out.push(c.citation.to_string());
            }
        }
        if !out.contains(&self.tightness_note) {
            out.push(self.tightness_note.clone());
        }
        out
    }
}

pub fn analyze(word: &TwistWord) -> Result<Verdict> {
    let surface = word.surface();
    let pres = OpenBookPresentation::new(word)?;
    let h1 = pres.h1();
    let mut criteria = Vec::with_capacity(5);

    criteria.push(if pres.action.is_identity() {
        Criterion::new("homological-monodromy", cite::MONODROMY, Status::Passed)
    } else {
        Criterion::new("homological-monodromy", cite::MONODROMY, Status::Obstructed).with_witness(
            Witness::Matrix {
                matrix: pres.action.clone(),
            },
        )
    });

    let rank = pres.relation_rank();
    let injection = if rank == 0 {
        Criterion::new("page-injection", cite::INJECTION, Status::Passed)
    } else {
        Criterion::new("page-injection", cite::INJECTION, Status::Obstructed).with_witness(
            Witness::Relations {
                matrix: pres.relations.clone(),
                rational_rank: rank,
            },
        )
    };
    let injection_obstructs = injection.status == Status::Obstructed;
    criteria.push(injection);

    criteria.push(if h1.free_rank > 0 {
        Criterion::new("rational-homology-sphere", cite::DISC, Status::Passed)
            .with_detail(format!("H1(V) = {h1}"))
    } else if surface.is_disc() {
        Criterion::new("rational-homology-sphere", cite::DISC, Status::Passed)
            .with_detail("disc page")
    } else {
        Criterion::new("rational-homology-sphere", cite::DISC, Status::Obstructed)
            .with_witness(Witness::Group { group: h1.clone() })
    });

    let commutator = if !surface.is_planar() {
        Criterion::new(
            "commutator-subgroup",
            cite::COMMUTATOR,
            Status::NotApplicable,
        )
        .with_detail("page is not planar")
    } else if !word.is_subset_encoded() {
        Criterion::new(
            "commutator-subgroup",
            cite::COMMUTATOR,
            Status::NotApplicable,
        )
        .with_detail("some letter has no boundary-subset encoding")
    } else {
        let ab = word.planar_abelianization()?;
        if ab.is_zero() {
            Criterion::new("commutator-subgroup", cite::COMMUTATOR, Status::Passed)
                .with_detail("abelianization vanishes; no obstruction")
        } else {
            Criterion::new("commutator-subgroup", cite::COMMUTATOR, Status::Obstructed)
                .with_witness(Witness::Abelianization { vector: ab })
        }
    };
    let commutator_obstructs = commutator.status == Status::Obstructed;
    criteria.push(commutator);

    let coherent = surface.is_planar() && !word.is_empty() && word.is_sign_coherent();
    criteria.push(if coherent {
        let b1 = h1.free_rank;
        let witness = Witness::Betti {
            b1_open_book: b1,
            b1_page: surface.rank(),
            bound_holds: b1 < surface.rank(),
        };
        if injection_obstructs || commutator_obstructs {
            Criterion::new(
                "planar-sign-coherent",
                cite::SIGN_COHERENT,
                Status::Obstructed,
            )
            .with_witness(witness)
        } else {
            Criterion::new("planar-sign-coherent", cite::SIGN_COHERENT, Status::Unknown)
                .with_witness(witness)
                .with_detail(
                    "neither the injection nor the commutator test confirms the obstruction",
                )
        }
    } else {
        Criterion::new(
            "planar-sign-coherent",
            cite::SIGN_COHERENT,
            Status::NotApplicable,
        )
    });

    let identity = word.free_reduce().is_empty();
    Ok(Verdict::assemble(
        criteria,
        identity,
        coherent,
        cite::TIGHT.to_string(),
    ))
}

/// Analysis of a stabilized open book together with the handle-twist mechanism.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizationCheck {
    pub stabilization: Stabilization,
    pub h1_before: AbelianGroup,
    pub h1_after: AbelianGroup,
    pub new_curve_nonzero: bool,
    pub new_curve_vanishes_in_h1: bool,
    pub verdict: Verdict,
}

impl StabilizationCheck {
    /// Stabilization must not change the 3-manifold.
    pub fn h1_preserved(&self) -> bool {
        self.h1_before == self.h1_after
    }
}

pub fn check_stabilization(word: &TwistWord, i: usize, j: usize) -> Result<StabilizationCheck> {
    let h1_before = h1_open_book(word)?;
    let stabilization = positive_stabilization(word, i, j)?;
    let pres = OpenBookPresentation::new(&stabilization.word)?;
    let h1_after = pres.h1();
    let new_curve_nonzero = !stabilization.new_curve.is_zero();
    let new_curve_vanishes_in_h1 =
        row_span_contains(&pres.relations, &stabilization.new_curve.coeffs)?;

    let mut verdict = analyze(&stabilization.word)?;
    let witness = Witness::Stabilization {
        new_curve: stabilization.new_curve.clone(),
        h1: h1_after.clone(),
    };
    // The obstruction holds for every positive stabilization; the detail only
    // says whether the handle curve's homological mechanism is visible.
    let detail = if new_curve_nonzero && new_curve_vanishes_in_h1 {
        "handle curve is nonzero on the page and null-homologous in V"
    } else {
        "handle curve survives in H1(V)"
    };
    verdict.criteria.push(
        Criterion::new(
            "positive-stabilization",
            cite::STABILIZATION,
            Status::Obstructed,
        )
        .with_witness(witness)
        .with_detail(detail),
    );
    let verdict = Verdict::assemble(
        verdict.criteria,
        false,
        verdict.weakly_fillable,
        verdict.tightness_note,
    );
    Ok(StabilizationCheck {
        stabilization,
        h1_before,
        h1_after,
        new_curve_nonzero,
        new_curve_vanishes_in_h1,
        verdict,
    })
}

/// Verdict for BO(D*Sⁿ, τ^k).
pub fn bofill_verdict(p: BrieskornPoint) -> Result<Verdict> {
    let group = brieskorn_homology(p)?;
    let witness = Witness::Group {
        group: group.clone(),
    };
    let criterion = if p.k == 0 {
        Criterion::new("brieskorn-homology", cite::BRIESKORN, Status::Passed)
            .with_witness(witness)
            .with_detail("trivial monodromy")
    } else if group.free_rank == 0 {
        Criterion::new("brieskorn-homology", cite::BRIESKORN, Status::Obstructed)
            .with_witness(witness)
            .with_detail("H_n(V; Q) = 0")
    } else {
        Criterion::new("brieskorn-homology", cite::BRIESKORN_EVEN, Status::Unknown)
            .with_witness(witness)
            .with_detail("H_n(V; Q) = Q; the obstruction vanishes (torsion unspecified by source)")
    };
    let weak = Criterion::new("weak-filling", cite::BRIESKORN_WEAK, Status::Passed);
    let tightness = if p.n == 1 {
        cite::TIGHT.to_string()
    } else {
        format!("{}; not asserted in dimension {}", cite::TIGHT, 2 * p.n + 3)
    };
    Ok(Verdict::assemble(
        vec![criterion, weak],
        p.k == 0,
        true,
        tightness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;

    #[test]
    fn annulus_twist_is_obstructed() {
        let w = TwistWord::parse(&Surface::annulus(), "[S{1}:1]").unwrap();
        let v = analyze(&w).unwrap();
        assert_eq!(v.summary, Summary::NotStronglyFillable);
        assert_eq!(
            v.criterion("page-injection").unwrap().status,
            Status::Obstructed
        );
        assert!(v.tightness_note.contains("universally tight"));
        assert!(v.weakly_fillable);
        for c in v.criteria.iter().filter(|c| c.status == Status::Obstructed) {
            assert!(c.witness.is_some(), "{}", c.name);
        }
    }

    #[test]
    fn identity_on_disc_and_annulus_is_stein() {
        for s in [Surface::disc(), Surface::annulus()] {
            let v = analyze(&TwistWord::identity(&s)).unwrap();
            assert_eq!(v.summary, Summary::SteinFillable);
            assert!(v
                .criteria
                .iter()
                .all(|c| matches!(c.status, Status::Passed | Status::NotApplicable)));
        }
    }

    #[test]
    fn mixed_pants_word_obstructed_by_commutator_test() {
        let w = TwistWord::parse(&Surface::pants(), "[S{1}:1][S{2}:-1]").unwrap();
        let v = analyze(&w).unwrap();
        let c = v.criterion("commutator-subgroup").unwrap();
        assert_eq!(c.status, Status::Obstructed);
        match &c.witness {
            Some(Witness::Abelianization { vector }) => assert_eq!(vector.to_string(), "(0,1,-1)"),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            v.criterion("planar-sign-coherent").unwrap().status,
            Status::NotApplicable
        );
    }

    #[test]
    fn non_planar_identity_has_no_obstruction() {
        let w = TwistWord::identity(&Surface::new(2, 1).unwrap());
        let v = analyze(&w).unwrap();
        assert_eq!(v.summary, Summary::SteinFillable);
        let w = TwistWord::parse(&Surface::new(1, 1).unwrap(), "[v(1,0):1][v(1,0):-1]").unwrap();
        assert_eq!(analyze(&w).unwrap().summary, Summary::SteinFillable);
    }

    #[test]
    fn stabilizations() {
        let c = check_stabilization(&TwistWord::identity(&Surface::disc()), 1, 1).unwrap();
        assert!(c.h1_after.is_trivial());
        assert!(c.new_curve_nonzero && c.new_curve_vanishes_in_h1);
        assert_eq!(c.verdict.summary, Summary::NotStronglyFillable);
        let w = TwistWord::parse(&Surface::pants(), "[S{1}:1]").unwrap();
        let c = check_stabilization(&w, 1, 2).unwrap();
        assert!(c.h1_preserved());
        assert_eq!(c.verdict.summary, Summary::NotStronglyFillable);
        let twice = check_stabilization(&c.stabilization.word, 1, 1).unwrap();
        assert!(twice.h1_preserved());
        assert_eq!(twice.verdict.summary, Summary::NotStronglyFillable);
    }

    #[test]
    fn brieskorn_verdicts() {
        let v = |n, k| bofill_verdict(BrieskornPoint { n, k }).unwrap();
        assert_eq!(v(1, 2).summary, Summary::NotStronglyFillable);
        assert_eq!(v(2, 2).summary, Summary::NoObstructionFound);
        assert_eq!(v(2, 2).criteria[0].status, Status::Unknown);
        assert_eq!(v(4, 0).summary, Summary::SteinFillable);
        assert!(v(3, 5).weakly_fillable);
    }
}
