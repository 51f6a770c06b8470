//! Homological obstructions to strong symplectic fillability of Bourgeois
//! contact manifolds BO(Σ, φ), computed from Dehn-twist words on a page.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod mcg;
pub mod openbook;
pub mod surface;
pub mod verdict;

pub use algebra::{
    cokernel, rational_rank, row_span_contains, smith_normal_form, AbelianGroup, IntMatrix,
    SmithForm,
};
pub use error::{BofillError, Result};
pub use mcg::{
    positive_stabilization, transvection, AbelianizationVector, Letter, Stabilization, TwistWord,
};
pub use openbook::{
    b1_open_book, brieskorn_homology, chi_orb, h1_open_book, page_injects_rationally,
    pants_factorization, relative_delta, BrieskornPoint, OpenBookPresentation, PantsFactorization,
};
pub use surface::{CurveClass, Surface};
pub use verdict::{
    analyze, bofill_verdict, check_stabilization, Criterion, Status, Summary, Verdict, Witness,
};
