//! Exterior calculus on coordinate charts with exact symbolic derivatives,
//! and grid scans that check contact and symplectic nondegeneracy at sample
//! points.

pub mod error;
pub mod expr;
pub mod form;
pub mod modelfile;
pub mod models;
pub mod parse;
pub mod scan;
pub mod verify;

pub use error::FormError;
pub use expr::Expr;
pub use form::{Axis, AxisKind, Chart, Coefficient, FormField, MultiIndex};
pub use modelfile::{load_model, load_model_file, ModelFile};
pub use models::{CobordismParams, ContactModel, LargeKModel};
pub use parse::parse_expr;
pub use scan::{scan, DensitySign, Grid, ScanReport, ScanVerdict};
pub use verify::{
    minimal_k, reeb_solve, verify_cobordism, verify_contact, ContactDensity, MinimalK, ReebSolution,
};
