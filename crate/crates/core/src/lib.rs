//! Reflection principles for `l`-ranks of class groups, derived
//! mechanically: Galois modules over `F_l`, their exact sequences,
//! Fourier–Motzkin projection of the resulting cohomology constraints, and
//! checks of the bounds against class-group data.

pub mod boundsolver;
pub mod catalog;
pub mod fieldcheck;
pub mod gmodules;
pub mod groups;
pub mod linalg;

pub use boundsolver::{derive_bounds, derive_report, AffineBound, BoundError, BoundReport, Level};
pub use catalog::{build_case, verify_case, CaseInstance, CaseReport, CaseSpec, CatalogError, Setting, SettingId};
pub use fieldcheck::{check_pairs, pair_resolvents, parse_records, rk_l, FieldError, FieldRecord, PairReport, Verdict};
pub use gmodules::{GModule, ModuleError, ModuleMap, ShortExactSeq};
pub use groups::{build_group, Family, FiniteGroup, GroupError};
pub use linalg::{LinalgError, LinearSystem, MatrixFl, Rational};

use thiserror::Error;

/// Any failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Fetch(#[from] fieldcheck::FetchError),
}
