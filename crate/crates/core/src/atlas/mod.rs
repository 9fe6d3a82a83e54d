//! Holographic atlases as line-oriented documents: charts are model blocks,
//! transitions are face pairings.

mod doc;
mod faces;
mod random;
mod validate;

pub use doc::{join_list, parse_list, AtlasDoc, ChartDecl, FaceRef, GlueDecl, Level, Orient, Selection};
pub use faces::{ChartShape, Face, FacePoint, FaceSelection};
pub use random::random_surface_atlas;
pub use validate::{
    pullback, refines, validate, validate_fillable, validate_holographic, validate_proto, Report, Violation,
    ViolationKind,
};

use thiserror::Error;

use crate::omega::OmegaError;
use crate::polymodel::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("omega={omega} is not a trajectory type in dimension {n}")]
    IllegalPattern { omega: String, n: u32 },
    #[error("unknown face {0}")]
    UnknownFace(String),
    #[error("inconsistent relabeling: {0}")]
    InconsistentRelabeling(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}
