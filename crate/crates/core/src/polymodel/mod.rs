//! Model polynomials with exact rational coefficients and the discriminant
//! stratification of a block.

mod model;
pub mod poly;
pub mod sturm;

pub use model::{
    default_epsilon, params_from_roots, strata_of_block, BlockStrata, BlockStratum, ClusterSplitting, DivisorWord,
    FiberComponent, LocalRoot, ModelPolynomial, RootRecord,
};
pub use poly::{Poly, Q};
pub use sturm::AlgebraicReal;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parameter x[{cluster},{index}] is not defined for this pattern")]
    IllegalParameter { cluster: usize, index: usize },
    #[error("parameter x[{cluster},{index}] = {value} exceeds epsilon")]
    ParameterOutOfRange {
        cluster: usize,
        index: usize,
        value: String,
    },
    #[error("real roots of cluster {cluster} leave their window")]
    SeparationViolated { cluster: usize },
    #[error("polynomial of odd degree {0} has an unbounded sublevel component")]
    OddDegree(u32),
    #[error("record is not a root of the stated multiplicity")]
    NotARoot,
    #[error("parse error: {0}")]
    Parse(String),
}
