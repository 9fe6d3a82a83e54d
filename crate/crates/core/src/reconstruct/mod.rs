//! Surface reconstruction from fillable `n = 1` atlases: tiles are glued
//! into a cell complex `X`, whose labeled boundary `Y` carries the causality
//! map and whose leaves form the trajectory graph.

mod complex;
mod glue;
mod holography;
pub mod iso;
pub mod tiles;
mod trajectory;

pub use complex::{smith_diagonal, Cell, Homology, StratifiedComplex, WLabel};
pub use glue::glue;
pub use holography::{causality_digraph, check_holography, compare_complexes, HolographyReport};
pub use trajectory::{
    boundary_causality, trajectory_space, BoundaryCausality, LabeledGraph, TCell, TEdge, TVertex, TrajectoryGraph,
};

use std::fmt;

use thiserror::Error;

use crate::atlas::AtlasError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("reconstruction is implemented for n=1 only, got n={0}")]
    NotSurface(u32),
    #[error("atlas is not fillable: {}", .0.join("; "))]
    NotFillable(Vec<String>),
    #[error("no tile for omega={0}")]
    UnsupportedPattern(String),
    #[error("face {0} is not paired")]
    UnpairedFace(String),
    #[error("non-manifold gluing at {0}")]
    NonManifoldGluing(String),
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub chi: i64,
    pub boundary_circles: usize,
    pub b0: usize,
    pub b1: usize,
    pub orientable: bool,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi={} boundary_circles={} b0={} b1={} orientable={}",
            self.chi,
            self.boundary_circles,
            self.b0,
            self.b1,
            u8::from(self.orientable)
        )
    }
}

pub fn invariants(c: &StratifiedComplex) -> Invariants {
    let h = c.homology();
    let y = c.boundary_complex();
    Invariants {
        chi: c.euler_characteristic(),
        boundary_circles: y.components(),
        b0: h.betti.first().copied().unwrap_or(0),
        b1: h.betti.get(1).copied().unwrap_or(0),
        orientable: c.orientable(),
    }
}
