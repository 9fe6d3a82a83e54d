//! Combinatorial tangency patterns and their degeneration poset.

mod decompose;
mod order;
mod pattern;
mod poset;

pub use decompose::{decompose, decompose_word, is_trajectory_type, Decomposition, Part, PartKind};
pub use order::{is_smoothly_reconstructible, leq, lt, resolves_to};
pub use pattern::Pattern;
pub use poset::{enumerate_poset, export_hasse, PosetView, MAX_POSET_BOUND};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("word {0:?} has an odd number of odd entries and admits no atom/string decomposition")]
    OddParity(Vec<u32>),
    #[error("poset bound {requested} exceeds the supported maximum {max}")]
    BoundExceeded { requested: u32, max: u32 },
}

/// All compositions of every integer in `1..=max_norm`, as patterns.
pub fn patterns_up_to_norm(max_norm: u32) -> Vec<Pattern> {
    fn rec(prefix: &mut Vec<u32>, remaining: u32, out: &mut Vec<Pattern>) {
        if !prefix.is_empty() {
            out.push(Pattern::new(prefix.clone()).expect("positive entries"));
        }
        for m in 1..=remaining {
            prefix.push(m);
            rec(prefix, remaining - m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_norm, &mut out);
    out
}
