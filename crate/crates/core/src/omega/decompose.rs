use std::fmt;

use super::{OmegaError, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartKind {
    /// A single even entry: an isolated point of `{P ≤ 0}`.
    Atom,
    /// Odd first and last entries, even interior: a closed interval of `{P ≤ 0}`.
    String,
}

/// One atom or string of a decomposition, with its position in the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Part {
    pub kind: PartKind,
    pub start: usize,
    pub entries: Vec<u32>,
}

impl Part {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.entries.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn flatten(&self) -> Vec<u32> {
        self.parts.iter().flat_map(|p| p.entries.iter().copied()).collect()
    }

    /// Part index for each entry of the source word.
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            out.extend(std::iter::repeat_n(k, part.len()));
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            let body = part.entries.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
            write!(f, "[{body}]")?;
        }
        Ok(())
    }
}

/// Left-to-right scan splitting a word of multiplicities into atoms and strings.
///
/// Works on bare slices so that empty divisors (all roots complex) decompose
/// to an empty list.
pub fn decompose_word(word: &[u32]) -> Result<Decomposition, OmegaError> {
    let mut parts = Vec::new();
    let mut open: Option<usize> = None;
    for (idx, &m) in word.iter().enumerate() {
        match (open, m % 2 == 1) {
            (None, false) => parts.push(Part {
                kind: PartKind::Atom,
                start: idx,
                entries: vec![m],
            }),
            (None, true) => open = Some(idx),
            (Some(_), false) => {}
            (Some(start), true) => {
                parts.push(Part {
                    kind: PartKind::String,
                    start,
                    entries: word[start..=idx].to_vec(),
                });
                open = None;
            }
        }
    }
    if open.is_some() {
        return Err(OmegaError::OddParity(word.to_vec()));
    }
    Ok(Decomposition { parts })
}

pub fn decompose(omega: &Pattern) -> Result<Decomposition, OmegaError> {
    decompose_word(omega.entries())
}

/// A connected trajectory: a single atom or a single string within the bound.
pub fn is_trajectory_type(omega: &Pattern, n: u32) -> bool {
    omega.reduced_norm() <= n && decompose(omega).map(|d| d.parts.len() == 1).unwrap_or(false)
}
