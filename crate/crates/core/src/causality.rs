//! The causality map on a single fiber word: each boundary point is sent to
//! the next point of its string, atoms and string upper ends stay put.

use std::fmt::Write as _;

use thiserror::Error;

use crate::omega::{OmegaError, PartKind, Pattern};
use crate::strata::{polarize_word, Polarity, PolarizedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CausalityError {
    #[error("index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberWord {
    word: PolarizedWord,
    component_of: Vec<usize>,
}

/// Fixed points of the causality map, split into genuine fixed points (atoms)
/// and string upper ends, which only lie in the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    pub fixed: Vec<usize>,
    pub codomain: Vec<usize>,
}

impl FiberWord {
    pub fn new(word: PolarizedWord) -> Self {
        let component_of = word.decomposition.component_of();
        FiberWord { word, component_of }
    }

    pub fn from_multiplicities(word: &[u32]) -> Result<Self, CausalityError> {
        Ok(Self::new(polarize_word(word)?))
    }

    pub fn from_pattern(omega: &Pattern) -> Result<Self, CausalityError> {
        Self::from_multiplicities(omega.entries())
    }

    pub fn polarized(&self) -> &PolarizedWord {
        &self.word
    }

    pub fn component_of(&self) -> &[usize] {
        &self.component_of
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn check(&self, idx: usize) -> Result<(), CausalityError> {
        if idx < self.len() {
            Ok(())
        } else {
            Err(CausalityError::IndexOutOfRange {
                index: idx,
                len: self.len(),
            })
        }
    }

    /// Next point of the same string, or `idx` itself at a string's upper
    /// end and at atoms.
    pub fn causality_step(&self, idx: usize) -> Result<usize, CausalityError> {
        self.check(idx)?;
        let next = idx + 1;
        if next < self.len() && self.component_of[next] == self.component_of[idx] {
            Ok(next)
        } else {
            Ok(idx)
        }
    }

    pub fn orbit(&self, idx: usize) -> Result<Vec<usize>, CausalityError> {
        let mut out = vec![idx];
        let mut cur = idx;
        loop {
            let next = self.causality_step(cur)?;
            if next == cur {
                return Ok(out);
            }
            out.push(next);
            cur = next;
        }
    }

    pub fn fixed_points(&self) -> FixedPoints {
        let mut fixed = Vec::new();
        let mut codomain = Vec::new();
        for part in &self.word.decomposition.parts {
            match part.kind {
                PartKind::Atom => fixed.push(part.start),
                PartKind::String => codomain.push(part.start + part.len() - 1),
            }
        }
        FixedPoints { fixed, codomain }
    }

    /// Orbit closures: one class per atom or string.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        self.word
            .decomposition
            .parts
            .iter()
            .map(|p| p.indices().collect())
            .collect()
    }

    pub fn is_in_domain(&self, idx: usize) -> bool {
        let p = self.word.points[idx];
        p.polarity == Polarity::Plus || p.multiplicity >= 2
    }
}

pub fn render_indices(indices: &[usize]) -> String {
    let body: Vec<String> = indices.iter().map(usize::to_string).collect();
    format!("[{}]", body.join(" "))
}

/// Step and orbit of every point, followed by the fixed points and classes.
pub fn report(word: &FiberWord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "word {}", word.polarized());
    for idx in 0..word.len() {
        let step = word.causality_step(idx).expect("index in range");
        let orbit = word.orbit(idx).expect("index in range");
        let _ = writeln!(out, "C({idx})={step} orbit={}", render_indices(&orbit));
    }
    let fp = word.fixed_points();
    let _ = writeln!(out, "fixed={}", render_indices(&fp.fixed));
    let _ = writeln!(out, "codomain={}", render_indices(&fp.codomain));
    let classes: String = word.equivalence_classes().iter().map(|c| render_indices(c)).collect();
    let _ = writeln!(out, "classes={classes}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(s: &str) -> FiberWord {
        FiberWord::from_pattern(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn steps() {
        let w = fw("121");
        assert_eq!(
            (0..3).map(|i| w.causality_step(i).unwrap()).collect::<Vec<_>>(),
            vec![1, 2, 2]
        );
        assert_eq!(fw("2").causality_step(0).unwrap(), 0);
        assert_eq!(fw("11").causality_step(0).unwrap(), 1);
        assert!(matches!(
            w.causality_step(3),
            Err(CausalityError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn orbits() {
        assert_eq!(fw("1221").orbit(0).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(fw("2").orbit(0).unwrap(), vec![0]);
        assert_eq!(fw("31").orbit(0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn fixed_and_classes() {
        assert_eq!(fw("2327").fixed_points().fixed, vec![0]);
        assert!(fw("11").fixed_points().fixed.is_empty());
        assert!(fw("141").fixed_points().fixed.is_empty());
        let sizes: Vec<usize> = fw("23274542314641")
            .equivalence_classes()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(sizes, vec![1, 3, 1, 4, 5]);
        assert_eq!(fw("11").equivalence_classes().len(), 1);
        assert_eq!(fw("2").equivalence_classes().len(), 1);
    }

    #[test]
    fn rendering() {
        let text = report(&fw("121"));
        assert!(text.contains("C(0)=1 orbit=[0 1 2]"));
        assert!(text.contains("fixed=[]"));
        assert!(text.contains("codomain=[2]"));
        assert!(text.ends_with("classes=[0 1 2]\n"));
    }
}
