//! Polarity of boundary points and the strata `∂_j^±`.
//!
//! The combinatorial rule reads polarity off the atom/string decomposition.
//! Its analytic counterpart is the sign of the lowest non-vanishing
//! u-derivative of the model polynomial at the root: an atom is a local
//! minimum of `P` touching zero, so `∂^j P > 0` there and the polarity is
//! `−`; in general the polarity is `+` exactly when `∂^j P < 0`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::omega::{decompose_word, Decomposition, OmegaError, PartKind, Pattern};
use crate::polymodel::{DivisorWord, ModelPolynomial, PolyError};
use crate::reconstruct::StratifiedComplex;
use crate::util::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn symbol(self) -> char {
        match self {
            Polarity::Plus => '+',
            Polarity::Minus => '-',
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolarizedPoint {
    pub multiplicity: u32,
    pub polarity: Polarity,
}

impl fmt::Display for PolarizedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.multiplicity, self.polarity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedWord {
    pub points: Vec<PolarizedPoint>,
    pub decomposition: Decomposition,
}

impl PolarizedWord {
    pub fn multiplicities(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.multiplicity).collect()
    }

    pub fn polarities(&self) -> Vec<Polarity> {
        self.points.iter().map(|p| p.polarity).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl fmt::Display for PolarizedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str("()");
        }
        for p in &self.points {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Polarities by the atom/string rule; the empty word is allowed.
pub fn polarize_word(word: &[u32]) -> Result<PolarizedWord, OmegaError> {
    let decomposition = decompose_word(word)?;
    let mut points = Vec::with_capacity(word.len());
    for part in &decomposition.parts {
        let last = part.len() - 1;
        for (k, &m) in part.entries.iter().enumerate() {
            let polarity = match part.kind {
                PartKind::Atom => Polarity::Minus,
                PartKind::String if k == last => Polarity::Minus,
                PartKind::String => Polarity::Plus,
            };
            points.push(PolarizedPoint {
                multiplicity: m,
                polarity,
            });
        }
    }
    Ok(PolarizedWord { points, decomposition })
}

pub fn polarize(omega: &Pattern) -> Result<PolarizedWord, OmegaError> {
    polarize_word(omega.entries())
}

pub fn polarize_divisor(div: &DivisorWord) -> Result<PolarizedWord, OmegaError> {
    polarize_word(&div.multiplicities())
}

/// Polarities from derivative signs at the real roots of `P`.
pub fn polarity_oracle(model: &ModelPolynomial) -> Result<PolarizedWord, StrataError> {
    let div = model.divisor()?;
    let word = div.multiplicities();
    let decomposition = decompose_word(&word)?;
    let points = div
        .roots
        .iter()
        .map(|root| {
            let s = model.derivative_at_root(root)?;
            Ok(PolarizedPoint {
                multiplicity: root.multiplicity,
                polarity: if s < 0 { Polarity::Plus } else { Polarity::Minus },
            })
        })
        .collect::<Result<Vec<_>, StrataError>>()?;
    Ok(PolarizedWord { points, decomposition })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("boundary cell {0} carries no multiplicity/polarity label")]
    UnlabeledCell(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRow {
    pub j: u32,
    pub polarity: Polarity,
    /// Names of the boundary cells labeled exactly `(j, polarity)`, sorted.
    pub cells: Vec<String>,
    /// Connected components of the closure of those cells.
    pub components: usize,
    /// Number of 0-cells among `cells`.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataTable {
    pub rows: Vec<StratumRow>,
    /// Endpoints of the closure of `∂_1^+` and of `∂_1^−` both equal the `∂_2` points.
    pub boundary_identity: bool,
}

impl StrataTable {
    pub fn row(&self, j: u32, polarity: Polarity) -> Option<&StratumRow> {
        self.rows.iter().find(|r| r.j == j && r.polarity == polarity)
    }

    pub fn components(&self, j: u32, polarity: Polarity) -> usize {
        self.row(j, polarity).map_or(0, |r| r.components)
    }

    pub fn point_count(&self, j: u32, polarity: Polarity) -> usize {
        self.row(j, polarity).map_or(0, |r| r.points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!(
                "d{}{} count={} cells=[{}]\n",
                r.j,
                r.polarity,
                r.components,
                r.cells.join(",")
            ));
        }
        out.push_str(&format!("boundary_identity={}\n", u8::from(self.boundary_identity)));
        out
    }
}

/// Groups the boundary cells of a reconstructed complex by stratum.
///
/// Rows for `j = 1, 2` are always present; deeper rows appear when occupied.
pub fn strata_table(complex: &StratifiedComplex) -> Result<StrataTable, StrataError> {
    let cells = complex.cells();
    let mut by_stratum: BTreeMap<(u32, Polarity), Vec<usize>> = BTreeMap::new();
    for j in 1..=2 {
        by_stratum.insert((j, Polarity::Plus), Vec::new());
        by_stratum.insert((j, Polarity::Minus), Vec::new());
    }
    for (idx, c) in cells.iter().enumerate() {
        if !c.on_boundary {
            continue;
        }
        let label = c.label.ok_or_else(|| StrataError::UnlabeledCell(c.name.clone()))?;
        by_stratum
            .entry((label.multiplicity, label.polarity))
            .or_default()
            .push(idx);
    }

    let mut rows = Vec::new();
    for (&(j, polarity), members) in &by_stratum {
        let mut uf = UnionFind::new(cells.len());
        for &m in members {
            for &(b, _) in &cells[m].boundary {
                uf.union(m, b);
            }
        }
        let mut roots: Vec<usize> = members.iter().map(|&m| uf.find(m)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut names: Vec<String> = members.iter().map(|&m| cells[m].name.clone()).collect();
        names.sort();
        rows.push(StratumRow {
            j,
            polarity,
            cells: names,
            components: roots.len(),
            points: members.iter().filter(|&&m| cells[m].dim == 0).count(),
        });
    }

    let deep: Vec<usize> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.on_boundary && c.dim == 0 && c.label.is_some_and(|l| l.multiplicity >= 2))
        .map(|(i, _)| i)
        .collect();
    let endpoints = |pol: Polarity| -> Vec<usize> {
        let mut degree = vec![0usize; cells.len()];
        for c in cells {
            let is_arc =
                c.on_boundary && c.dim == 1 && c.label.is_some_and(|l| l.multiplicity == 1 && l.polarity == pol);
            if is_arc {
                // edges list tail and head separately, so a loop counts twice
                for &(b, _) in &c.boundary {
                    degree[b] += 1;
                }
            }
        }
        (0..cells.len()).filter(|&v| degree[v] % 2 == 1).collect()
    };
    let boundary_identity = endpoints(Polarity::Plus) == deep && endpoints(Polarity::Minus) == deep;

    Ok(StrataTable {
        rows,
        boundary_identity,
    })
}
