use std::fmt::Write as _;

use super::complex::StratifiedComplex;
use super::glue::glue;
use super::iso::{isomorphism, ColoredDigraph};
use super::trajectory::trajectory_space;
use super::{ReconstructError, WLabel};
use crate::atlas::AtlasDoc;
use crate::strata::Polarity;

/// `(Y, C)` as plain incidence data, small enough to normalize in place.
#[derive(Debug, Clone)]
struct CausalData {
    alive: Vec<bool>,
    dim: Vec<usize>,
    label: Vec<Option<WLabel>>,
    ends: Vec<Option<(usize, usize)>>,
    step: Vec<Option<usize>>,
}

impl CausalData {
    fn new(y: &StratifiedComplex) -> Self {
        let cells = y.cells();
        CausalData {
            alive: vec![true; cells.len()],
            dim: cells.iter().map(|c| c.dim).collect(),
            label: cells.iter().map(|c| c.label).collect(),
            ends: cells
                .iter()
                .map(|c| (c.dim == 1).then(|| (c.boundary[0].0, c.boundary[1].0)))
                .collect(),
            step: y.causality().to_vec(),
        }
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (e, ends) in self.ends.iter().enumerate() {
            if let (true, Some((a, b))) = (self.alive[e], ends) {
                if *a == v {
                    out.push(e);
                }
                if *b == v {
                    out.push(e);
                }
            }
        }
        out
    }

    fn far_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e].expect("edge");
        if a == v {
            b
        } else {
            a
        }
    }

    fn has_preimage(&self, x: usize, except: usize) -> bool {
        (0..self.step.len()).any(|i| self.alive[i] && i != except && i != x && self.step[i] == Some(x))
    }

    /// Removes a regular `(1,+) ↦ (1,−)` vertex pair sitting in the interior
    /// of an arc that the map carries onto an arc.
    fn suppress_one(&mut self) -> bool {
        let plus = Some(WLabel {
            multiplicity: 1,
            polarity: Polarity::Plus,
        });
        let minus = Some(WLabel {
            multiplicity: 1,
            polarity: Polarity::Minus,
        });
        for v in 0..self.alive.len() {
            if !self.alive[v] || self.dim[v] != 0 || self.label[v] != plus {
                continue;
            }
            let Some(w) = self.step[v] else { continue };
            if w == v || self.label[w] != minus || self.step[w].is_some() {
                continue;
            }
            let (ev, ew) = (self.incident(v), self.incident(w));
            if ev.len() != 2 || ew.len() != 2 || ev[0] == ev[1] || ew[0] == ew[1] {
                continue;
            }
            let images: Vec<Option<usize>> = ev.iter().map(|&e| self.step[e]).collect();
            let onto = (images[0] == Some(ew[0]) && images[1] == Some(ew[1]))
                || (images[0] == Some(ew[1]) && images[1] == Some(ew[0]));
            if !onto
                || self.label[ev[0]] != self.label[ev[1]]
                || self.label[ew[0]] != self.label[ew[1]]
                || self.has_preimage(v, usize::MAX)
                || self.has_preimage(w, v)
            {
                continue;
            }
            let (e1, e2) = (ev[0], ev[1]);
            let f1 = self.step[e1].expect("checked above");
            let f2 = self.step[e2].expect("checked above");
            self.ends[e1] = Some((self.far_end(e1, v), self.far_end(e2, v)));
            self.ends[f1] = Some((self.far_end(f1, w), self.far_end(f2, w)));
            for x in [v, w, e2, f2] {
                self.alive[x] = false;
            }
            return true;
        }
        false
    }

    fn digraph(&self) -> ColoredDigraph {
        let mut g = ColoredDigraph::default();
        let mut index = vec![usize::MAX; self.alive.len()];
        for i in 0..self.alive.len() {
            if self.alive[i] {
                let label = self.label[i].map_or("-".to_string(), |l| l.to_string());
                index[i] = g.add_node(format!("{}{label}", self.dim[i]));
            }
        }
        for i in 0..self.alive.len() {
            if !self.alive[i] {
                continue;
            }
            if let Some((a, b)) = self.ends[i] {
                g.add_arc(index[i], index[a], 0);
                g.add_arc(index[i], index[b], 0);
            }
            if let Some(s) = self.step[i] {
                g.add_arc(index[i], index[s], 1);
            }
        }
        g
    }
}

/// `(Y, C)` with regular subdivision points removed, as a coloured digraph.
pub fn causality_digraph(c: &StratifiedComplex) -> ColoredDigraph {
    let mut data = CausalData::new(&c.boundary_complex());
    while data.suppress_one() {}
    data.digraph()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolographyReport {
    pub causality_isomorphic: bool,
    pub trajectory_isomorphic: bool,
    /// Vertex correspondence of the simplified trajectory graphs.
    pub witness: Vec<(String, String)>,
}

impl HolographyReport {
    /// Isomorphic causality data must give isomorphic trajectory spaces.
    pub fn consistent(&self) -> bool {
        !self.causality_isomorphic || self.trajectory_isomorphic
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "causality_isomorphic={} trajectory_isomorphic={} consistent={}\n",
            u8::from(self.causality_isomorphic),
            u8::from(self.trajectory_isomorphic),
            u8::from(self.consistent())
        );
        for (a, b) in &self.witness {
            let _ = writeln!(out, "witness {a} -> {b}");
        }
        out
    }
}

pub fn compare_complexes(c1: &StratifiedComplex, c2: &StratifiedComplex) -> HolographyReport {
    let causality_isomorphic = isomorphism(&causality_digraph(c1), &causality_digraph(c2)).is_some();
    let (t1, t2) = (
        trajectory_space(c1).graph().simplified(),
        trajectory_space(c2).graph().simplified(),
    );
    let map = t1.isomorphism(&t2);
    let witness = map
        .as_ref()
        .map(|m| {
            m.iter()
                .enumerate()
                .map(|(i, &j)| {
                    (
                        format!("v{i}{}", paren(&t1.vertices[i])),
                        format!("v{j}{}", paren(&t2.vertices[j])),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    HolographyReport {
        causality_isomorphic,
        trajectory_isomorphic: map.is_some(),
        witness,
    }
}

fn paren(p: &crate::omega::Pattern) -> String {
    format!("({})", p.to_list_string())
}

pub fn check_holography(a1: &AtlasDoc, a2: &AtlasDoc) -> Result<HolographyReport, ReconstructError> {
    Ok(compare_complexes(&glue(a1)?, &glue(a2)?))
}
