use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::complex::StratifiedComplex;
use super::iso::{isomorphism, ColoredDigraph};
use crate::omega::Pattern;
use crate::util::UnionFind;

/// The causality map of a complex restricted to its boundary cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCausality {
    /// `(cell, image)` pairs over the domain, in cell order.
    pub pairs: Vec<(usize, usize)>,
}

impl BoundaryCausality {
    pub fn image(&self, cell: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == cell).map(|p| p.1)
    }

    pub fn fixed(&self) -> Vec<usize> {
        self.pairs.iter().filter(|p| p.0 == p.1).map(|p| p.0).collect()
    }

    /// Iterates the map from `cell` until it stops or becomes stationary.
    pub fn orbit(&self, cell: usize) -> Vec<usize> {
        let mut out = vec![cell];
        let mut cur = cell;
        while let Some(next) = self.image(cur) {
            if next == cur || out.contains(&next) {
                break;
            }
            out.push(next);
            cur = next;
        }
        out
    }
}

pub fn boundary_causality(c: &StratifiedComplex) -> BoundaryCausality {
    let pairs = c
        .causality()
        .iter()
        .enumerate()
        .filter(|&(i, _)| c.cell(i).on_boundary)
        .filter_map(|(i, s)| s.map(|j| (i, j)))
        .collect();
    BoundaryCausality { pairs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TCell {
    Vertex(usize),
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TVertex {
    pub label: Pattern,
    /// Boundary cells lying over this vertex.
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TEdge {
    pub ends: (usize, usize),
    pub label: Pattern,
    pub cells: Vec<usize>,
}

/// Trajectory space of a reconstructed surface together with the quotient
/// map `Γ` from cells of the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryGraph {
    pub vertices: Vec<TVertex>,
    pub edges: Vec<TEdge>,
    pub gamma: Vec<Option<TCell>>,
}

/// Vertex- and edge-labeled multigraph, loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: Vec<Pattern>,
    pub edges: Vec<(usize, usize, Pattern)>,
}

fn chain_word(c: &StratifiedComplex, members: &[usize]) -> Pattern {
    let step = c.causality();
    let is_image = |m: usize| members.iter().any(|&x| x != m && step[x] == Some(m));
    let start = members.iter().copied().find(|&m| !is_image(m)).unwrap_or(members[0]);
    let mut word = Vec::new();
    let mut cur = start;
    loop {
        word.push(c.cell(cur).label.map_or(0, |l| l.multiplicity));
        match step[cur] {
            Some(next) if next != cur && word.len() <= members.len() => cur = next,
            _ => break,
        }
    }
    Pattern::new(word).expect("boundary labels are positive")
}

pub fn trajectory_space(c: &StratifiedComplex) -> TrajectoryGraph {
    let n = c.len();
    let mut uf = UnionFind::new(n);
    for (i, s) in c.causality().iter().enumerate() {
        if let Some(j) = *s {
            uf.union(i, j);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        if c.cell(i).on_boundary {
            classes.entry(uf.find(i)).or_default().push(i);
        }
    }
    let mut groups: Vec<Vec<usize>> = classes.into_values().collect();
    groups.sort_by_key(|g| g[0]);
    let mut gamma = vec![None; n];
    let mut vertices = Vec::new();
    let mut edge_groups = Vec::new();
    for g in groups {
        match c.cell(g[0]).dim {
            0 => {
                for &m in &g {
                    gamma[m] = Some(TCell::Vertex(vertices.len()));
                }
                vertices.push(TVertex {
                    label: chain_word(c, &g),
                    cells: g,
                });
            }
            _ => edge_groups.push(g),
        }
    }
    let vertex_of = |cell: usize, gamma: &[Option<TCell>]| match gamma[cell] {
        Some(TCell::Vertex(v)) => v,
        _ => unreachable!("edges of the boundary end at boundary vertices"),
    };
    let mut edges = Vec::new();
    for g in edge_groups {
        let bd = &c.cell(g[0]).boundary;
        let ends = (vertex_of(bd[0].0, &gamma), vertex_of(bd[1].0, &gamma));
        for &m in &g {
            gamma[m] = Some(TCell::Edge(edges.len()));
        }
        edges.push(TEdge {
            ends,
            label: chain_word(c, &g),
            cells: g,
        });
    }
    // interior segments of leaves collapse to their vertex
    for i in 0..n {
        let cell = c.cell(i);
        if cell.on_boundary || cell.dim != 1 {
            continue;
        }
        let (t, h) = (cell.boundary[0].0, cell.boundary[1].0);
        if let (Some(TCell::Vertex(a)), Some(TCell::Vertex(b))) = (gamma[t], gamma[h]) {
            if a == b {
                gamma[i] = Some(TCell::Vertex(a));
            }
        }
    }
    TrajectoryGraph { vertices, edges, gamma }
}

impl TrajectoryGraph {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn graph(&self) -> LabeledGraph {
        LabeledGraph {
            vertices: self.vertices.iter().map(|v| v.label.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.ends.0, e.ends.1, e.label.clone()))
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.graph().to_dot()
    }
}

impl LabeledGraph {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.0 == v) + usize::from(e.1 == v))
            .sum()
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.0, e.1);
        }
        uf.classes().1
    }

    /// Suppresses `(1,1)` vertices of degree two, merging their edges.
    /// A cycle of such vertices keeps one vertex with a loop.
    pub fn simplified(&self) -> LabeledGraph {
        let regular: Pattern = "11".parse().expect("literal pattern");
        let mut alive = vec![true; self.vertices.len()];
        let mut edges: Vec<Option<(usize, usize, Pattern)>> = self.edges.iter().cloned().map(Some).collect();
        loop {
            let candidate = (0..self.vertices.len()).find(|&v| {
                if !alive[v] || self.vertices[v] != regular {
                    return false;
                }
                let inc: Vec<&(usize, usize, Pattern)> =
                    edges.iter().flatten().filter(|e| e.0 == v || e.1 == v).collect();
                inc.len() == 2 && inc.iter().all(|e| e.0 != e.1)
            });
            let Some(v) = candidate else { break };
            let idx: Vec<usize> = (0..edges.len())
                .filter(|&i| edges[i].as_ref().is_some_and(|e| e.0 == v || e.1 == v))
                .collect();
            let other = |i: usize| {
                let e = edges[i].as_ref().expect("live edge");
                if e.0 == v {
                    e.1
                } else {
                    e.0
                }
            };
            let (a, b) = (other(idx[0]), other(idx[1]));
            edges[idx[0]] = Some((a, b, regular.clone()));
            edges[idx[1]] = None;
            alive[v] = false;
        }
        let mut index = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, label) in self.vertices.iter().enumerate() {
            if alive[v] {
                index[v] = vertices.len();
                vertices.push(label.clone());
            }
        }
        let edges = edges
            .into_iter()
            .flatten()
            .map(|(a, b, l)| (index[a], index[b], l))
            .collect();
        LabeledGraph { vertices, edges }
    }

    pub fn to_digraph(&self) -> ColoredDigraph {
        let mut g = ColoredDigraph::default();
        for l in &self.vertices {
            g.add_node(format!("v{l}"));
        }
        for (a, b, l) in &self.edges {
            let e = g.add_node(format!("e{l}"));
            g.add_arc(e, *a, 0);
            g.add_arc(e, *b, 0);
        }
        g
    }

    /// Label-preserving vertex bijection, if the graphs are isomorphic.
    pub fn isomorphism(&self, other: &LabeledGraph) -> Option<Vec<usize>> {
        isomorphism(&self.to_digraph(), &other.to_digraph()).map(|m| m[..self.vertices.len()].to_vec())
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph trajectories {\n");
        for (i, l) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{l}\"];");
        }
        for (a, b, l) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b} [label=\"{l}\"];");
        }
        out.push_str("}\n");
        out
    }
}
