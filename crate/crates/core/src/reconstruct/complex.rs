use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::strata::Polarity;
use crate::util::UnionFind;

/// Multiplicity and polarity of a boundary cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WLabel {
    pub multiplicity: u32,
    pub polarity: Polarity,
}

impl fmt::Display for WLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.multiplicity, self.polarity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    /// Signed incidences. An edge always lists `(tail, -1), (head, +1)`,
    /// so a loop carries two entries that cancel.
    pub boundary: Vec<(usize, i64)>,
    pub on_boundary: bool,
    pub label: Option<WLabel>,
}

/// Finite CW complex with boundary labels and a cell-level causality map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedComplex {
    cells: Vec<Cell>,
    step: Vec<Option<usize>>,
    orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<BigInt>>,
}

impl StratifiedComplex {
    pub fn new(cells: Vec<Cell>, step: Vec<Option<usize>>, orientable: bool) -> Self {
        assert_eq!(cells.len(), step.len());
        StratifiedComplex {
            cells,
            step,
            orientable,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new(), true)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// Causality image of each cell; `None` off the domain.
    pub fn causality(&self) -> &[Option<usize>] {
        &self.step
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells.iter().filter(|c| c.dim == dim).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// `∂∂ = 0` and every boundary entry points one dimension down.
    pub fn is_valid(&self) -> bool {
        for c in &self.cells {
            if c.boundary
                .iter()
                .any(|&(b, _)| b >= self.cells.len() || self.cells[b].dim + 1 != c.dim)
            {
                return false;
            }
            let mut acc = vec![0i64; self.cells.len()];
            for &(b, s) in &c.boundary {
                for &(v, r) in &self.cells[b].boundary {
                    acc[v] += s * r;
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }

    /// Connected components, counted through boundary incidences.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.cells.len());
        for (i, c) in self.cells.iter().enumerate() {
            for &(b, _) in &c.boundary {
                uf.union(i, b);
            }
        }
        uf.classes().1
    }

    /// The subcomplex of labeled boundary cells, with the causality map
    /// carried along.
    pub fn boundary_complex(&self) -> StratifiedComplex {
        let keep: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].on_boundary).collect();
        let mut index = vec![usize::MAX; self.cells.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let cells = keep
            .iter()
            .map(|&i| {
                let c = &self.cells[i];
                Cell {
                    boundary: c.boundary.iter().map(|&(b, s)| (index[b], s)).collect(),
                    ..c.clone()
                }
            })
            .collect();
        let step = keep
            .iter()
            .map(|&i| self.step[i].map(|j| index[j]).filter(|&j| j != usize::MAX))
            .collect();
        StratifiedComplex::new(cells, step, true)
    }

    fn boundary_matrix(&self, dim: usize) -> Vec<Vec<BigInt>> {
        let rows: Vec<usize> = (0..self.cells.len())
            .filter(|&i| self.cells[i].dim + 1 == dim)
            .collect();
        let cols: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].dim == dim).collect();
        let mut row_of = vec![usize::MAX; self.cells.len()];
        for (r, &i) in rows.iter().enumerate() {
            row_of[i] = r;
        }
        let mut m = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        for (c, &j) in cols.iter().enumerate() {
            for &(b, s) in &self.cells[j].boundary {
                m[row_of[b]][c] += s;
            }
        }
        m
    }

    /// Integral homology through Smith normal forms of the boundary maps.
    pub fn homology(&self) -> Homology {
        let top = self.max_dim();
        let mut rank = vec![0usize; top + 2];
        let mut factors = vec![Vec::new(); top + 2];
        for d in 1..=top {
            let diag = smith_diagonal(self.boundary_matrix(d));
            rank[d] = diag.len();
            factors[d - 1] = diag.into_iter().filter(|x| !x.is_one()).collect();
        }
        let betti = (0..=top).map(|d| self.count(d) - rank[d] - rank[d + 1]).collect();
        factors.truncate(top + 1);
        Homology {
            betti,
            torsion: factors,
        }
    }

    pub fn betti(&self, d: usize) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.homology().betti.get(d).copied().unwrap_or(0)
    }

    pub fn to_incidence_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.cells.iter().enumerate() {
            let label = c.label.map_or("-".to_string(), |l| l.to_string());
            let bd: Vec<String> = c.boundary.iter().map(|&(b, s)| format!("{b}:{s:+}")).collect();
            let _ = write!(
                out,
                "cell {i} {} dim={} label={label} boundary=[{}]",
                c.name,
                c.dim,
                bd.join(" ")
            );
            if let Some(j) = self.step[i] {
                let _ = write!(out, " step={j}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph complex {\n");
        for (i, c) in self.cells.iter().enumerate() {
            let shape = ["point", "box", "ellipse"][c.dim.min(2)];
            let label = c.label.map_or(String::new(), |l| format!("\\n{l}"));
            let _ = writeln!(out, "  c{i} [label=\"{}{label}\" shape={shape}];", c.name);
        }
        for (i, c) in self.cells.iter().enumerate() {
            for &(b, s) in &c.boundary {
                let _ = writeln!(out, "  c{i} -> c{b} [label=\"{s:+}\"];");
            }
        }
        for (i, s) in self.step.iter().enumerate() {
            if let Some(j) = s {
                let _ = writeln!(out, "  c{i} -> c{j} [style=dashed color=blue];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nonzero diagonal of the Smith normal form.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry as pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let d = &q * &m[t][j];
                m[i][j] -= d;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in t..rows {
                let d = &q * &m[i][t];
                m[i][j] -= d;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let pivot = m[t][t].clone();
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&pivot)));
        if let Some(i) = bad {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        diag.push(pivot.abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn smith_forms() {
        assert_eq!(
            smith_diagonal(big(&[&[2, 4], &[6, 8]])),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(
            smith_diagonal(big(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(smith_diagonal(big(&[&[0, 0], &[0, 0]])), Vec::<BigInt>::new());
        assert_eq!(smith_diagonal(Vec::new()), Vec::<BigInt>::new());
    }

    fn edge(name: &str, t: usize, h: usize) -> Cell {
        Cell {
            name: name.into(),
            dim: 1,
            boundary: vec![(t, -1), (h, 1)],
            on_boundary: false,
            label: None,
        }
    }

    fn vertex(name: &str) -> Cell {
        Cell {
            name: name.into(),
            dim: 0,
            boundary: Vec::new(),
            on_boundary: false,
            label: None,
        }
    }

    #[test]
    fn projective_plane_has_torsion() {
        // one vertex, one edge a, one face with boundary 2a
        let face = Cell {
            name: "f".into(),
            dim: 2,
            boundary: vec![(1, 1), (1, 1)],
            on_boundary: false,
            label: None,
        };
        let c = StratifiedComplex::new(vec![vertex("v"), edge("a", 0, 0), face], vec![None; 3], false);
        assert!(c.is_valid());
        let h = c.homology();
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn circle() {
        let c = StratifiedComplex::new(
            vec![vertex("p"), vertex("q"), edge("a", 0, 1), edge("b", 1, 0)],
            vec![None; 4],
            true,
        );
        assert_eq!(c.homology().betti, vec![1, 1]);
        assert_eq!(c.components(), 1);
        assert_eq!(StratifiedComplex::empty().euler_characteristic(), 0);
        assert_eq!(StratifiedComplex::empty().betti(0), 0);
    }
}
