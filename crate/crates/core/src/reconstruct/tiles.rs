//! Compact CW models of the three surface blocks.
//!
//! Coordinates: `x` runs across the block, `u` runs up along the fibers.
//! Fiber-boundary faces are vertical edges oriented upward; every 2-cell is
//! traversed counterclockwise.

use crate::omega::Pattern;
use crate::strata::Polarity;

use super::WLabel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileCell {
    pub name: &'static str,
    pub dim: usize,
    pub boundary: Vec<(usize, i64)>,
    /// Set exactly on W-cells.
    pub label: Option<WLabel>,
    /// Causality image within the tile, for cells in the domain of the map.
    pub step: Option<usize>,
}

/// A fiber-boundary side of the tile: its W-points in u-order and one
/// vertical edge per fiber component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileFace {
    pub side: &'static str,
    pub points: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub omega: Pattern,
    pub cells: Vec<TileCell>,
    pub faces: Vec<TileFace>,
}

const fn w(multiplicity: u32, polarity: Polarity) -> Option<WLabel> {
    Some(WLabel { multiplicity, polarity })
}

const PLUS1: Option<WLabel> = w(1, Polarity::Plus);
const MINUS1: Option<WLabel> = w(1, Polarity::Minus);

#[derive(Default)]
struct Builder {
    cells: Vec<TileCell>,
}

impl Builder {
    fn push(&mut self, name: &'static str, dim: usize, boundary: Vec<(usize, i64)>, label: Option<WLabel>) -> usize {
        self.cells.push(TileCell {
            name,
            dim,
            boundary,
            label,
            step: None,
        });
        self.cells.len() - 1
    }

    fn vertex(&mut self, name: &'static str, label: Option<WLabel>) -> usize {
        self.push(name, 0, Vec::new(), label)
    }

    fn edge(&mut self, name: &'static str, tail: usize, head: usize, label: Option<WLabel>) -> usize {
        self.push(name, 1, vec![(tail, -1), (head, 1)], label)
    }

    fn face(&mut self, name: &'static str, edges: &[(usize, i64)]) -> usize {
        self.push(name, 2, edges.to_vec(), None)
    }

    fn step(&mut self, pairs: &[(usize, usize)]) {
        for &(a, b) in pairs {
            self.cells[a].step = Some(b);
        }
    }
}

fn trajectory_tile() -> (Vec<TileCell>, Vec<TileFace>) {
    let mut b = Builder::default();
    let lb = b.vertex("LB", PLUS1);
    let lt = b.vertex("LT", MINUS1);
    let rb = b.vertex("RB", PLUS1);
    let rt = b.vertex("RT", MINUS1);
    let bottom = b.edge("bottom", lb, rb, PLUS1);
    let top = b.edge("top", lt, rt, MINUS1);
    let left = b.edge("left", lb, lt, None);
    let right = b.edge("right", rb, rt, None);
    b.face("disk", &[(bottom, 1), (right, 1), (top, -1), (left, -1)]);
    b.step(&[(lb, lt), (rb, rt), (bottom, top)]);
    let faces = vec![
        TileFace {
            side: "left",
            points: vec![lb, lt],
            edges: vec![left],
        },
        TileFace {
            side: "right",
            points: vec![rb, rt],
            edges: vec![right],
        },
    ];
    (b.cells, faces)
}

fn cap_tile() -> (Vec<TileCell>, Vec<TileFace>) {
    let mut b = Builder::default();
    let lb = b.vertex("LB", PLUS1);
    let lt = b.vertex("LT", MINUS1);
    let v = b.vertex("V", w(2, Polarity::Minus));
    let lower = b.edge("lower", lb, v, PLUS1);
    let upper = b.edge("upper", lt, v, MINUS1);
    let left = b.edge("left", lb, lt, None);
    b.face("disk", &[(lower, 1), (upper, -1), (left, -1)]);
    b.step(&[(lb, lt), (lower, upper), (v, v)]);
    let faces = vec![TileFace {
        side: "left",
        points: vec![lb, lt],
        edges: vec![left],
    }];
    (b.cells, faces)
}

fn bottleneck_tile() -> (Vec<TileCell>, Vec<TileFace>) {
    let mut b = Builder::default();
    let l0b = b.vertex("L0B", PLUS1);
    let l0t = b.vertex("L0T", MINUS1);
    let l1b = b.vertex("L1B", PLUS1);
    let l1t = b.vertex("L1T", MINUS1);
    let rb = b.vertex("RB", PLUS1);
    let rt = b.vertex("RT", MINUS1);
    let v = b.vertex("V", w(2, Polarity::Plus));
    let b0 = b.vertex("B0", PLUS1);
    let t0 = b.vertex("T0", MINUS1);
    let bottom_left = b.edge("bottom_left", l0b, b0, PLUS1);
    let bottom_right = b.edge("bottom_right", b0, rb, PLUS1);
    let top_left = b.edge("top_left", l1t, t0, MINUS1);
    let top_right = b.edge("top_right", t0, rt, MINUS1);
    let notch_lower = b.edge("notch_lower", l0t, v, MINUS1);
    let notch_upper = b.edge("notch_upper", l1b, v, PLUS1);
    let left0 = b.edge("left0", l0b, l0t, None);
    let left1 = b.edge("left1", l1b, l1t, None);
    let right = b.edge("right", rb, rt, None);
    let stem_lower = b.edge("stem_lower", b0, v, None);
    let stem_upper = b.edge("stem_upper", v, t0, None);
    b.face(
        "lower_left",
        &[(bottom_left, 1), (stem_lower, 1), (notch_lower, -1), (left0, -1)],
    );
    b.face(
        "upper_left",
        &[(notch_upper, 1), (stem_upper, 1), (top_left, -1), (left1, -1)],
    );
    b.face(
        "right",
        &[
            (bottom_right, 1),
            (right, 1),
            (top_right, -1),
            (stem_upper, -1),
            (stem_lower, -1),
        ],
    );
    b.step(&[
        (l0b, l0t),
        (l1b, l1t),
        (rb, rt),
        (b0, v),
        (v, t0),
        (bottom_left, notch_lower),
        (notch_upper, top_left),
        (bottom_right, top_right),
    ]);
    let faces = vec![
        TileFace {
            side: "left",
            points: vec![l0b, l0t, l1b, l1t],
            edges: vec![left0, left1],
        },
        TileFace {
            side: "right",
            points: vec![rb, rt],
            edges: vec![right],
        },
    ];
    (b.cells, faces)
}

/// The tile of a surface block, for `ω ∈ {(1,1), (2), (1,2,1)}`.
pub fn tile(omega: &Pattern) -> Option<Tile> {
    let (cells, faces) = match omega.entries() {
        [1, 1] => trajectory_tile(),
        [2] => cap_tile(),
        [1, 2, 1] => bottleneck_tile(),
        _ => return None,
    };
    Some(Tile {
        omega: omega.clone(),
        cells,
        faces,
    })
}

impl Tile {
    pub fn face(&self, side: &str) -> Option<&TileFace> {
        self.faces.iter().find(|f| f.side == side)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }
}
