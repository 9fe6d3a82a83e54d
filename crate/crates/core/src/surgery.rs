//! Boundary connected sum of surface atlases through a 1-handle carrying a
//! flow bottleneck.
//!
//! The base `(1,1)` charts of both summands are removed and replaced by two
//! `(1,2,1)` charts glued along their right faces. The first summand's base
//! strip enters the lower segments of their left faces, the second summand's
//! the upper segments, so the handle joins `s1−` to `s2+` and the flow runs
//! from the first summand into the second.

use std::fmt::Write as _;

use thiserror::Error;

use crate::atlas::{validate_fillable, AtlasDoc, AtlasError, ChartDecl, FaceRef, GlueDecl, Orient, Selection};
use crate::omega::Pattern;
use crate::reconstruct::{
    glue, invariants, trajectory_space, LabeledGraph, ReconstructError, StratifiedComplex, TCell,
};
use crate::strata::{strata_table, Polarity, StrataError, StrataTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("malformed base: {0}")]
    MalformedBase(String),
    #[error("incompatible orientation: {0}")]
    IncompatibleOrientation(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Strata(#[from] StrataError),
}

/// An atlas with a chosen `(1,1)` chart; `s+` lies on its lower W-component
/// and `s−` on its upper one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedAtlas {
    pub doc: AtlasDoc,
    pub base: String,
}

impl BasedAtlas {
    /// Uses `base`, or the document's own `base` line when `None`.
    pub fn new(doc: AtlasDoc, base: Option<&str>) -> Result<Self, SurgeryError> {
        let base = base
            .map(str::to_string)
            .or_else(|| doc.base.clone())
            .ok_or_else(|| SurgeryError::MalformedBase("no base chart given".into()))?;
        if doc.n != 1 {
            return Err(SurgeryError::MalformedBase(format!("dimension n={} is not 1", doc.n)));
        }
        let chart = doc
            .chart(&base)
            .ok_or_else(|| SurgeryError::MalformedBase(format!("unknown chart {base}")))?;
        if chart.omega.entries() != [1, 1] {
            return Err(SurgeryError::MalformedBase(format!(
                "{base} has omega={}, not 11",
                chart.omega
            )));
        }
        if chart.components != Selection::All && chart.components != Selection::List(vec![0, 1]) {
            return Err(SurgeryError::MalformedBase(format!(
                "{base} does not cover both base points"
            )));
        }
        Ok(BasedAtlas { doc, base })
    }

    /// W-component of the base chart holding `s+` and `s−`.
    pub fn base_points(&self) -> (usize, usize) {
        (0, 1)
    }
}

const LEFT_HANDLE: &str = "hL";
const RIGHT_HANDLE: &str = "hR";

fn prefixed(prefix: &str, r: &FaceRef) -> FaceRef {
    FaceRef {
        chart: format!("{prefix}{}", r.chart),
        ..r.clone()
    }
}

/// Where a face of the removed base chart is reattached, and whether the
/// side changes.
fn rewire(r: &FaceRef, base: &str, segment: usize) -> Option<(FaceRef, bool)> {
    if r.chart != base {
        return None;
    }
    let (chart, flips) = match r.face.as_str() {
        "left" => (LEFT_HANDLE, false),
        _ => (RIGHT_HANDLE, true),
    };
    Some((
        FaceRef {
            chart: chart.to_string(),
            face: "left".into(),
            segment: Some(segment),
        },
        flips,
    ))
}

pub fn connected_sum(a1: &BasedAtlas, a2: &BasedAtlas) -> Result<AtlasDoc, SurgeryError> {
    for (i, a) in [a1, a2].iter().enumerate() {
        let r = validate_fillable(&a.doc)?;
        if !r.passed() {
            return Err(SurgeryError::MalformedBase(format!(
                "summand {} is not fillable",
                i + 1
            )));
        }
    }
    let handle: Pattern = "121".parse().expect("literal pattern");
    let mut charts = Vec::new();
    let mut glues = Vec::new();
    for (prefix, a) in [("a1_", a1), ("a2_", a2)] {
        for c in a.doc.charts.iter().filter(|c| c.id != a.base) {
            charts.push(ChartDecl {
                id: format!("{prefix}{}", c.id),
                ..c.clone()
            });
        }
    }
    for id in [LEFT_HANDLE, RIGHT_HANDLE] {
        charts.push(ChartDecl {
            id: id.to_string(),
            omega: handle.clone(),
            components: Selection::All,
        });
    }
    for (segment, (prefix, a)) in [("a1_", a1), ("a2_", a2)].into_iter().enumerate() {
        for g in &a.doc.glues {
            let mut out = g.clone();
            let mut flips = 0;
            match rewire(&g.a, &a.base, segment) {
                Some((r, f)) => {
                    out.a = r;
                    flips += usize::from(f);
                }
                None => out.a = prefixed(prefix, &g.a),
            }
            match rewire(&g.b, &a.base, segment) {
                Some((r, f)) => {
                    out.b = r;
                    flips += usize::from(f);
                }
                None => out.b = prefixed(prefix, &g.b),
            }
            if flips % 2 == 1 {
                out.orient = out.orient.flipped();
            }
            glues.push(out);
        }
    }
    glues.push(GlueDecl {
        a: FaceRef {
            chart: LEFT_HANDLE.into(),
            face: "right".into(),
            segment: None,
        },
        b: FaceRef {
            chart: RIGHT_HANDLE.into(),
            face: "right".into(),
            segment: None,
        },
        points: vec![0, 1],
        components: vec![0],
        orient: Orient::Reversing,
        filled: true,
    });
    let oriented = a1.doc.oriented && a2.doc.oriented;
    let sum = AtlasDoc {
        n: 1,
        oriented,
        charts,
        glues,
        base: None,
        level: a1.doc.level.max(a2.doc.level),
    };
    let report = validate_fillable(&sum)?;
    if !report.passed() {
        return Err(SurgeryError::IncompatibleOrientation(
            report
                .violations
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: i64,
    pub actual: i64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl SurgeryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} status={}\n",
            self.title,
            if self.passed() { "pass" } else { "fail" }
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} expected={} actual={} {}",
                c.name,
                c.expected,
                c.actual,
                if c.passed() { "pass" } else { "fail" }
            );
        }
        out
    }
}

fn check(name: &str, expected: i64, actual: i64) -> Check {
    Check {
        name: name.into(),
        expected,
        actual,
    }
}

/// Whether the boundary stratum component through `cell` is an arc, i.e.
/// has endpoints, rather than a circle.
fn component_is_arc(x: &StratifiedComplex, cell: usize) -> bool {
    let label = x.cell(cell).label;
    let cells = x.cells();
    let mut uf = crate::util::UnionFind::new(cells.len());
    let same: Vec<usize> = (0..cells.len())
        .filter(|&i| cells[i].dim == 1 && cells[i].on_boundary && cells[i].label == label)
        .collect();
    for &e in &same {
        for &(v, _) in &cells[e].boundary {
            uf.union(e, v);
        }
    }
    let root = uf.find(cell);
    let mut degree = vec![0usize; cells.len()];
    for &e in &same {
        if uf.find(e) == root {
            for &(v, _) in &cells[e].boundary {
                degree[v] += 1;
            }
        }
    }
    degree.iter().any(|&d| d % 2 == 1)
}

fn base_cell(x: &StratifiedComplex, base: &str, which: &str) -> Result<usize, SurgeryError> {
    x.find(&format!("{base}.{which}"))
        .ok_or_else(|| SurgeryError::MalformedBase(format!("{base}.{which} is not a cell of the glued surface")))
}

fn table(x: &StratifiedComplex) -> Result<StrataTable, SurgeryError> {
    Ok(strata_table(x)?)
}

pub fn verify_strata_formulas(a1: &BasedAtlas, a2: &BasedAtlas, sum: &AtlasDoc) -> Result<SurgeryReport, SurgeryError> {
    let (x1, x2, xs) = (glue(&a1.doc)?, glue(&a2.doc)?, glue(sum)?);
    let (t1, t2, ts) = (table(&x1)?, table(&x2)?, table(&xs)?);
    let cut_minus = i64::from(component_is_arc(&x1, base_cell(&x1, &a1.base, "top")?));
    let cut_plus = i64::from(component_is_arc(&x2, base_cell(&x2, &a2.base, "bottom")?));
    let comps = |t: &StrataTable, pol| t.components(1, pol) as i64;
    let points = |t: &StrataTable, pol| t.point_count(2, pol) as i64;
    let (i1, i2, is) = (invariants(&x1), invariants(&x2), invariants(&xs));
    let checks = vec![
        check(
            "d1+_components",
            comps(&t1, Polarity::Plus) + comps(&t2, Polarity::Plus) + cut_plus,
            comps(&ts, Polarity::Plus),
        ),
        check(
            "d1-_components",
            comps(&t1, Polarity::Minus) + comps(&t2, Polarity::Minus) + cut_minus,
            comps(&ts, Polarity::Minus),
        ),
        check(
            "d2-_points",
            points(&t1, Polarity::Minus) + points(&t2, Polarity::Minus),
            points(&ts, Polarity::Minus),
        ),
        check(
            "d2+_points",
            points(&t1, Polarity::Plus) + points(&t2, Polarity::Plus) + 2,
            points(&ts, Polarity::Plus),
        ),
        check("chi", i1.chi + i2.chi - 1, is.chi),
        check(
            "boundary_circles",
            i1.boundary_circles as i64 + i2.boundary_circles as i64 - 1,
            is.boundary_circles as i64,
        ),
    ];
    Ok(SurgeryReport {
        title: "strata_formulas".into(),
        checks,
    })
}

/// Disjoint union of two graphs with edge `e1` of the first and `e2` of the
/// second each cut twice and their middle pieces identified.
pub fn glue_along_edges(g1: &LabeledGraph, e1: usize, g2: &LabeledGraph, e2: usize) -> LabeledGraph {
    let shift = g1.vertices.len();
    let mut vertices: Vec<Pattern> = g1.vertices.iter().chain(&g2.vertices).cloned().collect();
    let mut edges = Vec::new();
    for (i, e) in g1.edges.iter().enumerate() {
        if i != e1 {
            edges.push(e.clone());
        }
    }
    for (i, e) in g2.edges.iter().enumerate() {
        if i != e2 {
            edges.push((e.0 + shift, e.1 + shift, e.2.clone()));
        }
    }
    let neck: Pattern = "121".parse().expect("literal pattern");
    let p = vertices.len();
    vertices.push(neck.clone());
    let q = vertices.len();
    vertices.push(neck);
    let (x1, y1, l1) = g1.edges[e1].clone();
    let (x2, y2, l2) = g2.edges[e2].clone();
    edges.push((x1, p, l1.clone()));
    edges.push((x2 + shift, p, l2.clone()));
    edges.push((p, q, l1.clone()));
    edges.push((q, y1, l1));
    edges.push((q, y2 + shift, l2));
    LabeledGraph { vertices, edges }
}

fn base_edge(x: &StratifiedComplex, base: &str) -> Result<usize, SurgeryError> {
    let cell = base_cell(x, base, "bottom")?;
    match trajectory_space(x).gamma[cell] {
        Some(TCell::Edge(e)) => Ok(e),
        _ => Err(SurgeryError::MalformedBase(format!(
            "{base} does not lie over an edge of the trajectory graph"
        ))),
    }
}

pub fn verify_trajectory_gluing(
    a1: &BasedAtlas,
    a2: &BasedAtlas,
    sum: &AtlasDoc,
) -> Result<SurgeryReport, SurgeryError> {
    let (x1, x2, xs) = (glue(&a1.doc)?, glue(&a2.doc)?, glue(sum)?);
    let (g1, g2, gs) = (
        trajectory_space(&x1).graph(),
        trajectory_space(&x2).graph(),
        trajectory_space(&xs).graph(),
    );
    let (e1, e2) = (base_edge(&x1, &a1.base)?, base_edge(&x2, &a2.base)?);
    let expected = glue_along_edges(&g1, e1, &g2, e2);
    let simple = gs.simplified();
    let iso = expected.simplified().isomorphism(&simple).is_some();
    let regular: Pattern = "11".parse().expect("literal pattern");
    let handle_edges = simple
        .edges
        .iter()
        .filter(|e| simple.vertices[e.0].entries() == [1, 2, 1] && simple.vertices[e.1].entries() == [1, 2, 1])
        .collect::<Vec<_>>();
    let checks = vec![
        check("isomorphic", 1, i64::from(iso)),
        check(
            "chi_T",
            g1.euler_characteristic() + g2.euler_characteristic() - 1,
            gs.euler_characteristic(),
        ),
        check(
            "handle_edge_label_11",
            1,
            i64::from(!handle_edges.is_empty() && handle_edges.iter().all(|e| e.2 == regular)),
        ),
    ];
    Ok(SurgeryReport {
        title: "trajectory_gluing".into(),
        checks,
    })
}
