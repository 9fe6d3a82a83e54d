use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::doc::{AtlasDoc, GlueDecl, Level, Orient, Selection};
use super::faces::{ChartShape, FaceSelection};
use super::AtlasError;
use crate::util::ParityUnionFind;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    IllegalPattern,
    BadSelection,
    UnknownFace,
    SelfPairing,
    FaceReused,
    ComponentMap,
    PointMap,
    OrderViolation,
    MultiplicityMismatch,
    SelectionMismatch,
    OrientMismatch,
    NotOrientable,
    NotHolographic,
    Unfilled,
    NotSaturated,
    SignViolation,
    CocycleViolation { triple: [String; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::CocycleViolation { triple } => {
                write!(
                    f,
                    "CocycleViolation ({},{},{}): {}",
                    triple[0], triple[1], triple[2], self.detail
                )
            }
            k => write!(f, "{k:?}: {}", self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub level: Level,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, pred: impl Fn(&ViolationKind) -> bool) -> bool {
        self.violations.iter().any(|v| pred(&v.kind))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "level={} status={}\n",
            self.level,
            if self.passed() { "pass" } else { "fail" }
        );
        for v in &self.violations {
            out.push_str(&format!("violation {v}\n"));
        }
        out
    }
}

/// A face point as `(chart index, face index, point index)`.
type Site = (usize, usize, usize);

struct Resolved {
    glue: usize,
    ends: [(usize, FaceSelection); 2],
}

struct Analysis<'a> {
    doc: &'a AtlasDoc,
    shapes: Vec<Option<ChartShape>>,
    selected: Vec<BTreeSet<usize>>,
    resolved: Vec<Resolved>,
    violations: Vec<Violation>,
}

fn violation(kind: ViolationKind, detail: impl Into<String>) -> Violation {
    Violation {
        kind,
        detail: detail.into(),
    }
}

fn is_bijection(p: &[usize], n: usize) -> bool {
    p.len() == n && p.iter().copied().collect::<BTreeSet<_>>() == (0..n).collect()
}

impl<'a> Analysis<'a> {
    fn new(doc: &'a AtlasDoc) -> Result<Self, AtlasError> {
        doc.check_references()?;
        let index: BTreeMap<&str, usize> = doc.charts.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let mut violations = Vec::new();
        let mut shapes = Vec::new();
        let mut selected = Vec::new();
        for c in &doc.charts {
            match ChartShape::new(&c.omega, doc.n) {
                Ok(s) => {
                    let total = s.w_components;
                    let sel: BTreeSet<usize> = match &c.components {
                        Selection::All => (0..total).collect(),
                        Selection::List(v) => {
                            let set: BTreeSet<usize> = v.iter().copied().collect();
                            if v.is_empty() || set.len() != v.len() || set.iter().any(|&k| k >= total) {
                                violations.push(violation(
                                    ViolationKind::BadSelection,
                                    format!("chart {} selects {} of {total} components", c.id, c.components),
                                ));
                            }
                            set.into_iter().filter(|&k| k < total).collect()
                        }
                    };
                    shapes.push(Some(s));
                    selected.push(sel);
                }
                Err(AtlasError::IllegalPattern { .. }) => {
                    violations.push(violation(
                        ViolationKind::IllegalPattern,
                        format!(
                            "chart {} has omega={} which is not a trajectory type with reduced norm <= {}",
                            c.id, c.omega, doc.n
                        ),
                    ));
                    shapes.push(None);
                    selected.push(BTreeSet::new());
                }
                Err(e) => return Err(e),
            }
        }
        let mut resolved = Vec::new();
        for (gi, g) in doc.glues.iter().enumerate() {
            let ca = index[g.a.chart.as_str()];
            let cb = index[g.b.chart.as_str()];
            let (Some(sa), Some(sb)) = (&shapes[ca], &shapes[cb]) else {
                continue;
            };
            match (sa.select(&g.a), sb.select(&g.b)) {
                (Ok(a), Ok(b)) => resolved.push(Resolved {
                    glue: gi,
                    ends: [(ca, a), (cb, b)],
                }),
                (Err(e), _) | (_, Err(e)) => {
                    violations.push(violation(ViolationKind::UnknownFace, e.to_string()));
                }
            }
        }
        Ok(Analysis {
            doc,
            shapes,
            selected,
            resolved,
            violations,
        })
    }

    fn shape(&self, chart: usize) -> &ChartShape {
        self.shapes[chart]
            .as_ref()
            .expect("resolved glues only touch legal charts")
    }

    fn is_selected(&self, site: Site) -> bool {
        let (c, f, p) = site;
        self.selected[c].contains(&(self.shape(c).faces[f].points[p].cluster - 1))
    }

    fn check_proto(&mut self) {
        let mut used: BTreeMap<Site, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for r in &self.resolved {
            let g = &self.doc.glues[r.glue];
            let label = g.label();
            let [(ca, sa), (cb, sb)] = &r.ends;
            let (ca, cb) = (*ca, *cb);
            for (c, s) in [(ca, sa), (cb, sb)] {
                for &p in &s.points {
                    if let Some(prev) = used.insert((c, s.face, p), r.glue) {
                        let kind = if prev == r.glue {
                            ViolationKind::SelfPairing
                        } else {
                            ViolationKind::FaceReused
                        };
                        out.push(violation(
                            kind,
                            format!("{label} reuses a point of {}", self.doc.charts[c].id),
                        ));
                        break;
                    }
                }
            }
            if !is_bijection(&g.components, sa.components.len()) || sa.components.len() != sb.components.len() {
                out.push(violation(
                    ViolationKind::ComponentMap,
                    format!("{label}: components map is not a bijection"),
                ));
                continue;
            }
            if !is_bijection(&g.points, sa.points.len()) || sa.points.len() != sb.points.len() {
                out.push(violation(
                    ViolationKind::PointMap,
                    format!("{label}: points map is not a bijection"),
                ));
                continue;
            }
            let fa = &self.shape(ca).faces[sa.face];
            let fb = &self.shape(cb).faces[sb.face];
            // each source component must go, in order, onto its image component
            for (ci, &comp_a) in sa.components.iter().enumerate() {
                let comp_b = sb.components[g.components[ci]];
                let src: Vec<usize> = (0..sa.points.len())
                    .filter(|&i| fa.points[sa.points[i]].component == comp_a)
                    .collect();
                let dst: Vec<usize> = (0..sb.points.len())
                    .filter(|&i| fb.points[sb.points[i]].component == comp_b)
                    .collect();
                let image: Vec<usize> = src.iter().map(|&i| g.points[i]).collect();
                if image != dst {
                    out.push(violation(
                        ViolationKind::OrderViolation,
                        format!("{label}: component {comp_a} is not carried in u-order onto component {comp_b}"),
                    ));
                }
            }
            for (i, &pa) in sa.points.iter().enumerate() {
                let pb = sb.points[g.points[i]];
                let (xa, xb) = (fa.points[pa], fb.points[pb]);
                if xa.multiplicity != xb.multiplicity {
                    out.push(violation(
                        ViolationKind::MultiplicityMismatch,
                        format!(
                            "{label}: point {i} has multiplicity {} vs {}",
                            xa.multiplicity, xb.multiplicity
                        ),
                    ));
                }
                if self.is_selected((ca, sa.face, pa)) != self.is_selected((cb, sb.face, pb)) {
                    out.push(violation(
                        ViolationKind::SelectionMismatch,
                        format!("{label}: point {i} pairs a selected with an unselected W-cell"),
                    ));
                }
            }
            let expected = if fa.axis == fb.axis && fa.positive == fb.positive {
                Some(Orient::Reversing)
            } else if fa.axis == fb.axis && fa.positive != fb.positive {
                Some(Orient::Preserving)
            } else {
                None
            };
            if let Some(e) = expected {
                if e != g.orient {
                    out.push(violation(
                        ViolationKind::OrientMismatch,
                        format!("{label}: orient={} but the faces require orient={e}", g.orient),
                    ));
                }
            }
        }
        if self.doc.oriented {
            let mut puf = ParityUnionFind::new(self.doc.charts.len());
            for r in &self.resolved {
                let g = &self.doc.glues[r.glue];
                if !puf.relate(r.ends[0].0, r.ends[1].0, g.orient == Orient::Reversing) {
                    out.push(violation(
                        ViolationKind::NotOrientable,
                        format!("{} closes an orientation-reversing loop", g.label()),
                    ));
                }
            }
        }
        self.violations.extend(out);
    }

    fn check_holographic(&mut self) {
        for (i, c) in self.doc.charts.iter().enumerate() {
            if let Some(s) = &self.shapes[i] {
                if self.selected[i].len() != s.w_components {
                    self.violations.push(violation(
                        ViolationKind::NotHolographic,
                        format!(
                            "chart {} covers {} of {} components",
                            c.id,
                            self.selected[i].len(),
                            s.w_components
                        ),
                    ));
                }
            }
        }
    }

    fn transport_glue(&self) -> BTreeMap<Site, Site> {
        let mut map = BTreeMap::new();
        for r in &self.resolved {
            let g = &self.doc.glues[r.glue];
            let [(ca, sa), (cb, sb)] = &r.ends;
            if !is_bijection(&g.points, sa.points.len()) || sa.points.len() != sb.points.len() {
                continue;
            }
            for (i, &pa) in sa.points.iter().enumerate() {
                let pb = sb.points[g.points[i]];
                map.insert((*ca, sa.face, pa), (*cb, sb.face, pb));
                map.insert((*cb, sb.face, pb), (*ca, sa.face, pa));
            }
        }
        map
    }

    /// Carries a point across its block to the face `to`, matching by cluster
    /// and rank within the cluster; only faces with the same cluster word
    /// are connected this way.
    fn transport_tile(&self, site: Site, to: usize) -> Option<Site> {
        let (c, f, p) = site;
        let shape = self.shape(c);
        let (from, dest) = (&shape.faces[f], &shape.faces[to]);
        if f == to || from.cluster_word() != dest.cluster_word() {
            return None;
        }
        Some((c, to, p))
    }

    fn check_fillable(&mut self) {
        let mut out = Vec::new();
        let mut paired_faces: BTreeSet<(usize, usize)> = BTreeSet::new();
        for r in &self.resolved {
            let g = &self.doc.glues[r.glue];
            let label = g.label();
            if !g.filled {
                out.push(violation(
                    ViolationKind::Unfilled,
                    format!("{label} carries no bulk extension"),
                ));
            }
            for (c, s) in &r.ends {
                paired_faces.insert((*c, s.face));
            }
            let [(ca, sa), (cb, sb)] = &r.ends;
            if g.points.len() != sa.points.len() || sa.points.len() != sb.points.len() {
                continue;
            }
            let fa = &self.shape(*ca).faces[sa.face];
            let fb = &self.shape(*cb).faces[sb.face];
            for (i, &pa) in sa.points.iter().enumerate() {
                let Some(&j) = g.points.get(i) else { continue };
                let Some(&pb) = sb.points.get(j) else { continue };
                if fa.points[pa].polarity != fb.points[pb].polarity {
                    out.push(violation(
                        ViolationKind::SignViolation,
                        format!(
                            "{label}: point {i} pairs polarity {} with {}",
                            fa.points[pa].polarity, fb.points[pb].polarity
                        ),
                    ));
                }
            }
        }
        for &(c, f) in &paired_faces {
            let face = &self.shape(c).faces[f];
            for p in 0..face.points.len() {
                if !self.is_selected((c, f, p)) {
                    out.push(violation(
                        ViolationKind::NotSaturated,
                        format!(
                            "{}.{} point {p} lies outside the selected components",
                            self.doc.charts[c].id, face.name
                        ),
                    ));
                }
            }
        }
        out.extend(self.cocycles());
        self.violations.extend(out);
    }

    fn cocycles(&self) -> Vec<Violation> {
        let glue_map = self.transport_glue();
        let mut between: BTreeMap<(usize, usize), Vec<&Resolved>> = BTreeMap::new();
        for r in &self.resolved {
            let (a, b) = (r.ends[0].0, r.ends[1].0);
            if a != b {
                between.entry((a, b)).or_default().push(r);
                between.entry((b, a)).or_default().push(r);
            }
        }
        let mut nbrs: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(a, b) in between.keys() {
            nbrs.entry(a).or_default().insert(b);
        }
        let end_on = |r: &Resolved, chart: usize| -> usize {
            if r.ends[0].0 == chart {
                0
            } else {
                1
            }
        };
        let mut out = Vec::new();
        let mut reported = BTreeSet::new();
        for (&a, na) in &nbrs {
            for &b in na.range(a + 1..) {
                for &c in nbrs[&b].range(b + 1..) {
                    if !na.contains(&c) {
                        continue;
                    }
                    for g1 in &between[&(a, b)] {
                        for g2 in &between[&(b, c)] {
                            for g3 in &between[&(c, a)] {
                                let start = &g1.ends[end_on(g1, a)];
                                let b_in = &g1.ends[1 - end_on(g1, a)];
                                let b_out = &g2.ends[end_on(g2, b)];
                                let c_in = &g2.ends[1 - end_on(g2, b)];
                                let c_out = &g3.ends[end_on(g3, c)];
                                let a_in = &g3.ends[1 - end_on(g3, c)];
                                let on = |s: &Site, end: &(usize, FaceSelection)| {
                                    s.0 == end.0 && s.1 == end.1.face && end.1.points.contains(&s.2)
                                };
                                let across = |s: Site, end: &(usize, FaceSelection)| {
                                    self.transport_tile(s, end.1.face).filter(|t| on(t, end))
                                };
                                for &p in &start.1.points {
                                    let s0 = (a, start.1.face, p);
                                    let walk = glue_map
                                        .get(&s0)
                                        .filter(|s| on(s, b_in))
                                        .and_then(|&s| across(s, b_out))
                                        .and_then(|s| glue_map.get(&s).copied())
                                        .filter(|s| on(s, c_in))
                                        .and_then(|s| across(s, c_out))
                                        .and_then(|s| glue_map.get(&s).copied())
                                        .filter(|s| on(s, a_in))
                                        .and_then(|s| across(s, start));
                                    if let Some(end) = walk {
                                        if end != s0 && reported.insert((a, b, c)) {
                                            let ids = &self.doc.charts;
                                            out.push(violation(
                                                ViolationKind::CocycleViolation {
                                                    triple: [ids[a].id.clone(), ids[b].id.clone(), ids[c].id.clone()],
                                                },
                                                format!(
                                                    "composite of {}, {}, {} moves point {p} of {} to point {}",
                                                    self.doc.glues[g1.glue].label(),
                                                    self.doc.glues[g2.glue].label(),
                                                    self.doc.glues[g3.glue].label(),
                                                    ids[a].id,
                                                    end.2
                                                ),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn finish(mut self, level: Level) -> Report {
        self.violations.sort();
        self.violations.dedup();
        Report {
            level,
            violations: self.violations,
        }
    }
}

pub fn validate_proto(doc: &AtlasDoc) -> Result<Report, AtlasError> {
    let mut a = Analysis::new(doc)?;
    a.check_proto();
    Ok(a.finish(Level::Proto))
}

pub fn validate_holographic(doc: &AtlasDoc) -> Result<Report, AtlasError> {
    let mut a = Analysis::new(doc)?;
    a.check_proto();
    a.check_holographic();
    Ok(a.finish(Level::Holographic))
}

pub fn validate_fillable(doc: &AtlasDoc) -> Result<Report, AtlasError> {
    let mut a = Analysis::new(doc)?;
    a.check_proto();
    a.check_holographic();
    a.check_fillable();
    Ok(a.finish(Level::Fillable))
}

pub fn validate(doc: &AtlasDoc, level: Level) -> Result<Report, AtlasError> {
    match level {
        Level::Proto => validate_proto(doc),
        Level::Holographic => validate_holographic(doc),
        Level::Fillable => validate_fillable(doc),
    }
}

/// Relabels charts by an automorphism: the chart declared as `a` is renamed
/// `phi[a]`, which must be a chart of the same pattern. Unlisted charts keep
/// their id.
pub fn pullback(doc: &AtlasDoc, phi: &BTreeMap<String, String>) -> Result<AtlasDoc, AtlasError> {
    doc.check_references()?;
    let ids: BTreeSet<&str> = doc.charts.iter().map(|c| c.id.as_str()).collect();
    let map = |id: &str| -> String { phi.get(id).cloned().unwrap_or_else(|| id.to_string()) };
    let mut images = BTreeSet::new();
    for c in &doc.charts {
        let image = map(&c.id);
        let target = doc
            .chart(&image)
            .ok_or_else(|| AtlasError::InconsistentRelabeling(format!("{} maps to undeclared chart {image}", c.id)))?;
        if target.omega != c.omega {
            return Err(AtlasError::InconsistentRelabeling(format!(
                "{} (omega={}) maps to {image} (omega={})",
                c.id, c.omega, target.omega
            )));
        }
        images.insert(image);
    }
    if images.len() != ids.len() {
        return Err(AtlasError::InconsistentRelabeling("relabeling is not injective".into()));
    }
    if let Some(k) = phi.keys().find(|k| !ids.contains(k.as_str())) {
        return Err(AtlasError::InconsistentRelabeling(format!("{k} is not a chart")));
    }
    let mut out = doc.clone();
    for c in &mut out.charts {
        c.id = map(&c.id);
    }
    for g in &mut out.glues {
        g.a.chart = map(&g.a.chart);
        g.b.chart = map(&g.b.chart);
    }
    out.base = doc.base.as_deref().map(map);
    Ok(out)
}

fn same_transition(a: &GlueDecl, b: &GlueDecl) -> bool {
    a.orient == b.orient && a.points == b.points && a.components == b.components
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        if let Some(slot) = inv.get_mut(j) {
            *slot = i;
        }
    }
    inv
}

/// Checks that `fine` refines `coarse` along an explicit chart inclusion.
pub fn refines(fine: &AtlasDoc, coarse: &AtlasDoc, inclusion: &BTreeMap<String, String>) -> Result<Report, AtlasError> {
    fine.check_references()?;
    coarse.check_references()?;
    let mut violations = Vec::new();
    for c in &fine.charts {
        let target = inclusion
            .get(&c.id)
            .ok_or_else(|| AtlasError::Malformed(format!("inclusion does not place chart {}", c.id)))?;
        let cc = coarse
            .chart(target)
            .ok_or_else(|| AtlasError::Malformed(format!("inclusion targets unknown chart {target}")))?;
        if !crate::omega::leq(&cc.omega, &c.omega) {
            violations.push(violation(
                ViolationKind::IllegalPattern,
                format!(
                    "{} (omega={}) cannot sit inside {} (omega={})",
                    c.id, c.omega, cc.id, cc.omega
                ),
            ));
        }
    }
    for g in &fine.glues {
        let (ia, ib) = (&inclusion[&g.a.chart], &inclusion[&g.b.chart]);
        if ia == ib {
            let identity = |p: &[usize]| p.iter().enumerate().all(|(i, &j)| i == j);
            if g.orient != Orient::Preserving || !identity(&g.points) || !identity(&g.components) {
                violations.push(violation(
                    ViolationKind::PointMap,
                    format!("{} lies inside {ia} but is not the identity", g.label()),
                ));
            }
            continue;
        }
        let found = coarse.glues.iter().any(|h| {
            if h.a.chart == *ia && h.b.chart == *ib {
                same_transition(g, h)
            } else if h.a.chart == *ib && h.b.chart == *ia {
                g.orient == h.orient && inverse(&h.points) == g.points && inverse(&h.components) == g.components
            } else {
                false
            }
        });
        if !found {
            violations.push(violation(
                ViolationKind::PointMap,
                format!(
                    "{} is not the restriction of a transition between {ia} and {ib}",
                    g.label()
                ),
            ));
        }
    }
    violations.sort();
    Ok(Report {
        level: Level::Proto,
        violations,
    })
}
