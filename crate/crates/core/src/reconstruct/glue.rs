use std::collections::BTreeMap;

use super::complex::{Cell, StratifiedComplex};
use super::tiles::{tile, Tile};
use super::ReconstructError;
use crate::atlas::{validate_fillable, AtlasDoc, ChartShape};
use crate::util::{ParityUnionFind, UnionFind};

/// Quotient of the chart tiles by the transitions of a fillable surface atlas.
pub fn glue(doc: &AtlasDoc) -> Result<StratifiedComplex, ReconstructError> {
    if doc.n != 1 {
        return Err(ReconstructError::NotSurface(doc.n));
    }
    let report = validate_fillable(doc)?;
    if !report.passed() {
        return Err(ReconstructError::NotFillable(
            report.violations.iter().map(ToString::to_string).collect(),
        ));
    }
    let mut tiles: Vec<Tile> = Vec::new();
    let mut shapes = Vec::new();
    let mut offset = Vec::new();
    let mut total = 0;
    for c in &doc.charts {
        let t = tile(&c.omega).ok_or_else(|| ReconstructError::UnsupportedPattern(c.omega.to_string()))?;
        offset.push(total);
        total += t.cells.len();
        tiles.push(t);
        shapes.push(ChartShape::new(&c.omega, 1)?);
    }
    let chart_index: BTreeMap<&str, usize> = doc.charts.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();

    let mut uf = UnionFind::new(total);
    let mut uses: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut parity = ParityUnionFind::new(doc.charts.len());
    let mut orientable = true;
    for g in &doc.glues {
        let mut ends = Vec::new();
        for r in [&g.a, &g.b] {
            let ci = chart_index[r.chart.as_str()];
            let sel = shapes[ci].select(r)?;
            let side = shapes[ci].faces[sel.face].name.clone();
            let tf = tiles[ci]
                .face(&side)
                .expect("tile faces mirror the chart shape")
                .clone();
            let positive = shapes[ci].faces[sel.face].positive;
            ends.push((ci, sel, tf, positive));
        }
        let (ca, sa, fa, pa) = &ends[0];
        let (cb, sb, fb, pb) = &ends[1];
        for (i, &p) in sa.points.iter().enumerate() {
            let q = sb.points[g.points[i]];
            uf.union(offset[*ca] + fa.points[p], offset[*cb] + fb.points[q]);
        }
        for (i, &comp) in sa.components.iter().enumerate() {
            let other = sb.components[g.components[i]];
            uf.union(offset[*ca] + fa.edges[comp], offset[*cb] + fb.edges[other]);
            *uses.entry((*ca, fa_index(&tiles[*ca], &fa.side), comp)).or_default() += 1;
            *uses.entry((*cb, fa_index(&tiles[*cb], &fb.side), other)).or_default() += 1;
        }
        // gluing a side to a side of the same sign reverses the transverse direction
        if !parity.relate(*ca, *cb, pa == pb) {
            orientable = false;
        }
    }
    for (ci, t) in tiles.iter().enumerate() {
        for (fi, f) in t.faces.iter().enumerate() {
            for comp in 0..f.edges.len() {
                let name = if f.edges.len() == 1 {
                    format!("{}.{}", doc.charts[ci].id, f.side)
                } else {
                    format!("{}.{}#{comp}", doc.charts[ci].id, f.side)
                };
                match uses.get(&(ci, fi, comp)).copied().unwrap_or(0) {
                    0 => return Err(ReconstructError::UnpairedFace(name)),
                    1 => {}
                    _ => return Err(ReconstructError::NonManifoldGluing(name)),
                }
            }
        }
    }

    // flat view of all tile cells
    let mut flat = Vec::with_capacity(total);
    for (ci, t) in tiles.iter().enumerate() {
        for c in &t.cells {
            flat.push((ci, c));
        }
    }
    let (class, count) = uf.classes();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, &k) in class.iter().enumerate() {
        members[k].push(i);
    }
    // vertices first, then edges, then faces; ties by first appearance
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&k| (flat[members[k][0]].1.dim, k));
    let mut new_index = vec![0; count];
    for (pos, &k) in order.iter().enumerate() {
        new_index[k] = pos;
    }
    let global = |ci: usize, j: usize| -> usize { new_index[class[offset[ci] + j]] };

    let mut cells = Vec::with_capacity(count);
    let mut step = vec![None; count];
    for &k in &order {
        let first = members[k][0];
        let (ci, c) = flat[first];
        let boundary: Vec<(usize, i64)> = c.boundary.iter().map(|&(b, s)| (global(ci, b), s)).collect();
        let mut names: Vec<String> = Vec::new();
        for &m in &members[k] {
            let (mc, mcell) = flat[m];
            let mb: Vec<(usize, i64)> = mcell.boundary.iter().map(|&(b, s)| (global(mc, b), s)).collect();
            if mb != boundary {
                return Err(ReconstructError::NonManifoldGluing(format!(
                    "{}.{} is identified with reversed endpoints",
                    doc.charts[mc].id, mcell.name
                )));
            }
            if mcell.label != c.label {
                return Err(ReconstructError::InconsistentLabels(format!(
                    "{}.{} and {}.{}",
                    doc.charts[ci].id, c.name, doc.charts[mc].id, mcell.name
                )));
            }
            names.push(format!("{}.{}", doc.charts[mc].id, mcell.name));
            if let Some(s) = mcell.step {
                let image = global(mc, s);
                match step[new_index[k]] {
                    Some(prev) if prev != image => {
                        return Err(ReconstructError::InconsistentLabels(format!(
                            "causality of {}.{} is ambiguous",
                            doc.charts[mc].id, mcell.name
                        )))
                    }
                    _ => step[new_index[k]] = Some(image),
                }
            }
        }
        names.sort();
        names.dedup();
        cells.push(Cell {
            name: names.join("="),
            dim: c.dim,
            boundary,
            on_boundary: c.label.is_some(),
            label: c.label,
        });
    }
    Ok(StratifiedComplex::new(cells, step, orientable))
}

fn fa_index(t: &Tile, side: &str) -> usize {
    t.faces.iter().position(|f| f.side == side).expect("known side")
}
