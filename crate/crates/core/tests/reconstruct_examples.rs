use std::collections::BTreeMap;

use holo_core::atlas::{pullback, random_surface_atlas, AtlasDoc};
use holo_core::omega::enumerate_poset;
use holo_core::reconstruct::{
    boundary_causality, check_holography, glue, invariants, trajectory_space, ReconstructError, StratifiedComplex,
    TCell,
};
use holo_core::strata::{strata_table, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atlas(name: &str) -> AtlasDoc {
    let path = format!("{}/../../atlases/{name}.atlas", env!("CARGO_MANIFEST_DIR"));
    AtlasDoc::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn surface(name: &str) -> StratifiedComplex {
    glue(&atlas(name)).unwrap()
}

/// Every vertex of the boundary meets exactly two boundary edges.
fn boundary_is_circles(x: &StratifiedComplex) -> bool {
    let y = x.boundary_complex();
    let mut degree = vec![0; y.len()];
    for c in y.cells().iter().filter(|c| c.dim == 1) {
        for &(v, _) in &c.boundary {
            degree[v] += 1;
        }
    }
    y.cells().iter().enumerate().all(|(i, c)| c.dim != 0 || degree[i] == 2) && y.euler_characteristic() == 0
}

fn common_properties(x: &StratifiedComplex) {
    assert!(x.is_valid());
    assert!(boundary_is_circles(x));
    let t = trajectory_space(x);
    assert_eq!(x.euler_characteristic(), t.euler_characteristic());
    assert_eq!(t.graph().components(), x.components());
    let allowed: Vec<_> = enumerate_poset(1).unwrap().elements;
    for v in &t.vertices {
        assert!(allowed.contains(&v.label), "vertex label {}", v.label);
    }
    let table = strata_table(x).unwrap();
    assert!(table.boundary_identity);
    let mut fixed = boundary_causality(x).fixed();
    fixed.sort_unstable();
    let deep_minus: Vec<usize> = (0..x.len())
        .filter(|&i| {
            let c = x.cell(i);
            c.on_boundary
                && c.label
                    .is_some_and(|l| l.multiplicity == 2 && l.polarity == Polarity::Minus)
        })
        .collect();
    assert_eq!(fixed, deep_minus);
    // each boundary circle carries an even number of deep points
    let y = x.boundary_complex();
    let mut uf = holo_core::util::UnionFind::new(y.len());
    for (i, c) in y.cells().iter().enumerate() {
        for &(b, _) in &c.boundary {
            uf.union(i, b);
        }
    }
    let mut per_circle: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, c) in y.cells().iter().enumerate() {
        uf.find(i);
        if c.dim == 0 && c.label.is_some_and(|l| l.multiplicity == 2) {
            *per_circle.entry(uf.find(i)).or_default() += 1;
        }
    }
    assert!(per_circle.values().all(|n| n % 2 == 0));
}

#[test]
fn disk() {
    let x = surface("disk");
    common_properties(&x);
    assert_eq!(
        invariants(&x).to_string(),
        "chi=1 boundary_circles=1 b0=1 b1=0 orientable=1"
    );
    let t = trajectory_space(&x).graph();
    assert_eq!((t.vertices.len(), t.edges.len()), (4, 3));
    let s = t.simplified();
    assert_eq!((s.vertices.len(), s.edges.len()), (2, 1));
    assert!(s.vertices.iter().all(|l| l.entries() == [2]));
    let c = boundary_causality(&x);
    let lower = x.find("T.bottom").unwrap();
    assert_eq!(c.image(lower), x.find("T.top"));
    assert_eq!(c.fixed().len(), 2);
}

#[test]
fn annulus() {
    let x = surface("annulus");
    common_properties(&x);
    assert_eq!(
        invariants(&x).to_string(),
        "chi=0 boundary_circles=2 b0=1 b1=1 orientable=1"
    );
    let y = x.boundary_complex();
    assert_eq!(y.homology().betti, vec![2, 2]);
    let s = trajectory_space(&x).graph().simplified();
    assert_eq!((s.vertices.len(), s.edges.len()), (1, 1));
    let c = boundary_causality(&x);
    for name in ["A.bottom", "B.bottom"] {
        let inner = x.find(name).unwrap();
        let outer = x.find(&name.replace("bottom", "top")).unwrap();
        assert_eq!(c.image(inner), Some(outer));
    }
}

#[test]
fn dented_disk() {
    let x = surface("dented");
    common_properties(&x);
    let inv = invariants(&x);
    assert_eq!((inv.chi, inv.boundary_circles, inv.b0, inv.b1), (1, 1, 1, 0));
    let table = strata_table(&x).unwrap();
    assert_eq!(table.point_count(2, Polarity::Plus), 1);
    // three caps close the three free segments, so three (2,-) points
    assert_eq!(table.point_count(2, Polarity::Minus), 3);
    let s = trajectory_space(&x).graph().simplified();
    let centre: Vec<usize> = (0..s.vertices.len())
        .filter(|&v| s.vertices[v].entries() == [1, 2, 1])
        .collect();
    assert_eq!(centre.len(), 1);
    assert_eq!(s.degree(centre[0]), 3);
    assert_eq!((s.vertices.len(), s.edges.len()), (4, 3));
    let c = boundary_causality(&x);
    let start = x.find("A.B0").unwrap();
    assert_eq!(c.orbit(start).len(), 3);
}

#[test]
fn refinement_and_symmetry_preserve_holography() {
    let r = check_holography(&atlas("disk"), &atlas("disk_refined")).unwrap();
    assert!(r.causality_isomorphic && r.trajectory_isomorphic, "{}", r.to_text());
    let r = check_holography(&atlas("disk"), &atlas("annulus")).unwrap();
    assert!(!r.causality_isomorphic && r.consistent());
    let swap: BTreeMap<String, String> = [("D1", "D2"), ("D2", "D1")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mirrored = pullback(&atlas("disk"), &swap).unwrap();
    let r = check_holography(&atlas("disk"), &mirrored).unwrap();
    assert!(r.causality_isomorphic && r.trajectory_isomorphic);
}

fn rename_cell(name: &str, phi: &BTreeMap<String, String>) -> String {
    let mut parts: Vec<String> = name
        .split('=')
        .map(|p| {
            let (chart, rest) = p.split_once('.').unwrap();
            format!("{}.{rest}", phi.get(chart).map_or(chart, String::as_str))
        })
        .collect();
    parts.sort();
    parts.join("=")
}

#[test]
fn gamma_is_natural_under_relabeling() {
    let doc = atlas("disk");
    let phi: BTreeMap<String, String> = [("D1", "D2"), ("D2", "D1")]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let pulled = pullback(&doc, &phi).unwrap();
    let (x, xp) = (glue(&doc).unwrap(), glue(&pulled).unwrap());
    let (t, tp) = (trajectory_space(&x), trajectory_space(&xp));
    // the relabeling induces a cell bijection; transport Γ of the pullback through it
    let mut vertex_map = BTreeMap::new();
    let mut edge_map = BTreeMap::new();
    for i in 0..x.len() {
        let j = xp
            .find(&rename_cell(&x.cell(i).name, &phi))
            .expect("renamed cell exists");
        match (t.gamma[i], tp.gamma[j]) {
            (Some(TCell::Vertex(a)), Some(TCell::Vertex(b))) => {
                assert_eq!(*vertex_map.entry(b).or_insert(a), a);
            }
            (Some(TCell::Edge(a)), Some(TCell::Edge(b))) => {
                assert_eq!(*edge_map.entry(b).or_insert(a), a);
            }
            (None, None) => {}
            other => panic!("Γ disagrees on {}: {other:?}", x.cell(i).name),
        }
    }
    assert_eq!(vertex_map.len(), t.vertices.len());
    assert_eq!(edge_map.len(), t.edges.len());
}

#[test]
fn unpaired_and_non_surface_atlases_are_rejected() {
    let mut doc = atlas("disk");
    doc.glues.pop();
    assert!(matches!(glue(&doc), Err(ReconstructError::UnpairedFace(_))));
    let mut doc = atlas("disk");
    doc.n = 2;
    assert!(matches!(glue(&doc), Err(ReconstructError::NotSurface(2))));
    let twisted = std::fs::read_to_string(format!(
        "{}/../../atlases/negative/twisted.atlas",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    assert!(matches!(
        glue(&AtlasDoc::parse(&twisted).unwrap()),
        Err(ReconstructError::NotFillable(_))
    ));
}

#[test]
fn random_assemblies() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let tiles = rng.gen_range(1..=25);
        let doc = random_surface_atlas(tiles, |k| rng.gen_range(0..k));
        let x = glue(&doc).unwrap_or_else(|e| panic!("{e}\n{}", doc.to_text()));
        common_properties(&x);
        let t = trajectory_space(&x);
        for e in &t.edges {
            assert_eq!(e.label.entries(), [1, 1]);
        }
        let inv = invariants(&x);
        assert_eq!(inv.chi, inv.b0 as i64 - inv.b1 as i64);
    }
}
