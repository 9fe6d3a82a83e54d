use super::doc::{AtlasDoc, ChartDecl, FaceRef, GlueDecl, Orient, Selection};
use crate::omega::Pattern;

/// A random fillable surface atlas: `tiles` blocks of the three surface
/// types (one more cap when needed to make the face count even), with face
/// segments paired by a random perfect matching. `choose(k)` must return a
/// value in `0..k`.
pub fn random_surface_atlas(tiles: usize, mut choose: impl FnMut(usize) -> usize) -> AtlasDoc {
    let kinds = ["11", "2", "121"];
    let mut charts = Vec::new();
    let mut segments: Vec<(FaceRef, bool)> = Vec::new();
    let add = |id: String, kind: &str, charts: &mut Vec<ChartDecl>, segments: &mut Vec<(FaceRef, bool)>| {
        let faces: &[(&str, Option<usize>, bool)] = match kind {
            "11" => &[("left", None, false), ("right", None, true)],
            "2" => &[("left", None, false)],
            _ => &[
                ("left", Some(0), false),
                ("left", Some(1), false),
                ("right", None, true),
            ],
        };
        for &(face, segment, positive) in faces {
            segments.push((
                FaceRef {
                    chart: id.clone(),
                    face: face.into(),
                    segment,
                },
                positive,
            ));
        }
        charts.push(ChartDecl {
            id,
            omega: kind.parse::<Pattern>().expect("literal pattern"),
            components: Selection::All,
        });
    };
    for i in 0..tiles {
        let kind = kinds[choose(kinds.len())];
        add(format!("t{i}"), kind, &mut charts, &mut segments);
    }
    if segments.len() % 2 == 1 {
        add(format!("t{tiles}"), "2", &mut charts, &mut segments);
    }
    for i in (1..segments.len()).rev() {
        let j = choose(i + 1);
        segments.swap(i, j);
    }
    let glues = segments
        .chunks(2)
        .map(|pair| {
            let ((a, pa), (b, pb)) = (&pair[0], &pair[1]);
            GlueDecl {
                a: a.clone(),
                b: b.clone(),
                points: vec![0, 1],
                components: vec![0],
                orient: if pa == pb {
                    Orient::Reversing
                } else {
                    Orient::Preserving
                },
                filled: true,
            }
        })
        .collect();
    AtlasDoc {
        n: 1,
        oriented: false,
        charts,
        glues,
        base: None,
        level: None,
    }
}
