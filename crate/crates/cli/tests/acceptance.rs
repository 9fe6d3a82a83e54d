//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILING` are
//! expected to fail; the run exits nonzero when any other criterion fails or
//! a known failure starts passing.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use holo_core::atlas::{random_surface_atlas, validate_fillable, AtlasDoc, ViolationKind};
use holo_core::causality::FiberWord;
use holo_core::omega::{decompose, enumerate_poset, patterns_up_to_norm, PartKind, Pattern};
use holo_core::polymodel::{params_from_roots, LocalRoot, ModelPolynomial, Q};
use holo_core::reconstruct::{boundary_causality, check_holography, glue, invariants, trajectory_space, LabeledGraph};
use holo_core::strata::{polarity_oracle, polarize_divisor, strata_table, Polarity};
use holo_core::surgery::{connected_sum, verify_strata_formulas, verify_trajectory_gluing, BasedAtlas};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The dented disk closes three free segments with three caps, so it has
/// three (2,-) points where the criterion asks for two.
const KNOWN_FAILING: &[u32] = &[5];

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn repo() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
}

fn atlas(name: &str) -> AtlasDoc {
    let path = repo().join("atlases").join(format!("{name}.atlas"));
    AtlasDoc::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn is_path(g: &LabeledGraph) -> bool {
    let n = g.vertices.len();
    g.components() == 1 && g.edges.len() + 1 == n && (0..n).all(|v| g.degree(v) <= 2)
}

fn is_cycle(g: &LabeledGraph) -> bool {
    g.components() == 1 && g.edges.len() == g.vertices.len() && (0..g.vertices.len()).all(|v| g.degree(v) == 2)
}

fn is_tripod(g: &LabeledGraph) -> bool {
    let degrees: BTreeMap<usize, usize> = (0..g.vertices.len()).fold(BTreeMap::new(), |mut m, v| {
        *m.entry(g.degree(v)).or_default() += 1;
        m
    });
    g.components() == 1 && g.edges.len() == 3 && degrees == BTreeMap::from([(1, 3), (3, 1)])
}

fn reference_decomposition() -> Outcome {
    let d = decompose(&pat("23274542314641")).map_err(|e| e.to_string())?;
    let got: Vec<(PartKind, Vec<u32>)> = d.parts.iter().map(|p| (p.kind, p.entries.clone())).collect();
    let want = vec![
        (PartKind::Atom, vec![2]),
        (PartKind::String, vec![3, 2, 7]),
        (PartKind::Atom, vec![4]),
        (PartKind::String, vec![5, 4, 2, 3]),
        (PartKind::String, vec![1, 4, 6, 4, 1]),
    ];
    ensure(got == want, || format!("got {d}"))
}

fn small(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    Q::new(rng.gen_range(-bound..=bound).into(), 32.into())
}

fn random_model(rng: &mut ChaCha8Rng, omega: &Pattern) -> ModelPolynomial {
    loop {
        let params = if rng.gen_bool(0.5) {
            let roots: Vec<Vec<LocalRoot>> = omega
                .entries()
                .iter()
                .map(|&m| {
                    let mut left = m;
                    let mut out = Vec::new();
                    while left > 0 {
                        if left >= 2 && rng.gen_bool(0.3) {
                            let im = Q::new(rng.gen_range(1..=6i64).into(), 32.into());
                            out.push(LocalRoot::Complex { re: small(rng, 6), im });
                            left -= 2;
                        } else {
                            let multiplicity = rng.gen_range(1..=left);
                            out.push(LocalRoot::Real {
                                at: small(rng, 6),
                                multiplicity,
                            });
                            left -= multiplicity;
                        }
                    }
                    out
                })
                .collect();
            params_from_roots(omega, &roots).expect("degrees match the pattern")
        } else {
            ModelPolynomial::parameter_axes(omega)
                .into_iter()
                .filter_map(|axis| rng.gen_bool(0.7).then(|| (axis, small(rng, 8))))
                .collect()
        };
        if let Ok(m) = ModelPolynomial::with_params(omega.clone(), params) {
            return m;
        }
    }
}

fn polarity_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let types: Vec<Pattern> = patterns_up_to_norm(6)
        .into_iter()
        .filter(|p| decompose(p).is_ok_and(|d| d.parts.len() == 1))
        .collect();
    for omega in &types {
        for _ in 0..1000 {
            let m = random_model(&mut rng, omega);
            let div = m.divisor().map_err(|e| e.to_string())?;
            let rule = polarize_divisor(&div).map_err(|e| e.to_string())?;
            let oracle = polarity_oracle(&m).map_err(|e| e.to_string())?;
            ensure(rule == oracle, || {
                format!("omega={omega}: rule {rule} oracle {oracle}\n{}", m.to_text())
            })?;
        }
    }
    Ok(())
}

fn causality_fixed_points() -> Outcome {
    for omega in patterns_up_to_norm(10) {
        let Ok(w) = FiberWord::from_pattern(&omega) else {
            continue;
        };
        let pts = &w.polarized().points;
        let negative_even: Vec<usize> = (0..w.len())
            .filter(|&i| pts[i].multiplicity % 2 == 0 && pts[i].polarity == Polarity::Minus)
            .collect();
        let atoms: Vec<usize> = w
            .polarized()
            .decomposition
            .parts
            .iter()
            .filter(|p| p.kind == PartKind::Atom)
            .map(|p| p.start)
            .collect();
        let fixed = w.fixed_points().fixed;
        ensure(fixed == atoms && fixed == negative_even, || {
            format!("omega={omega}: fixed {fixed:?} atoms {atoms:?} even- {negative_even:?}")
        })?;
    }
    Ok(())
}

fn poset_sanity() -> Outcome {
    let view = enumerate_poset(2).map_err(|e| e.to_string())?;
    let got: BTreeSet<Pattern> = view.elements.iter().cloned().collect();
    let want: BTreeSet<Pattern> = ["11", "2", "121", "1221", "31", "13"].into_iter().map(pat).collect();
    ensure(got == want, || format!("elements {got:?}"))?;
    for &(a, b) in &view.covers {
        let (lo, hi) = (&view.elements[a], &view.elements[b]);
        ensure(lo.reduced_norm() > hi.reduced_norm(), || format!("cover {lo} < {hi}"))?;
    }
    let maxima = view.maximal_elements();
    ensure(maxima.len() == 1 && *maxima[0] == pat("11"), || {
        format!("maxima {maxima:?}")
    })
}

fn reconstruction_oracles() -> Outcome {
    let a = glue(&atlas("disk")).map_err(|e| e.to_string())?;
    let ia = invariants(&a);
    let ta = trajectory_space(&a);
    ensure(
        (ia.chi, ia.boundary_circles, ia.b0, ia.b1) == (1, 1, 1, 0)
            && ta.euler_characteristic() == 1
            && is_path(&ta.graph()),
        || format!("A: {ia}"),
    )?;
    let b = glue(&atlas("annulus")).map_err(|e| e.to_string())?;
    let ib = invariants(&b);
    ensure(
        (ib.chi, ib.boundary_circles, ib.b1) == (0, 2, 1) && is_cycle(&trajectory_space(&b).graph().simplified()),
        || format!("B: {ib}"),
    )?;
    let c = glue(&atlas("dented")).map_err(|e| e.to_string())?;
    let ic = invariants(&c);
    let table = strata_table(&c).map_err(|e| e.to_string())?;
    let (plus, minus) = (
        table.point_count(2, Polarity::Plus),
        table.point_count(2, Polarity::Minus),
    );
    ensure(
        ic.chi == 1 && is_tripod(&trajectory_space(&c).graph().simplified()),
        || format!("C: {ic}"),
    )?;
    ensure(plus == 1 && minus == 2, || {
        format!("C: d2+ points {plus} (want 1), d2- points {minus} (want 2)")
    })
}

fn random_assemblies() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..100 {
        let tiles = rng.gen_range(1..=39);
        let doc = random_surface_atlas(tiles, |k| rng.gen_range(0..k));
        let x = glue(&doc).map_err(|e| format!("trial {trial}: {e}"))?;
        let (cx, ct) = (x.euler_characteristic(), trajectory_space(&x).euler_characteristic());
        ensure(cx == ct, || format!("trial {trial}: chi(X)={cx} chi(T)={ct}"))?;
    }
    Ok(())
}

fn holography() -> Outcome {
    let r = check_holography(&atlas("disk"), &atlas("disk_refined")).map_err(|e| e.to_string())?;
    ensure(r.causality_isomorphic && r.trajectory_isomorphic, || r.to_text())?;
    let x = glue(&atlas("disk_refined")).map_err(|e| e.to_string())?;
    ensure(boundary_causality(&x).fixed().len() == 2, || {
        "refined disk fixed points".into()
    })
}

fn cocycle_negative_control() -> Outcome {
    let text = std::fs::read_to_string(repo().join("atlases/negative/twisted.atlas")).map_err(|e| e.to_string())?;
    let doc = AtlasDoc::parse(&text).map_err(|e| e.to_string())?;
    let r = validate_fillable(&doc).map_err(|e| e.to_string())?;
    let triple = ["P", "Q", "R"].map(String::from);
    ensure(
        !r.passed() && r.has(|k| *k == ViolationKind::CocycleViolation { triple: triple.clone() }),
        || r.to_text(),
    )
}

fn surgery_formulas() -> Outcome {
    for (n1, n2, d2_minus) in [("disk", "disk", 4), ("annulus", "annulus", 0)] {
        let a1 = BasedAtlas::new(atlas(n1), None).map_err(|e| e.to_string())?;
        let a2 = BasedAtlas::new(atlas(n2), None).map_err(|e| e.to_string())?;
        let sum = connected_sum(&a1, &a2).map_err(|e| e.to_string())?;
        let strata = verify_strata_formulas(&a1, &a2, &sum).map_err(|e| e.to_string())?;
        let traj = verify_trajectory_gluing(&a1, &a2, &sum).map_err(|e| e.to_string())?;
        ensure(strata.passed() && traj.passed(), || format!("{strata:?} {traj:?}"))?;
        let x = glue(&sum).map_err(|e| e.to_string())?;
        let t = strata_table(&x).map_err(|e| e.to_string())?;
        let (x1, x2) = (glue(&a1.doc).unwrap(), glue(&a2.doc).unwrap());
        let chi = |y: &holo_core::reconstruct::StratifiedComplex| y.euler_characteristic();
        let chi_t = |y: &holo_core::reconstruct::StratifiedComplex| trajectory_space(y).euler_characteristic();
        ensure(
            t.point_count(2, Polarity::Plus) == 2
                && t.point_count(2, Polarity::Minus) == d2_minus
                && chi(&x) == chi(&x1) + chi(&x2) - 1
                && chi_t(&x) == chi_t(&x1) + chi_t(&x2) - 1,
            || format!("{n1}#{n2}: {}", t.to_text()),
        )?;
    }
    Ok(())
}

fn cli_commands() -> Vec<Vec<String>> {
    let root = repo();
    let mut files: Vec<PathBuf> = ["atlases", "atlases/negative"]
        .iter()
        .flat_map(|d| std::fs::read_dir(root.join(d)).unwrap())
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "atlas"))
        .collect();
    files.sort();
    let s = |p: &PathBuf| p.display().to_string();
    let mut cmds: Vec<Vec<String>> = vec![
        vec!["poset".into(), "2".into()],
        vec!["decompose".into(), "23274542314641".into()],
        vec!["polarity".into(), "1221".into()],
        vec!["causality".into(), "23274542314641".into()],
        vec!["export-dot".into(), "poset".into(), "2".into()],
    ];
    for m in ["bottleneck.model", "bottleneck_split.model"] {
        cmds.push(vec![
            "polarity".into(),
            "--model".into(),
            s(&root.join("models").join(m)),
        ]);
    }
    let mut all = vec!["validate".to_string(), "--jobs".into(), "4".into()];
    all.extend(files.iter().map(s));
    cmds.push(all);
    for f in &files {
        for sub in [
            &["reconstruct"][..],
            &["invariants"],
            &["export-dot", "complex"],
            &["export-dot", "trajectory"],
        ] {
            let mut c: Vec<String> = sub.iter().map(|x| x.to_string()).collect();
            c.push(s(f));
            cmds.push(c);
        }
    }
    let pair = |a: &str, b: &str| vec!["sum".into(), s(&root.join(a)), s(&root.join(b))];
    cmds.push(pair("atlases/disk.atlas", "atlases/annulus.atlas"));
    cmds.push(pair("atlases/annulus.atlas", "atlases/annulus.atlas"));
    cmds
}

fn determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_holo");
    for args in cli_commands() {
        let run = || Command::new(exe).args(&args).output().map_err(|e| e.to_string());
        let (first, second) = (run()?, run()?);
        ensure(
            first.stdout == second.stdout && first.stderr == second.stderr && first.status == second.status,
            || format!("holo {} differs between runs", args.join(" ")),
        )?;
        ensure(first.status.code().is_some_and(|c| c <= 2), || {
            format!("holo {} crashed", args.join(" "))
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (
            1,
            "reference word decomposition",
            Duration::from_millis(1),
            reference_decomposition,
        ),
        (
            2,
            "polarity oracle equivalence",
            Duration::from_secs(60),
            polarity_equivalence,
        ),
        (
            3,
            "causality fixed points",
            Duration::from_secs(10),
            causality_fixed_points,
        ),
        (4, "poset sanity", Duration::from_secs(1), poset_sanity),
        (
            5,
            "reconstruction oracles",
            Duration::from_secs(3),
            reconstruction_oracles,
        ),
        (
            6,
            "chi(X) = chi(T) on random assemblies",
            Duration::from_secs(30),
            random_assemblies,
        ),
        (7, "holography under refinement", Duration::from_secs(1), holography),
        (
            8,
            "cocycle negative control",
            Duration::from_secs(1),
            cocycle_negative_control,
        ),
        (9, "surgery formulas", Duration::from_secs(2), surgery_formulas),
        (10, "cli determinism", Duration::from_secs(120), determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}")));
        let known = KNOWN_FAILING.contains(&id);
        match &result {
            Ok(()) => println!("criterion {id:>2} PASS {name} ({} ms)", elapsed.as_millis()),
            Err(why) => println!(
                "criterion {id:>2} FAIL {name} ({} ms): {}{}",
                elapsed.as_millis(),
                why.lines().next().unwrap_or(""),
                if known { " [known]" } else { "" }
            ),
        }
        if result.is_ok() == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
