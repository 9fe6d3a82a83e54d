use std::process::{Command, Output};

fn holo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holo"))
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_prints_parts() {
    let o = holo(&["decompose", "23274542314641"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[2][3 2 7][4][5 4 2 3][1 4 6 4 1]\n");
    assert_eq!(holo(&["decompose", "21"]).status.code(), Some(2));
    assert_eq!(holo(&["decompose", "2x"]).status.code(), Some(2));
}

#[test]
fn poset_one() {
    let out = stdout(&holo(&["poset", "1"]));
    assert!(out.starts_with("poset n=1 elements=3 covers=2\n"));
    assert_eq!(out.lines().filter(|l| l.contains(" < ")).count(), 2);
}

#[test]
fn reconstruct_annulus() {
    let o = holo(&["reconstruct", "atlases/annulus.atlas"]);
    assert_eq!(stdout(&o), "chi=0 boundary_circles=2 b0=1 b1=1 orientable=1\n");
    let o = holo(&["reconstruct", "atlases/negative/twisted.atlas"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(holo(&["reconstruct", "atlases/missing.atlas"]).status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    assert!(
        holo(&["validate", "atlases/disk.atlas", "atlases/double_chart_lower.atlas"])
            .status
            .success()
    );
    let o = holo(&["validate", "--level", "holographic", "atlases/double_chart_lower.atlas"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NotHolographic"));
    assert_eq!(
        holo(&["validate", "--level", "bogus", "atlases/disk.atlas"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(holo(&["validate"]).status.code(), Some(2));
}

#[test]
fn validate_jobs_keep_input_order() {
    let files = [
        "atlases/negative/unfilled.atlas",
        "atlases/disk.atlas",
        "atlases/annulus.atlas",
        "atlases/dented.atlas",
    ];
    let serial = holo(&[&["validate"][..], &files].concat());
    let parallel = holo(&[&["validate", "--jobs", "3"][..], &files].concat());
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.status.code(), Some(1));
    let order: Vec<String> = stdout(&serial)
        .lines()
        .filter_map(|l| l.strip_prefix("file ").map(String::from))
        .collect();
    assert_eq!(order, files);
}

#[test]
fn polarity_of_pattern_and_model() {
    assert_eq!(stdout(&holo(&["polarity", "121"])), "(1,+)(2,+)(1,-)\n");
    let o = holo(&["polarity", "--model", "models/bottleneck_split.model"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("agree=1\n"));
    assert_eq!(holo(&["polarity"]).status.code(), Some(2));
}

#[test]
fn sum_writes_a_valid_atlas() {
    let dir = std::env::temp_dir().join(format!("holo-sum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("sum.atlas");
    let o = holo(&[
        "sum",
        "atlases/disk.atlas",
        "atlases/disk.atlas",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("# strata_formulas status=pass"));
    let v = holo(&["validate", out.to_str().unwrap()]);
    assert!(v.status.success());
    let r = holo(&["reconstruct", out.to_str().unwrap()]);
    assert!(stdout(&r).starts_with("chi=1 boundary_circles=1"));
    let bad = holo(&["sum", "atlases/disk.atlas", "atlases/disk.atlas", "--base1", "D1"]);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn dot_exports() {
    for args in [
        &["export-dot", "poset", "2"][..],
        &["export-dot", "complex", "atlases/disk.atlas"],
        &["export-dot", "trajectory", "atlases/dented.atlas"],
    ] {
        let o = holo(args);
        assert!(o.status.success());
        assert!(stdout(&o).contains("digraph") || stdout(&o).contains("graph"));
    }
    assert_eq!(holo(&["export-dot", "surface", "x"]).status.code(), Some(2));
}
