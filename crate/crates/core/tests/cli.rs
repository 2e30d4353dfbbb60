use std::path::PathBuf;
use std::process::{Command, Output};

use isofill::complex::Chain;
use isofill::group::Presentation;
use isofill::rational::{frac, int};

fn grp(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "presentations", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn isofill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofill"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn load(name: &str) -> Presentation {
    Presentation::parse(&std::fs::read_to_string(grp(name)).unwrap()).unwrap()
}

#[test]
fn fill_scaled_commutator() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.json");
    let t = grp("torus.grp");
    let o = isofill(&[
        "fill",
        "--presentation",
        &t,
        "--cycle",
        "x^3 y^3 x^-3 y^-3",
        "--scale",
        "1/12",
        "--radius",
        "6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "3/4\n");
    let p = load("torus.grp");
    let witness = Chain::from_json(&p, &std::fs::read_to_string(&out).unwrap(), 2).unwrap();
    assert_eq!(witness.len(), 9);
    assert!(witness.iter().all(|(_, q)| *q == frac(1, 12)));
}

#[test]
fn fill_empty_cycle_is_zero() {
    let o = isofill(&["fill", "--presentation", &grp("torus.grp"), "--cycle", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0/1\n");
}

#[test]
fn fill_outside_window_exits_two() {
    let o = isofill(&[
        "fill",
        "--presentation",
        &grp("torus.grp"),
        "--cycle",
        "x^3 y^3 x^-3 y^-3",
        "--radius",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no in-window filling"));
    // an open path is never a boundary
    let o = isofill(&[
        "fill",
        "--presentation",
        &grp("torus.grp"),
        "--cycle",
        "x y",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no in-window filling"));
}

#[test]
fn fill_from_chain_file() {
    let p = load("z2.grp");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    let (c, _) =
        isofill::complex::trace_word(&p, &p.parse_word("x^2").unwrap(), &p.identity()).unwrap();
    std::fs::write(&path, c.scaled(&int(3)).to_json(&p).unwrap()).unwrap();
    let o = isofill(&[
        "fill",
        "--presentation",
        &grp("z2.grp"),
        "--chain",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "3/1\n");
}

#[test]
fn isoperimetric_torus_scaled_family() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("table.csv");
    let o = isofill(&[
        "isoperimetric",
        "--presentation",
        &grp("torus.grp"),
        "--budgets",
        "1,1,1",
        "--family",
        "scaled-commutator",
        "--scales",
        "2,4,8",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "budget,lower_bound_num,lower_bound_den,witness_id,radius"
    );
    assert_eq!(lines[1], "1/1,1,2,scaled-commutator:2,16");
    assert_eq!(lines[2], "1/1,1,1,scaled-commutator:4,16");
    assert_eq!(lines[3], "1/1,2,1,scaled-commutator:8,16");
    assert_eq!(
        lines[4],
        "NOT LINEARLY BOUNDED (Theorem ⇒ f₁(l₀) = ∞ for some l₀)"
    );
    let file = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(
        file,
        lines[..4]
            .iter()
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
}

#[test]
fn isoperimetric_commutator_squares() {
    let o = isofill(&[
        "isoperimetric",
        "--presentation",
        &grp("torus.grp"),
        "--budgets",
        "4,8,12,16",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let bounds: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .take(4)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(bounds, ["1", "4", "9", "16"]);
}

#[test]
fn isoperimetric_free_group_is_zero() {
    let o = isofill(&[
        "isoperimetric",
        "--presentation",
        &grp("free2.grp"),
        "--budgets",
        "1,2,4",
        "--exhaustive-norm",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in text.lines().skip(1).take(3) {
        assert_eq!(line.split(',').nth(1), Some("0"));
    }
    assert_eq!(
        text.lines().last(),
        Some("LINEARLY BOUNDED (image is zero)")
    );
}

#[test]
fn isoperimetric_finite_group_prints_constant() {
    let o = isofill(&[
        "isoperimetric",
        "--presentation",
        &grp("z2.grp"),
        "--budgets",
        "1,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("3/1,3,2,vertex,"));
    assert_eq!(text.lines().last(), Some("f1(l) = (1/2) l"));
}

#[test]
fn nu_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nu.json");
    let o = isofill(&[
        "nu",
        "--presentation",
        &grp("torus.grp"),
        "--l",
        "2",
        "--epsilon",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("|nu_l| = 7/4"));
    assert!(text.contains("filling_norm(boundary(nu_l)) = 7/4"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    assert!(!text.contains("FAIL"));
    let nu = Chain::from_json(
        &load("torus.grp"),
        &std::fs::read_to_string(path).unwrap(),
        2,
    )
    .unwrap();
    assert_eq!(nu.l1_norm(), frac(7, 4));
}

#[test]
fn nu_in_too_small_window_is_an_error() {
    let o = isofill(&[
        "nu",
        "--presentation",
        &grp("torus.grp"),
        "--l",
        "1",
        "--radius",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("window too small"));
}

#[test]
fn finite_constant_and_check() {
    let o = isofill(&["finite-constant", "--presentation", &grp("z2.grp")]);
    assert_eq!(stdout(&o), "1/2\n");
    let o = isofill(&["finite-constant", "--presentation", &grp("z3.grp")]);
    assert_eq!(stdout(&o), "1/3\n");
    let o = isofill(&["finite-constant", "--presentation", &grp("torus.grp")]);
    assert_eq!(o.status.code(), Some(1));
    let o = isofill(&[
        "check",
        "--presentation",
        &grp("torus.grp"),
        "--radius",
        "3",
    ]);
    assert_eq!(stdout(&o), "injective: true\n");
    let o = isofill(&["check", "--presentation", &grp("z2.grp"), "--radius", "1"]);
    assert_eq!(stdout(&o), "injective: false\n");
}

#[test]
fn usage_errors_exit_one() {
    let t = grp("torus.grp");
    for args in [
        vec!["fill", "--presentation", t.as_str()],
        vec!["fill", "--presentation", "/nonexistent.grp", "--cycle", "x"],
        vec!["fill", "--presentation", t.as_str(), "--cycle", "q"],
        vec![
            "fill",
            "--presentation",
            t.as_str(),
            "--cycle",
            "x",
            "--scale",
            "1/0",
        ],
        vec!["check", "--presentation", t.as_str(), "--radius", "0"],
        vec![
            "isoperimetric",
            "--presentation",
            t.as_str(),
            "--budgets",
            "1,2",
            "--scales",
            "1",
        ],
        vec![
            "isoperimetric",
            "--presentation",
            t.as_str(),
            "--budgets",
            "-1",
        ],
        vec![
            "isoperimetric",
            "--presentation",
            t.as_str(),
            "--budgets",
            "1",
            "--family",
            "bogus",
        ],
    ] {
        let o = isofill(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn resource_cap_exits_three() {
    let o = isofill(&[
        "check",
        "--presentation",
        &grp("surface2.grp"),
        "--radius",
        "1",
        "--ball-cap",
        "500",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = isofill(&[
        "isoperimetric",
        "--presentation",
        &grp("torus.grp"),
        "--budgets",
        "4",
        "--exhaustive-norm",
        "6",
        "--exhaustive-cap",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "isoperimetric",
        "--presentation",
        &grp("torus.grp"),
        "--budgets",
        "4,8",
        "--exhaustive-norm",
        "4",
    ];
    let a = isofill(&args);
    let b = isofill(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
