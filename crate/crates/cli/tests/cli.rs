use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_horoflex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn golden_reports() {
    for ex in ["example1", "example2"] {
        let fresh = ok(&["analyze", &path(&format!("{ex}.json"))]);
        let golden = std::fs::read_to_string(data(&format!("{ex}.report.json"))).unwrap();
        assert_eq!(fresh, golden, "{ex}");
    }
}

#[test]
fn example_verdicts() {
    let one: Value = serde_json::from_str(&ok(&["analyze", &path("example1.json")])).unwrap();
    assert_eq!(one["verdict"], "NOT_FLEXIBLE");
    assert_eq!(one["certificates"]["hyperplane_normal"], serde_json::json!([0, 1]));
    let two: Value = serde_json::from_str(&ok(&["flexibility", &path("example2.json")])).unwrap();
    assert_eq!(two["verdict"], "FLEXIBLE");
    assert_eq!(two["gamma_min_rays"], serde_json::json!([[1, 0], [2, -1]]));
    assert_eq!(ok(&["flexibility", "--quiet", &path("semisimple-a1.json")]), "FLEXIBLE\n");
}

#[test]
fn fresh_reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    for ex in ["example1", "example2", "semisimple-a1"] {
        let report = ok(&["analyze", &path(&format!("{ex}.json"))]);
        let file = dir.path().join(format!("{ex}.report.json"));
        std::fs::write(&file, &report).unwrap();
        let verdict = ok(&["verify", "--quiet", file.to_str().unwrap()]);
        let doc: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(verdict.trim(), doc["verdict"]);
    }
}

#[test]
fn tampered_reports_are_rejected() {
    let report: Value = serde_json::from_str(&ok(&["analyze", &path("example2.json")])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut tampers: Vec<Value> = Vec::new();
    let mut t = report.clone();
    t["verdict"] = "NOT_FLEXIBLE".into();
    t["certificates"] = serde_json::json!({ "hyperplane_normal": [0, 1] });
    tampers.push(t);
    let mut t = report.clone();
    t["ray_statuses"][1]["status"]["witness"] = serde_json::json!([2, 0]);
    tampers.push(t);
    let mut t = report.clone();
    t["dim_X"] = 2.into();
    tampers.push(t);
    let mut t = report.clone();
    t["theta_rays"] = serde_json::json!([]);
    tampers.push(t);
    for (i, t) in tampers.iter().enumerate() {
        let file = dir.path().join(format!("t{i}.json"));
        std::fs::write(&file, serde_json::to_string(t).unwrap()).unwrap();
        let out = run(&["verify", file.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(1), "tamper {i} accepted");
    }
}

#[test]
fn bad_input_exits_with_2() {
    let cases = [
        "not json",
        r#"{"group":{"torus_rank":1},"generators":[[1,2]]}"#,
        r#"{"group":{"simple_factors":[{"type":"A","rank":1}]},"generators":[[-1]]}"#,
        r#"{"group":{"simple_factors":[{"type":"G","rank":3}]},"generators":[[1,0,0]]}"#,
        r#"{"group":{"torus_rank":1},"generators":[[1]],"extra":0}"#,
        r#"{"group":{"torus_rank":1},"generators":[[1.5]]}"#,
    ];
    for c in cases {
        let out = run(&["analyze"], Some(c));
        assert_eq!(out.status.code(), Some(2), "{c}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!out.stderr.is_empty());
    }
    for args in [
        vec!["analyze", "--bounds", "degree"],
        vec!["analyze", "--bounds", "depth=3"],
        vec!["orbits", "--quiet"],
        vec!["roots", "--ray", "9"],
        vec!["lnd", "--ray", "1"],
    ] {
        let mut args = args.clone();
        let p = path("example1.json");
        args.push(&p);
        assert_eq!(run(&args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn strict_undecided_exits_with_3() {
    let args = ["analyze", "--bounds", "module_degree=0", &path("example2.json")];
    let out = run(&args, None);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "UNDECIDED");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict, None).status.code(), Some(3));
    let decided = run(&["analyze", "--strict", &path("example2.json")], None);
    assert_eq!(decided.status.code(), Some(0));
}

#[test]
fn bounds_override_input_document() {
    let input = r#"{"group":{"simple_factors":[{"type":"A","rank":1}],"torus_rank":1},
        "generators":[[2,0],[1,1],[1,2]],"bounds":{"degree":20,"root_height":9}}"#;
    let out = run(&["flexibility", "--bounds", "root_height=11"], Some(input));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["bounds_used"]["degree"], 20);
    assert_eq!(doc["bounds_used"]["root_height"], 11);
}

#[test]
fn large_integers_are_strings() {
    let input = r#"{"group":{"torus_rank":1},"generators":[["9007199254740993"],[9007199254740992]]}"#;
    let out = run(&["orbits"], Some(input));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let gens = &doc["orbits"][1]["face_generators"];
    assert_eq!(gens[0][0], "9007199254740993");
    assert_eq!(gens[1][0], "9007199254740992");
    assert_eq!(doc["orbits"][0]["face_rays"][0][0], 1);
}

#[test]
fn other_commands() {
    let holes: Value =
        serde_json::from_str(&ok(&["holes", "--bounds", "degree=6", "--oracle", &path("example1.json")])).unwrap();
    assert_eq!(holes["holes"], serde_json::json!([[1, 0], [3, 0], [5, 0]]));
    assert_eq!(holes["oracle"]["agree"], true);
    let lnd: Value = serde_json::from_str(&ok(&["lnd", &path("example2.json")])).unwrap();
    let found: Vec<&Value> =
        lnd["derivations"].as_array().unwrap().iter().filter(|d| d.get("degree").is_some()).collect();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["degree"], serde_json::json!([1, 3]));
    let roots: Value =
        serde_json::from_str(&ok(&["roots", "--ray", "1", "--height", "4", &path("example2.json")])).unwrap();
    let es: Vec<&Value> = roots["rays"][0]["roots"].as_array().unwrap().iter().map(|r| &r["e"]).collect();
    assert_eq!(es, [&serde_json::json!([0, 1]), &serde_json::json!([1, 3])]);
    let orbits = ok(&["orbits", "--format", "text", &path("example1.json")]);
    assert!(orbits.contains("dim 1 codim 2: face (1,0)"));
    let text = ok(&["analyze", "--format", "text", "--oracle", &path("example2.json")]);
    assert!(text.contains("verdict: FLEXIBLE"));
    assert!(text.contains("oracle:"));
}

#[test]
fn output_is_deterministic() {
    let a = ok(&["analyze", "--oracle", &path("example2.json")]);
    let b = ok(&["analyze", "--oracle", &path("example2.json")]);
    assert_eq!(a, b);
}
