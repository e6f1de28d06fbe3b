use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kquiver"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn roots_of_a1() {
    let o = run(&["roots", "--quiver", &data("a1.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1)\n");
}

#[test]
fn resolve_inbound_a3_with_given_partition() {
    let (q, m) = (data("a3_inbound.json"), data("a3_inbound_m.json"));
    let o = run(&[
        "resolve",
        "--quiver",
        &q,
        "--m",
        &m,
        "--partition",
        &data("a3_inbound_partition.json"),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("i = (2,1,3,2,3)\nr = (1,2,1,2,1)"), "{out}");
    let auto = run(&["resolve", "--quiver", &q, "--m", &m, "--format", "json"]);
    assert!(auto.status.success());
}

#[test]
fn a2_coefficients() {
    let o = run(&["qcoeff", "--quiver", &data("a2.json"), "--m", &data("a2_m111.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "() (1): 1\n");
}

#[test]
fn json_output_is_versioned_and_deterministic() {
    let args = [
        "kclass",
        "--quiver",
        &data("a3_inbound.json"),
        "--m",
        &data("a3_inbound_m.json"),
        "--format",
        "json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kclass"].as_array().unwrap().len(), 12);
}

#[test]
fn inline_orbit_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coh.txt");
    let m = r#"{"m": [{"root": [1, 0], "mult": 1}, {"root": [0, 1], "mult": 1}]}"#;
    let o = run(&[
        "coh",
        "--quiver",
        &data("a2.json"),
        "--m",
        m,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("codimension: 1\n"), "{text}");
}

#[test]
fn inbound_a3_cohomology() {
    let o = run(&[
        "coh",
        "--quiver",
        &data("a3_inbound.json"),
        "--m",
        &data("a3_inbound_m.json"),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("codimension: 3\n"));
}

#[test]
fn gpoly_of_one_box() {
    let o = run(&["gpoly", "1", "2", "2"]);
    assert_eq!(stdout(&o), "1 - e1_1^-1*e1_2^-1*e2_1*e2_2\n");
}

#[test]
fn exit_codes() {
    let missing = run(&["roots", "--quiver", "does-not-exist.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_json = run(&["roots", "--quiver", "{\"vertices\": 2"]);
    assert_eq!(bad_json.status.code(), Some(2));
    let cycle = run(&[
        "roots",
        "--quiver",
        r#"{"vertices": 3, "arrows": [[1, 2], [2, 3], [3, 1]]}"#,
        "--format",
        "json",
    ]);
    assert_eq!(cycle.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&cycle.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
    let wrong_rank = run(&[
        "kclass",
        "--quiver",
        &data("a2.json"),
        "--m",
        r#"{"m": [{"root": [1, 0, 0], "mult": 1}]}"#,
    ]);
    assert_eq!(wrong_rank.status.code(), Some(1));
    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_single_criterion() {
    let o = run(&["verify", "--only", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("criterion 3 PASS"));
}
