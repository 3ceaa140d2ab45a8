use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn resdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn compute_digon_resistance() {
    let out = resdist(&["compute", "--fixture", "DIGON"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(
        v["resistance"]["exact"],
        serde_json::json!([["0", "1"], ["1", "0"]])
    );
    assert_eq!(v["pseudoinverse"]["exact"][0][1], "-1/4");
    assert_eq!(v["kappa"], "1");
    assert_eq!(v["method"], "partitioned");
    assert_eq!(v["tool"]["name"], "resdist");
    assert_eq!(v["config"]["input"]["fixture"], "DIGON");
}

#[test]
fn compute_cex_is_flagged_unbalanced() {
    let v = json_of(&resdist(&["compute", "--fixture", "cex"]));
    assert_eq!(v["graph"]["balanced"], false);
    assert_eq!(v["kappa"], Value::Null);
    assert_eq!(v["method"], "rank_factorization");
    assert_eq!(v["resistance"]["exact"][2][0], "23/20");
    assert_eq!(v["resistance"]["decimal"][2][0], "1.1500");
}

#[test]
fn precision_and_exact_only() {
    let v = json_of(&resdist(&[
        "compute",
        "--fixture",
        "FIG_D1",
        "--precision",
        "2",
    ]));
    assert_eq!(v["pseudoinverse"]["decimal"][0][0], "0.64");
    assert_eq!(v["config"]["precision"], 2);
    let v = json_of(&resdist(&[
        "compute",
        "--fixture",
        "FIG_D1",
        "--exact-only",
    ]));
    assert!(v["pseudoinverse"].get("decimal").is_none());
    assert_eq!(v["pseudoinverse"]["exact"][0][0], "23/36");
    assert_eq!(
        resdist(&["compute", "--fixture", "C3", "--precision", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    let ok = resdist(&["verify", "--fixture", "FIG_D", "--identities"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json_of(&ok);
    assert_eq!(v["all_hold"], true);
    assert!(v["identities"]
        .as_object()
        .unwrap()
        .values()
        .all(|s| s["status"] == "pass"));

    let bad = resdist(&["verify", "--fixture", "CEX", "--identities", "--theorem"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json_of(&bad);
    assert_eq!(v["violations"][0]["i"], 3);
    assert_eq!(v["violations"][0]["j"], 1);
    assert_eq!(v["identities"]["sum_identity"]["status"], "skipped");
    assert_eq!(v["theorem"]["status"], "not_applicable");

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "path.txt", "1 2\n2 3\n");
    let out = resdist(&["verify", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strongly connected"));
}

#[test]
fn verify_theorem_on_fig_d() {
    let v = json_of(&resdist(&["verify", "--fixture", "FIG_D", "--theorem"]));
    let cert = &v["theorem"]["certificate"];
    assert_eq!(cert["status"], "certified");
    assert_eq!(cert["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(cert["blocks"][1]["attached_at"], 6);
    assert_eq!(v["theorem"]["consistent"], true);
    assert!(v.get("timings").is_none());
    let t = json_of(&resdist(&["verify", "--fixture", "FIG_D", "--timings"]));
    assert!(t["timings"]["resistance_ms"].is_u64());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "g.txt", "n 3\n1 2\n# fine\n2 2\n");
    let out = resdist(&["compute", "--input", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4: self-loop at vertex 2"), "{err}");

    let p = write(
        dir.path(),
        "g.json",
        "{\n  \"n\": 2,\n  \"arcs\": [\n    [1, 2],\n    [1, 3]\n  ]\n}\n",
    );
    let out = resdist(&["compute", "--input", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5: arc #1"), "{err}");

    assert_eq!(
        resdist(&["compute", "--fixture", "NOPE"]).status.code(),
        Some(2)
    );
    assert_eq!(
        resdist(&["compute", "--input", "/nonexistent/x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(resdist(&["compute"]).status.code(), Some(2));
    assert_eq!(
        resdist(&["compute", "--fixture", "C3", "--input", "x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_input_and_format_override() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "c3.graph",
        "{\"n\": 3, \"arcs\": [[1, 2], [2, 3], [3, 1]]}",
    );
    assert_eq!(resdist(&["compute", "--input", &p]).status.code(), Some(2));
    let v = json_of(&resdist(&["compute", "--input", &p, "--format", "json"]));
    assert_eq!(v["resistance"]["exact"][0][1], "2/3");
    assert_eq!(v["config"]["format"], "json");
}

#[test]
fn decompose_examples() {
    let v = json_of(&resdist(&["decompose", "--fixture", "FIG_D"]));
    assert!(v["cut_vertices"]
        .as_array()
        .unwrap()
        .contains(&Value::from(6)));
    assert_eq!(v["directed_cactus"], false);
    assert_eq!(v["class_c"]["status"], "certified");
    assert!(v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|b| b["conjecture_holds"] == true));

    let v = json_of(&resdist(&["decompose", "--fixture", "C3"]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["cut_vertices"], serde_json::json!([]));
    assert_eq!(v["directed_cactus"], true);

    let dir = tempfile::tempdir().unwrap();
    let cactus = resdist(&["gen", "--kind", "cactus", "--blocks", "4", "--seed", "11"]);
    let p = write(
        dir.path(),
        "cactus.txt",
        std::str::from_utf8(&cactus.stdout).unwrap(),
    );
    let v = json_of(&resdist(&["decompose", "--input", &p]));
    assert_eq!(v["directed_cactus"], true);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);

    let p = write(dir.path(), "two.txt", "1 2\n2 1\n3 4\n4 3\n");
    assert_eq!(
        resdist(&["decompose", "--input", &p]).status.code(),
        Some(2)
    );

    let v = json_of(&resdist(&["decompose", "--fixture", "CEX"]));
    assert_eq!(v["class_c"]["status"], "not_applicable");
}

#[test]
fn output_file_and_table_format() {
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("r.txt");
    let out = resdist(&[
        "compute",
        "--fixture",
        "C3",
        "--output-format",
        "table",
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dest).unwrap();
    let rows: Vec<(usize, usize)> = text
        .lines()
        .skip_while(|l| !l.trim_start().starts_with("i "))
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    let mut sorted = rows.clone();
    sorted.sort_unstable();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows, sorted);
    let widths: Vec<usize> = text.lines().skip(7).map(str::len).collect();
    assert!(widths.windows(2).all(|w| w[0] == w[1]), "{text}");
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        &["compute", "--fixture", "FIG_D"][..],
        &["verify", "--fixture", "FIG_D", "--identities", "--theorem"],
        &["decompose", "--fixture", "FIG_D"],
        &[
            "explore", "--family", "class-c", "--count", "12", "--seed", "4",
        ],
        &["fixtures"],
    ] {
        assert_eq!(resdist(args).stdout, resdist(args).stdout, "{args:?}");
    }
}

#[test]
fn gen_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"kind": "class_c_union", "blocks": 3, "piece": "balanced_random", "min_n": 3, "max_n": 5, "arc_factor_pct": 150, "seed": 9}"#;
    let spec_path = write(dir.path(), "spec.json", spec);
    let a = resdist(&["gen", "--spec", spec]);
    let b = resdist(&["gen", "--spec", &format!("@{spec_path}")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let edges = write(dir.path(), "g.txt", std::str::from_utf8(&a.stdout).unwrap());
    let as_json = resdist(&["fixtures", "--fixture", "FIG_D", "--format", "json"]);
    let jpath = write(
        dir.path(),
        "fig.json",
        std::str::from_utf8(&as_json.stdout).unwrap(),
    );
    let r1 = json_of(&resdist(&["compute", "--input", &jpath]));
    let r2 = json_of(&resdist(&["compute", "--fixture", "FIG_D"]));
    assert_eq!(r1["pseudoinverse"], r2["pseudoinverse"]);
    assert_eq!(
        resdist(&["verify", "--input", &edges, "--theorem"])
            .status
            .code(),
        Some(0)
    );

    assert_eq!(
        resdist(&["gen", "--spec", "{\"kind\": \"nope\"}"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        resdist(&["gen", "--kind", "cactus", "--min-len", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(resdist(&["gen"]).status.code(), Some(2));
}

#[test]
fn fixtures_listing() {
    let v = json_of(&resdist(&["fixtures"]));
    let names: Vec<&str> = v["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["FIG_D", "FIG_D1", "FIG_D2_TRIANGLE", "CEX", "DIGON", "C3"]
    );
    assert!(v["fixtures"][3]["provenance"]
        .as_str()
        .unwrap()
        .contains("unbalanced"));
}

#[test]
fn explore_summaries() {
    let v = json_of(&resdist(&[
        "explore", "--family", "cactus", "--count", "100",
    ]));
    assert_eq!(v["tested"], 100);
    assert_eq!(v["holding"], 100);
    assert_eq!(v["all_hold"], true);
    assert!(v["max_gap"]["gap"].is_string());

    let out = resdist(&[
        "explore",
        "--family",
        "class-c",
        "--count",
        "100",
        "--piece",
        "balanced-random",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["holding"], 100);

    let v = json_of(&resdist(&[
        "explore",
        "--family",
        "two-overlap",
        "--count",
        "40",
    ]));
    let discarded: u64 = v["discarded"]
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(v["tested"].as_u64().unwrap() + discarded, 40);

    let bad = resdist(&[
        "explore",
        "--family",
        "cactus",
        "--min-len",
        "6",
        "--max-len",
        "3",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(resdist(&["--help"]).status.code(), Some(0));
    assert_eq!(resdist(&["--version"]).status.code(), Some(0));
    assert_eq!(resdist(&["frobnicate"]).status.code(), Some(2));
}
