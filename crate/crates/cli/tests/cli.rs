use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn liepcd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liepcd"))
        .args(args)
        .env_remove("LIEPCD_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn emitted_sl2_file_verifies() {
    let out = liepcd(&["catalog", "emit", "sl2", "--p", "3"]);
    assert!(out.status.success());
    let path = scratch("sl2.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = liepcd(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["dim"], 3);
}

#[test]
fn kv_second_cohomology() {
    let path = scratch(
        "kv.json",
        r#"{"algebra": "nonabelian2/GF(3)", "name": "Kv", "dim": 1, "action": [[[[0]]], [[[2]]]]}"#,
    );
    let out = liepcd(&["cohomology", "--module", path.to_str().unwrap(), "--max-degree", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["dims"], serde_json::json!([0, 1, 1, 0]));
}

#[test]
fn exit_codes() {
    let garbage = scratch("garbage.json", "{ not json");
    let out = liepcd(&["verify", garbage.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["exit"], 2);

    let bad_pmap = scratch(
        "bad-pmap.json",
        r#"{"name": "a", "p": 2, "k": 1, "modulus": [0, 1], "dim": 2, "basis": ["x", "y"],
            "brackets": [{"i": 0, "j": 1, "value": [[1], [0]]}], "pmap": [[[0], [0]], [[0], [0]]]}"#,
    );
    let out = liepcd(&["verify", bad_pmap.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["axioms"]["ad_compat_ok"], false);

    assert_eq!(liepcd(&["torus", "--entry", "nosuch", "--p", "2"]).status.code(), Some(2));
    assert_eq!(liepcd(&["catalog", "emit", "sl2", "--p", "2"]).status.code(), Some(2));
    assert_eq!(liepcd(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_and_seeded() {
    let args = ["nilpotent", "--entry", "sl2/GF(5)", "--no-basis-scan", "--json", "--seed", "4"];
    let a = liepcd(&args);
    let b = liepcd(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["seed"], 4);

    let bin = env!("CARGO_BIN_EXE_liepcd");
    let run_env = |extra: &[&str]| {
        let out = Command::new(bin)
            .args(["subalg2", "--entry", "sl2/GF(3)", "--random", "--samples", "5", "--json"])
            .args(extra)
            .env("LIEPCD_SEED", "9")
            .output()
            .unwrap();
        json_of(&out)["seed"].clone()
    };
    assert_eq!(run_env(&[]), 9);
    assert_eq!(run_env(&["--seed", "2"]), 2);
}

#[test]
fn analyses_from_catalog() {
    let v = json_of(&liepcd(&["torus", "--entry", "torus(2)", "--p", "3", "--json"]));
    assert_eq!(v["is_torus"], true);
    let v = json_of(&liepcd(&["rcohomology", "--entry", "heisenberg/GF(2)", "--max-degree", "2", "--json"]));
    assert_eq!(v["ext_dims"], serde_json::json!([1, 2, 3]));
    let v = json_of(&liepcd(&["classify-cdstar", "--entry", "torus(1)/GF(2)", "--json"]));
    assert_eq!(v["verdict"], "zero");
    let v = json_of(&liepcd(&["subalg2", "--entry", "nonabelian2/GF(2)", "--exhaustive", "--json"]));
    assert_eq!(v["outcome"], "found");
    let out = liepcd(&["catalog", "list"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("heisenberg-toral"));
}

#[test]
fn text_and_json_render_the_same_report() {
    let args = ["torus", "--entry", "torus(1)/GF(3)"];
    let text = String::from_utf8(liepcd(&args).stdout).unwrap();
    let json = json_of(&liepcd(&[&args[..], &["--json"]].concat()));
    assert!(text.contains("is_torus: true"));
    assert_eq!(json["is_torus"], true);
    for key in json.as_object().unwrap().keys() {
        assert!(text.contains(&format!("{key}:")), "{key}");
    }
}

#[test]
fn suite_subset() {
    let out = liepcd(&["suite", "--criterion", "1", "--criterion", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    assert!(v["criteria"][0]["rows"].as_array().unwrap().iter().all(|r| r["anchor"].is_string()));
}
