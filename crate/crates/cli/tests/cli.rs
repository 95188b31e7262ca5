use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut full: Vec<&str> = args.to_vec();
    let o = out.to_str().unwrap().to_string();
    full.extend(["--json", &o]);
    let res = strata(&full);
    let text = std::fs::read_to_string(&out)
        .unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&res.stderr)));
    (
        serde_json::from_str(&text).unwrap(),
        res.status.code().unwrap(),
    )
}

fn path(name: &str) -> String {
    corpus(name).to_str().unwrap().to_string()
}

#[test]
fn info_dimensions() {
    let (r, code) = report(&["info", &path("ex43.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["results"]["dim"], 13);
    let (r, _) = report(&["info", &path("ex414.alg")]);
    assert_eq!(r["results"]["dim"], 11);
}

#[test]
fn one_vertex_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k.alg");
    std::fs::write(&f, "field Q\nvertices 1\n").unwrap();
    let (r, code) = report(&["info", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["dim"], 1);
}

#[test]
fn strata_table() {
    let (r, _) = report(&["strata", &path("ex43.alg")]);
    let row = &r["results"]["strata"][1];
    assert_eq!(row["proper_standard"], serde_json::json!([1, 1, 0]));
    assert_eq!(row["standard_is_stone"], true);
    assert_eq!(row["proper_standard_is_brick"], true);
    let (r, _) = report(&["strata", &path("ex414.alg")]);
    assert_eq!(
        r["results"]["strata"][2]["proper_standard"],
        serde_json::json!([0, 1, 1])
    );
}

#[test]
fn check_all_on_ex43() {
    let (r, code) = report(&["check", &path("ex43.alg"), "--all"]);
    assert_eq!(code, 0);
    let rows = r["results"]["choices"].as_array().unwrap();
    let verdict = |c: &str| rows.iter().find(|x| x["choice"] == c).unwrap()["verdict"].clone();
    assert_eq!(verdict("d,p,d"), "pass");
    assert_eq!(verdict("d,d,d"), "fail");
}

#[test]
fn check_choice_exit_codes() {
    let (r, code) = report(&["check", &path("ex43.alg"), "--choice", "d,p,d"]);
    assert_eq!(code, 0);
    for p in r["results"]["projectives"].as_array().unwrap() {
        assert_eq!(p["membership"]["verified"], true);
    }
    let (_, code) = report(&["check", &path("ex43.alg"), "--choice", "d,d,d"]);
    assert_eq!(code, 1);
    let (_, code) = report(&["check", &path("ex414.alg"), "--choice", "p,d,p"]);
    assert_eq!(code, 0);
}

#[test]
fn ringel_ex414() {
    let (r, code) = report(&["ringel", &path("ex414.alg"), "--choice", "p,d,p"]);
    assert_eq!(code, 0);
    let d = &r["results"]["dual"];
    assert_eq!(d["vertices"], 3);
    assert_eq!(
        d["arrow_counts"],
        serde_json::json!([[1, 0, 0], [1, 0, 2], [0, 1, 0]])
    );
    let layers = &r["results"]["double_dual"]["layers"];
    for k in ["dim", "cartan", "arrow_counts", "isomorphism"] {
        assert_eq!(layers[k], true);
    }
    assert_eq!(
        r["results"]["wakamatsu"]["tilting"],
        "resolution_beyond_cap"
    );
}

#[test]
fn univext_kronecker_diverges() {
    let (r, code) = report(&["univext", &path("kron.alg"), "M", "M", "--cap", "8"]);
    assert_eq!(code, 2);
    assert_eq!(r["results"]["trace"]["status"], "cap_exceeded");
    let dims = r["results"]["dims"].as_array().unwrap();
    assert_eq!(dims.len(), 9);
    for (s, d) in dims.iter().enumerate() {
        assert_eq!(d, &serde_json::json!([s + 1, s + 1]));
    }
}

#[test]
fn semisimple_system_is_simples() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ss.alg");
    std::fs::write(&f, "field Q\nvertices 1 2\n").unwrap();
    let (r, code) = report(&["system", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    for (i, m) in r["results"]["members"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
    {
        let mut e = vec![0, 0];
        e[i] = 1;
        assert_eq!(m["projective"], serde_json::json!(e));
    }
}

#[test]
fn reports_are_byte_identical() {
    let run = || {
        let o = strata(&[
            "ringel",
            &path("ex414.alg"),
            "--choice",
            "p,d,p",
            "--json",
            "-",
        ]);
        o.stdout
    };
    let a = run();
    assert!(!a.is_empty());
    assert_eq!(a, run());
}

#[test]
fn digest_depends_on_settings() {
    let (a, _) = report(&["info", &path("ex43.alg")]);
    let (b, _) = report(&["info", &path("ex43.alg"), "--cap", "3"]);
    assert_ne!(a["input_digest"], b["input_digest"]);
    assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn prime_field_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "field = \"F13\"\ncap = 4\n").unwrap();
    let (r, code) = report(&[
        "check",
        &path("ex43.alg"),
        "--choice",
        "d,p,d",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["settings"]["field"], "F13");
    assert_eq!(r["settings"]["cap"], 4);
}

#[test]
fn input_errors_exit_three_without_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "vertices 1\narrow a : 1 -> 9\n").unwrap();
    let o = strata(&[
        "info",
        bad.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
    let o = strata(&["check", &path("ex43.alg"), "--choice", "d,q,d"]);
    assert_eq!(o.status.code(), Some(3));
    let o = strata(&["univext", &path("ex43.alg"), "X1", "S1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = strata(&["info", &path("ex43.alg"), "--field", "F12"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ringel_on_unstratified_choice_fails() {
    let o = strata(&["ringel", &path("ex43.alg"), "--choice", "d,d,d"]);
    assert_eq!(o.status.code(), Some(1));
}
