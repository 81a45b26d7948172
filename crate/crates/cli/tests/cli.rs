use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dessins(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dessins")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = dessins(&full);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("json report"))
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const MERMIN: &str = r#"{"edges":9,"alpha":[[1,2,4,8,7,3],[5,9,6]],"beta":[[2,5],[3,6],[4,7],[8,9]]}"#;

#[test]
fn chsh_norm_twelve_digits() {
    let o = dessins(&["chsh", "norm", "IX", "XI", "IZ", "ZI"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2.828427124746");
}

#[test]
fn chsh_rejects_non_square() {
    let o = dessins(&["chsh", "norm", "IX", "XI", "IX", "ZI"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pauli_commands() {
    assert_eq!(stdout(&dessins(&["pauli", "mul", "XX", "YY"])).trim(), "-ZZ");
    assert_eq!(stdout(&dessins(&["pauli", "commutes", "IX", "XI"])).trim(), "true");
    assert_eq!(stdout(&dessins(&["pauli", "commutes", "X", "Z"])).trim(), "false");
    assert_eq!(dessins(&["pauli", "mul", "XQ", "XX"]).status.code(), Some(2));
    assert_eq!(dessins(&["pauli", "mul", "X", "XX"]).status.code(), Some(2));
}

#[test]
fn square_census_count() {
    let o = dessins(&["magic", "census", "--squares", "--qubits", "2", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "90");
}

#[test]
fn magic_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = report(&["magic", "verify", "catalog:mermin_square"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["magic"], true);
    let plain = write(&dir, "plain.json", r#"{"observables":["XI","IX","XX"],"lines":[[0,1,2]]}"#);
    assert_eq!(dessins(&["magic", "verify", plain.to_str().unwrap()]).status.code(), Some(1));
    let broken = write(&dir, "broken.json", r#"{"observables":["XI","ZI"],"lines":[[0,1]]}"#);
    assert_eq!(dessins(&["magic", "verify", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dessin_analyze_mermin() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(&dir, "m.json", MERMIN);
    let (code, v) = report(&["dessin", "analyze", d.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["genus"], 1);
    assert_eq!(r["passport"], "[6^1 3^1, 2^4 1^1, 6^1 3^1]");
    assert_eq!(r["monodromy_group"]["order"], 36);
    let back: Value = r["dessin"].clone();
    assert_eq!(back, serde_json::from_str::<Value>(MERMIN).unwrap());
}

#[test]
fn dessin_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(&dir, "split.json", r#"{"edges":4,"alpha":[[1,2]],"beta":[[3,4]]}"#);
    assert_eq!(dessins(&["dessin", "analyze", d.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(dessins(&["dessin", "analyze", "/nonexistent/d.json"]).status.code(), Some(2));
    let d = write(&dir, "m.json", MERMIN);
    assert_eq!(dessins(&["dessin", "analyze", d.to_str().unwrap(), "--group-cap", "10"]).status.code(), Some(3));
}

#[test]
fn geometry_induce_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(&dir, "m.json", MERMIN);
    let dot = dir.path().join("g.dot");
    let (code, v) =
        report(&["geometry", "induce", d.to_str().unwrap(), "--class", "0", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["class_count"], 2);
    assert_eq!(v["results"]["classes"][0]["stabilizer"]["fingerprint"]["order"], 2);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(dessins(&["geometry", "induce", d.to_str().unwrap(), "--class", "5"]).status.code(), Some(2));
}

#[test]
fn dot_rejected_where_no_graph() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("x.dot");
    assert_eq!(dessins(&["--dot", dot.to_str().unwrap(), "pauli", "mul", "X", "X"]).status.code(), Some(2));
}

#[test]
fn identify_petersen() {
    let (code, v) = report(&["geometry", "identify", "catalog:petersen"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["canonical"]["automorphism_group_order"], "120");
    assert!(r["isomorphic_to"].as_array().unwrap().contains(&Value::from("kneser(5,2)")));
    assert!(r["complement_isomorphic_to"].as_array().unwrap().contains(&Value::from("triangular(5)")));
}

#[test]
fn polygon_exit_codes() {
    let gh = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/gh22.json");
    let (code, v) = report(&["geometry", "polygon", gh, "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["girth"], 12);
    assert_eq!(dessins(&["geometry", "polygon", gh, "--n", "4"]).status.code(), Some(1));
    assert_eq!(dessins(&["geometry", "polygon", "catalog:gq22", "--n", "4"]).status.code(), Some(0));
}

#[test]
fn hyperplanes_and_caps() {
    let (code, v) = report(&["geometry", "hyperplanes", "catalog:gq22"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["count"], 31);
    assert_eq!(r["by_kind"]["perp"], 15);
    assert_eq!(r["by_kind"]["grid"], 10);
    assert_eq!(r["by_kind"]["ovoid"], 6);
    assert_eq!(r["closed_under_addition"], true);
    let gh = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/gh22.json");
    assert_eq!(dessins(&["geometry", "hyperplanes", gh]).status.code(), Some(3));
}

#[test]
fn cliques_and_facts() {
    let (_, v) = report(&["geometry", "cliques", "catalog:heptagram"]);
    assert_eq!(v["results"]["by_size"]["6"], 7);
    assert_eq!(v["results"]["by_size"]["3"], 35);
    let (_, v) = report(&["geometry", "facts", "catalog:petersen"]);
    assert_eq!(v["results"]["independence_number"], 4);
    assert_eq!(v["results"]["edge_chromatic_number"], 4);
    assert_eq!(v["results"]["planar"], false);
}

#[test]
fn fp_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a5 = write(&dir, "a5.txt", "gens: a, b; rels: a^2, b^3, (a*b)^5");
    let (code, v) = report(&["fp", "coset", "--presentation", a5.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["index"], 60);
    assert_eq!(
        dessins(&["fp", "coset", "--presentation", a5.to_str().unwrap(), "--max-cosets", "10"]).status.code(),
        Some(3)
    );
    let q4 = write(&dir, "q4.txt", "gens: r0, r1; rels: r1^2, (r0*r1)^4");
    let (_, v) = report(&["fp", "low-index", "--presentation", q4.to_str().unwrap(), "--max-index", "4"]);
    let subgroups = v["results"]["subgroups"].as_array().unwrap();
    assert!(subgroups.iter().any(|s| s["passport"] == "[2^1 1^2, 2^2, 4^1]" && s["group_order"] == 8));
    assert_eq!(
        dessins(&["fp", "low-index", "--presentation", q4.to_str().unwrap(), "--max-index", "99"]).status.code(),
        Some(3)
    );
    let bad = write(&dir, "bad.txt", "gens: a; rels: b^2");
    assert_eq!(dessins(&["fp", "coset", "--presentation", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn belyi_verify() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write(&dir, "b3.json", r#"{"num":[[1,0],[-4,0],[6,0],[-4,0],[1,0]],"den":[[0,0],[-8,0],[4,0]]}"#);
    let d = write(&dir, "d.json", r#"{"edges":4,"alpha":[[1,2,3,4]],"beta":[[1,2],[3,4]]}"#);
    let (code, v) = report(&["belyi", "verify", "--candidate", b3.to_str().unwrap(), "--dessin", d.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["passport"], "[4^1, 2^2, 2^1 1^2]");
    let other = write(&dir, "o.json", r#"{"edges":4,"alpha":[[1,2]],"beta":[[1,3],[2,4]]}"#);
    assert_eq!(
        dessins(&["belyi", "verify", "--candidate", b3.to_str().unwrap(), "--dessin", other.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let bad = write(&dir, "bad.json", r#"{"num":[[0,0],[-1,0],[1,0]]}"#);
    assert_eq!(dessins(&["belyi", "verify", "--candidate", bad.to_str().unwrap()]).status.code(), Some(1));
    let shared = write(&dir, "shared.json", r#"{"num":[[0,0],[1,0]],"den":[[0,0],[0,0],[1,0]]}"#);
    assert_eq!(dessins(&["belyi", "verify", "--candidate", shared.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn catalog_commands() {
    let o = dessins(&["catalog", "list"]);
    assert!(stdout(&o).lines().any(|l| l == "gq22"));
    let (code, v) = report(&["catalog", "get", "triangular(7)"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["value"]["vertices"], 21);
    assert_eq!(dessins(&["catalog", "get", "nonsense"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let q4 = write(&dir, "q4.txt", "gens: r0, r1; rels: r1^2, (r0*r1)^4");
    let run = |t: &str, args: &[&str]| {
        let mut full = vec!["--json", "--threads", t];
        full.extend_from_slice(args);
        dessins(&full).stdout
    };
    let cases: [Vec<&str>; 3] = [
        vec!["fp", "low-index", "--presentation", q4.to_str().unwrap(), "--max-index", "8"],
        vec!["magic", "census", "--squares", "--qubits", "2"],
        vec!["dessin", "enumerate", "--edges", "6"],
    ];
    for args in &cases {
        let one = run("1", args);
        assert!(!one.is_empty());
        for t in ["2", "8"] {
            assert_eq!(one, run(t, args), "{args:?}");
        }
        assert_eq!(one, run("1", args));
    }
}

#[test]
fn inputs_digest_tracks_file_contents() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(&dir, "d.json", MERMIN);
    let (_, a) = report(&["dessin", "analyze", d.to_str().unwrap()]);
    write(&dir, "d.json", r#"{"edges":2,"alpha":[[1,2]],"beta":[]}"#);
    let (_, b) = report(&["dessin", "analyze", d.to_str().unwrap()]);
    assert_ne!(a["inputs_digest"], b["inputs_digest"]);
    assert_eq!(a["schema_version"], 1);
}
