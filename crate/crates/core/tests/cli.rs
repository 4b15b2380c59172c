//! The `artin-flats` binary: outputs and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-flats")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn normalize_braid_relation() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "m3.txt", "# dihedral, m = 3\ns t\ns t 3\n");
    let a = bin(&["normalize", &p, "s1 t1 s1"]);
    let b = bin(&["normalize", &p, "t1 s1 t1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let e = bin(&["normalize", &p, ""]);
    assert_eq!(e.status.code(), Some(0));
    assert!(stdout(&e).starts_with("D^0\n"));
    assert_eq!(bin(&["normalize", &p, "s1 u1"]).status.code(), Some(1));
}

#[test]
fn normalize_accepts_json_presentations() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "m4.json", r#"{"generators": ["a", "b"], "relations": [["a", "b", 4]]}"#);
    let o = bin(&["normalize", &p, "a1 b1 a1 b1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("D^1\n"));
    let three = write(dir.path(), "three.txt", "s t r\ns t 3\n");
    assert_eq!(bin(&["normalize", &three, "s1"]).status.code(), Some(1));
}

#[test]
fn girth_sweep_reports_agreement() {
    let o = bin(&["girth-sweep", "--m", "3", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agreement 4096/4096"));
    let o = bin(&["girth-sweep", "--m", "2", "--bound", "1"]);
    assert!(stdout(&o).contains("agreement 16/16"));
    assert_eq!(bin(&["girth-sweep", "--m", "3", "--bound", "0"]).status.code(), Some(1));
    assert_eq!(bin(&["girth-sweep", "--m", "9"]).status.code(), Some(1));
}

#[test]
fn polarisations_with_rigidity() {
    for (t, count) in [("333", 3), ("244", 8), ("236", 6)] {
        let o = bin(&["polarisations", "--triangle", t, "--check-rigidity"]);
        assert_eq!(o.status.code(), Some(0), "{t}");
        let out = stdout(&o);
        assert!(out.contains(&format!("admissible={count}")), "{t}: {out}");
        assert!(out.contains(&format!("rigid {count}/{count}")));
    }
    let o = bin(&["polarisations", "--triangle", "333", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(bin(&["polarisations", "--triangle", "335"]).status.code(), Some(1));
    assert_eq!(bin(&["polarisations", "--triangle", "333", "--lattice", "1,0;2,0"]).status.code(), Some(1));
}

#[test]
fn prove_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t333.txt", "s t r\ns t 3\nt r 3\ns r 3\n");
    let cert = dir.path().join("c.json");
    let cert = cert.to_str().unwrap();
    let o = bin(&["prove", &p, "[strstr,tstr]", "--out", cert]);
    assert_eq!(o.status.code(), Some(0));
    let r = bin(&["replay", cert]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).starts_with("valid"));

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(cert).unwrap()).unwrap();
    v["moves"][0]["pos"] = serde_json::json!(v["moves"][0]["pos"].as_u64().unwrap() + 1);
    let bad = write(dir.path(), "bad.json", &v.to_string());
    assert_eq!(bin(&["replay", &bad]).status.code(), Some(2));
    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(bin(&["replay", &junk]).status.code(), Some(1));

    let eq = bin(&["prove", &p, "s1 t1 s1", "t1 s1 t1"]);
    assert_eq!(eq.status.code(), Some(0));
    let free = write(dir.path(), "free.txt", "s t\n");
    let o = bin(&["prove", &free, "[s,t]", "--max-len", "8", "--max-states", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn families_and_klein() {
    let o = bin(&["families", "--case", "d", "--bound", "1", "--factors", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certified 2/2"));
    assert_eq!(bin(&["families", "--case", "a"]).status.code(), Some(1));
    assert_eq!(bin(&["families", "--case", "z"]).status.code(), Some(1));
    let o = bin(&["families", "--case", "e", "--bound", "2", "--factors", "2", "--verify", "--max-len", "6", "--max-states", "5"]);
    assert_eq!(o.status.code(), Some(3));

    let o = bin(&["klein", "--k", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("b = t-1 s1 r1 s-1"));
    assert_eq!(bin(&["klein", "--k", "0"]).status.code(), Some(1));
}

#[test]
fn render_matches_goldens() {
    let dir = tempfile::tempdir().unwrap();
    for t in ["333", "244", "236"] {
        let out = dir.path().join(format!("{t}.svg"));
        let o = bin(&["render", "--triangle", t, "--size", "2", "--direction-index", "3", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/tiling-{t}.svg"));
        assert_eq!(fs::read(&out).unwrap(), fs::read(golden).unwrap(), "{t}");
    }
    let bare = bin(&["render", "--triangle", "333", "--bare"]);
    assert_eq!(bare.status.code(), Some(0));
    assert!(!stdout(&bare).contains("dasharray"));
    assert_eq!(bin(&["render", "--triangle", "333", "--direction-index", "100000"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bin(&[]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_artin-flats"))
        .args(["girth-sweep", "--m", "3", "--bound", "1"])
        .env("ARTIN_FLATS_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_artin-flats"))
        .args(["girth-sweep", "--m", "3", "--bound", "1"])
        .env("ARTIN_FLATS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
