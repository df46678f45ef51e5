use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use etmap::classes::EtClass;
use etmap::map::FlagMap;
use etmap::parent::EpimorphismSpec;

struct Run {
    code: i32,
    out: String,
}

fn etm(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_etm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn etm");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    Run { code: o.status.code().unwrap_or(-1), out: String::from_utf8(o.stdout).unwrap() }
}

fn ok(args: &[&str], stdin: &str) -> String {
    let r = etm(args, stdin);
    assert_eq!(r.code, 0, "etm {args:?} failed");
    r.out
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn tetra() -> String {
    let spec = EpimorphismSpec::parse_perms(EtClass::C1, 4, &["(1,2)", "(2,3)", "(3,4)"]).unwrap();
    spec.to_json()
}

#[test]
fn tetrahedron_pipeline() {
    let m = ok(&["build", "--spec", "-"], &tetra());
    let info: serde_json::Value = serde_json::from_str(&ok(&["info", "-"], &m)).unwrap();
    assert_eq!((info["V"].as_u64(), info["E"].as_u64(), info["F"].as_u64()), (Some(4), Some(6), Some(4)));
    assert_eq!(info["chi"], 2);
    let dual = ok(&["op", "dual", "-"], &m);
    assert_eq!(ok(&["classify", "-"], &dual).trim(), "1");
}

#[test]
fn basic_map_is_not_in_its_class() {
    let basic = EtClass::C2PEx.basic_map().to_json();
    let label = ok(&["classify", "-"], &basic);
    assert_ne!(label.trim(), "2Pex");
    assert_ne!(label.trim(), "none");
}

#[test]
fn psl2_11_info() {
    let spec = ok(&["realize", "--family", "psl2", "--q", "11", "--class", "1"], "");
    let m = ok(&["build", "--spec", "-"], &spec);
    let info: serde_json::Value = serde_json::from_str(&ok(&["info", "-"], &m)).unwrap();
    assert_eq!(info["V"], 55);
    assert_eq!(info["E"], 165);
    assert_eq!(info["F"], 66);
    assert_eq!(info["chi"], -44);
}

#[test]
fn realize_routes_into_target_class() {
    let spec = ok(&["realize", "--family", "sym-even", "--class", "2P", "--n", "5"], "");
    let m = ok(&["build", "--spec", "-", "--class", "2P"], &spec);
    assert_eq!(ok(&["classify", "-"], &m).trim(), "2P");
    let info: serde_json::Value = serde_json::from_str(&ok(&["info", "-"], &m)).unwrap();
    assert_eq!(info["orientable_no_boundary"], true);

    let both: serde_json::Value =
        serde_json::from_str(&ok(&["realize", "--family", "sym-even", "--class", "2P", "--n", "5", "--with-map"], "")).unwrap();
    assert_eq!(both["target"], "2P");
    assert_eq!(FlagMap::from_json(&both["map"].to_string()).unwrap(), FlagMap::from_json(&m).unwrap());
}

#[test]
fn emitted_json_round_trips() {
    let m = ok(&["build", "--spec", "-"], &tetra());
    let parsed = FlagMap::from_json(&m).unwrap();
    assert_eq!(parsed.to_json(), m.trim());
    let spec = ok(&["realize", "--family", "dihedral", "--n", "6"], "");
    assert_eq!(EpimorphismSpec::from_json(&spec).unwrap().to_json(), spec.trim());
}

#[test]
fn join_needs_two_maps() {
    let m = ok(&["build", "--spec", "-"], &tetra());
    let other = tmp("tetra_map.json", &m);
    let j = ok(&["op", "join", "-", other.to_str().unwrap()], &m);
    assert_eq!(FlagMap::from_json(&j).unwrap(), FlagMap::from_json(&m).unwrap());
    assert_eq!(etm(&["op", "join", "-"], &m).code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(etm(&["classify", "-"], "{not json").code, 2);
    assert_eq!(etm(&["build", "--spec", "/nonexistent/spec.json"], "").code, 2);
    assert_eq!(etm(&["realize", "--family", "sym", "--class", "1"], "").code, 2);
    // S_5 has no chiral map
    assert_eq!(etm(&["realize", "--family", "sym", "--class", "2Pex", "--n", "5"], "").code, 1);
    // planar path with three edges: the middle edge is not equivalent to the ends
    let path = FlagMap::from_images(
        vec![2, 3, 0, 1, 6, 7, 4, 5, 10, 11, 8, 9],
        vec![1, 0, 4, 5, 2, 3, 8, 9, 6, 7, 11, 10],
        vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10],
    )
    .unwrap();
    let r = etm(&["classify", "-"], &path.to_json());
    assert_eq!((r.code, r.out.trim()), (1, "none"));
}

#[test]
fn search_is_thread_independent() {
    let group = tmp("s4_group.json", r#"{"degree":4,"generators":["(1,2,3,4)","(1,2)"]}"#);
    let g = group.to_str().unwrap();
    let args = |t: &'static str| vec!["--threads", t, "search", "--class", "1", "--group", g, "--exhaustive"];
    let one = ok(&args("1"), "");
    let four = ok(&args("4"), "");
    assert_eq!(one, four);
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    for w in v["witnesses"].as_array().unwrap() {
        let m = ok(&["build", "--spec", "-"], &w.to_string());
        assert_eq!(ok(&["classify", "-"], &m).trim(), "1");
    }

    let none: serde_json::Value =
        serde_json::from_str(&ok(&["search", "--class", "2Pex", "--group", g, "--exhaustive"], "")).unwrap();
    assert!(none["witnesses"].as_array().unwrap().is_empty());
    assert!(none["checked"].as_u64().unwrap() > 0);
}

#[test]
fn verify_small_sn() {
    let r = etm(&["verify", "small-sn"], "");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    let md = ok(&["verify", "small-sn", "--format", "md"], "");
    assert!(md.starts_with("## small-sn"));
    assert_eq!(etm(&["verify", "no-such-suite"], "").code, 2);
}
