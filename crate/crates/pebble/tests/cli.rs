//! End-to-end behaviour of the `pebble` command.

use std::path::PathBuf;
use std::process::Command;

use pebble::formats::{parse_certificate, parse_graph, GraphJson};
use pebble::report::{AuditJson, LpReport, PiReport, SolveReport, VerifyReport};
use pebbling_core::class0::isomorphism;
use pebbling_core::generators::cycle;
use pebbling_core::{replay, Configuration, PebblingMove};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pebble").chain(args.iter().copied());
    let code = pebble::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

struct Scratch(tempfile::TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn generate(&self, name: &str, args: &[&str]) -> String {
        let (code, out, _) = run(&[&["generate"], args].concat());
        assert_eq!(code, 0);
        self.write(name, &out)
    }
}

#[test]
fn generate_families() {
    let (code, out, _) = run(&["generate", "petersen", "8", "2"]);
    assert_eq!(code, 0);
    let g: GraphJson = serde_json::from_str(&out).unwrap();
    assert_eq!(g.n, 16);
    let (_, out, _) = run(&["generate", "bruhat", "4"]);
    assert_eq!(parse_graph(&out).unwrap().n(), 24);
    let (_, out, _) = run(&["generate", "familyF", "1", "1"]);
    assert!(isomorphism(&parse_graph(&out).unwrap(), &cycle(5).unwrap()).is_some());
    let (_, out, _) = run(&["generate", "cycle", "5", "--edge-list"]);
    assert_eq!(parse_graph(&out).unwrap(), cycle(5).unwrap());
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["generate", "moebius", "3"]).0, 64);
    assert_eq!(run(&["generate", "petersen", "8"]).0, 64);
    assert_eq!(run(&["generate", "cycle", "2"]).0, 64);
    assert_eq!(run(&["pi", "/nonexistent/graph.json"]).0, 64);
    assert_eq!(run(&["pi"]).0, 64);
    assert_eq!(run(&["frobnicate"]).0, 64);
    let s = Scratch::new();
    let bad = s.write("bad.txt", "0 1\n1 two\n");
    let (code, _, err) = run(&["pi", &bad]);
    assert_eq!(code, 64);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn pebbling_numbers() {
    let s = Scratch::new();
    let q3 = s.generate("q3.json", &["hypercube", "3"]);
    let (code, out, _) = run(&["pi", &q3, "--format", "json"]);
    assert_eq!(code, 0);
    let r: PiReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.value, Some(8));
    assert_eq!(r.roots.len(), 8);
    let p4 = s.generate("p4.json", &["path", "4"]);
    let (code, out, _) = run(&["pi", &p4, "--root", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("pi(G, 3) = 8\n"), "{out}");
}

#[test]
fn budget_exhaustion_gives_an_interval() {
    let s = Scratch::new();
    let q3 = s.generate("q3.json", &["hypercube", "3"]);
    let (code, out, _) = run(&["pi", &q3, "--root", "0", "--budget-states", "5", "--format", "json"]);
    assert_eq!(code, 2);
    let r: PiReport = serde_json::from_str(&out).unwrap();
    assert!(!r.exact);
    assert!(r.lower <= 8 && 8 <= r.upper);
}

#[test]
fn configuration_solvability() {
    let s = Scratch::new();
    let c5 = s.generate("c5.json", &["cycle", "5"]);
    let easy = s.write("easy.json", r#"{"counts": {"2": 4, "3": 1}}"#);
    let (code, out, _) = run(&["pi", &c5, "--root", "0", "--config", &easy, "--format", "json"]);
    assert_eq!(code, 0);
    let r: SolveReport = serde_json::from_str(&out).unwrap();
    let moves: Vec<PebblingMove> = r.moves.unwrap().iter().map(|&[a, b]| PebblingMove::new(a, b)).collect();
    let end = replay(&cycle(5).unwrap(), &Configuration::new(vec![0, 0, 4, 1, 0]), &moves).unwrap();
    assert!(end.get(0) >= 1);
    let hard = s.write("hard.json", r#"{"counts": {"2": 3, "3": 1}}"#);
    assert_eq!(run(&["pi", &c5, "--root", "0", "--config", &hard]).0, 1);
}

#[test]
fn bundled_data_matches_the_catalog() {
    for name in ["c5", "q3", "lemke", "g111_s1", "g111_v", "g111_a", "b4"] {
        let (code, out, _) = run(&["certify", "--bundled", name]);
        assert_eq!(code, 0);
        assert_eq!(out, std::fs::read_to_string(data(name)).unwrap(), "{name}");
    }
}

#[test]
fn bundled_certificates_verify() {
    let files: Vec<String> =
        ["c5", "q3", "lemke", "g111_s1", "g111_v", "g111_a", "b4"].iter().map(|n| data(n)).collect();
    let mut args = vec!["verify", "--format", "json"];
    args.extend(files.iter().map(String::as_str));
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let reports: Vec<VerifyReport> = serde_json::from_str(&out).unwrap();
    let bounds: Vec<u64> = reports.iter().map(|r| r.bound.unwrap()).collect();
    assert_eq!(bounds, [5, 8, 8, 7, 7, 7, 64]);
}

#[test]
fn tampered_certificate_fails() {
    let s = Scratch::new();
    let text = std::fs::read_to_string(data("c5")).unwrap();
    let cert = parse_certificate(&text).unwrap();
    assert_eq!(cert.claimed_bound, 5);
    // Double the weight next to the root in the first path.
    let tampered = text.replacen("\"4/1\"", "\"8/1\"", 1);
    assert_ne!(tampered, text);
    let path = s.write("bad.json", &tampered);
    let (code, out, _) = run(&["verify", &path, "--format", "json"]);
    assert_eq!(code, 1);
    let r: VerifyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.outcome, "invalid");
}

#[test]
fn certify_round_trips() {
    let s = Scratch::new();
    let c5 = s.generate("c5.json", &["cycle", "5"]);
    let out_path = s.path("cert.json");
    assert_eq!(run(&["certify", &c5, "--root", "0", "--from-lp", "--out", &out_path]).0, 0);
    let (code, out, _) = run(&["verify", &out_path, "--format", "json"]);
    assert_eq!(code, 0);
    let r: VerifyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.bound, Some(5));

    // Hand-written entries: the two paths around the cycle.
    let entries = r#"[
      {"kind": "tree_basic", "weights": {"1": "4", "2": "2", "3": "1"}, "support": {"parent": {"1": 0, "2": 1, "3": 2}}, "coefficient": "1"},
      {"kind": "tree_basic", "weights": {"4": "4", "3": "2", "2": "1"}, "support": {"parent": {"4": 0, "3": 4, "2": 3}}, "coefficient": "1"}
    ]"#;
    let entries_path = s.write("entries.json", entries);
    let (code, out, _) = run(&["certify", &c5, "--root", "0", "--strategies", &entries_path]);
    assert_eq!(code, 0);
    let cert = parse_certificate(&out).unwrap();
    assert_eq!(cert.claimed_bound, 5);
    assert_eq!(out, std::fs::read_to_string(data("c5")).unwrap());
}

#[test]
fn lp_bounds() {
    let s = Scratch::new();
    let c5 = s.generate("c5.json", &["cycle", "5"]);
    let (code, out, _) = run(&["lp", &c5, "--root", "0", "--ilp", "--format", "json"]);
    assert_eq!(code, 0);
    let r: LpReport = serde_json::from_str(&out).unwrap();
    assert_eq!((r.bound, r.certifies), (Some(5), Some(true)));
    assert_eq!(r.ilp.unwrap().lower, 4);
    let p4 = s.generate("p4.json", &["path", "4"]);
    let (_, out, _) = run(&["lp", &p4, "--root", "0", "--format", "json"]);
    let r: LpReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.bound, Some(8));
    // One strategy on a four-cycle covers only one side of the root.
    let c4 = s.generate("c4.json", &["cycle", "4"]);
    let (code, out, _) = run(&["lp", &c4, "--root", "0", "--max-trees", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let r: LpReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.status, "no_bound");
    let cert = s.path("lp_cert.json");
    assert_eq!(run(&["lp", &c5, "--root", "0", "--certificate-out", &cert]).0, 0);
    assert_eq!(run(&["verify", &cert]).0, 0);
}

#[test]
fn audits() {
    let s = Scratch::new();
    let p82 = s.generate("p82.json", &["petersen", "8", "2"]);
    let (code, out, _) = run(&["audit", &p82, "--format", "json"]);
    assert_eq!(code, 1);
    let r: AuditJson = serde_json::from_str(&out).unwrap();
    assert_eq!(r.conclusion, "not_class0");
    assert_eq!(r.witness.unwrap().verified, Some(true));
    let pet = s.generate("pet.json", &["petersen", "5", "2"]);
    let (code, out, _) = run(&["audit", &pet, "--format", "json"]);
    assert_eq!(code, 0);
    let r: AuditJson = serde_json::from_str(&out).unwrap();
    assert_eq!(r.equality_class.as_deref(), Some("petersen"));
    let k5 = s.generate("k5.json", &["complete", "5"]);
    let (code, out, _) = run(&["audit", &k5, "--format", "json"]);
    assert_eq!(code, 0);
    let r: AuditJson = serde_json::from_str(&out).unwrap();
    assert_eq!(r.conclusion, "confirmed_class0");
}

#[test]
fn output_is_byte_stable() {
    let s = Scratch::new();
    let lemke = s.generate("lemke.json", &["lemke"]);
    let g111 = s.generate("g111.json", &["familyG", "1", "1", "1"]);
    for args in [
        vec!["pi", lemke.as_str(), "--format", "json"],
        vec!["lp", g111.as_str(), "--ilp", "--format", "json"],
        vec!["audit", lemke.as_str(), g111.as_str(), "--format", "json"],
        vec!["audit", lemke.as_str(), g111.as_str()],
    ] {
        let first = run(&args);
        assert_eq!(first, run(&args));
        let mut parallel = args.clone();
        parallel.extend(["--jobs", "4"]);
        assert_eq!(first, run(&parallel));
    }
}

#[test]
fn json_outputs_reparse() {
    let s = Scratch::new();
    let g = s.generate("g.json", &["familyF", "2", "1"]);
    let (_, out, _) = run(&["pi", &g, "--format", "json"]);
    let r: PiReport = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out);
    let (_, out, _) = run(&["audit", &g, "--format", "json"]);
    let r: AuditJson = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out);
}

fn binary() -> Command {
    Command::new(PathBuf::from(env!("CARGO_BIN_EXE_pebble")))
}

#[test]
fn environment_overrides() {
    let s = Scratch::new();
    let p4 = s.generate("p4.json", &["path", "4"]);
    let out = binary().args(["pi", &p4]).env("PEBBLE_ROOT", "3").env("PEBBLE_FORMAT", "json").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: PiReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((r.root, r.value), (Some(3), Some(8)));
    let out = binary().args(["pi", &p4, "--root", "0"]).env("PEBBLE_BUDGET_STATES", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // A flag beats the environment.
    let out = binary().args(["pi", &p4, "--format", "text"]).env("PEBBLE_FORMAT", "json").output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("pi(G) = 8"));
    let out = binary().args(["generate", "nothing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}
