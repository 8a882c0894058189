use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

fn ctxlab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ctxlab"))
        .args(args)
        .current_dir(manifest())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data(name: &str) -> String {
    format!("examples/data/{name}")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn without_timing(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("timing_us");
    }
    v
}

#[test]
fn analyze_chsh_matches_golden_report() {
    let run = ctxlab(&["analyze", &data("chsh_pr.json"), "--homotopy", "--face", "--category"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let golden: Value = serde_json::from_str(include_str!("golden/chsh_pr_analyze.json")).unwrap();
    assert_eq!(without_timing(run.json()), golden);
}

#[test]
fn chsh_is_strongly_contextual_with_a_four_cycle_witness() {
    let v = ctxlab(&["analyze", &data("chsh_pr.json")]).json();
    let c = &v["classification"];
    assert_eq!(c["flags"]["strongly_contextual"], true);
    assert_eq!(c["flags"]["vertex"], true);
    let circle = c["sc"]["pr_circle"]["circle"].as_str().unwrap();
    assert_eq!(circle.split_whitespace().count(), 4);
    assert_eq!(c["sc"]["homotopical"]["invariant"], 1);
}

#[test]
fn deterministic_file_is_non_contextual_with_witness() {
    let v = ctxlab(&["analyze", &data("deterministic.json")]).json();
    let c = &v["classification"];
    assert_eq!(c["flags"]["contextual"], false);
    assert_eq!(c["flags"]["deterministic"], true);
    assert_eq!(c["nc_witness"], serde_json::json!([{"labeling": [0, 1, 1, 0], "weight": "1"}]));
}

#[test]
fn abcdu_category_lists_the_ten_hom_sets() {
    let v = ctxlab(&["analyze", &data("abcdu.json"), "--category"]).json();
    let hom = v["category"]["hom"].as_array().unwrap();
    let get = |x: &str, y: &str| -> BTreeSet<String> {
        hom.iter()
            .find(|h| h["source"] == x && h["target"] == y)
            .map(|h| h["matrices"].as_array().unwrap().iter().map(|m| m.as_str().unwrap().to_string()).collect())
            .unwrap_or_default()
    };
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let expected = [
        ("x", "x", set(&["I", "B", "Bt", "U"])),
        ("y", "y", set(&["I", "D", "U"])),
        ("z", "z", set(&["I", "B", "Bt", "U"])),
        ("w", "w", set(&["I", "B", "Bt", "U"])),
        ("x", "y", set(&["U", "D", "B"])),
        ("x", "z", set(&["U", "D", "A"])),
        ("x", "w", set(&["U", "B", "Bt"])),
        ("y", "z", set(&["U", "D", "Bt"])),
        ("y", "w", set(&["U", "D", "Bt"])),
        ("z", "w", set(&["U", "D", "A"])),
    ];
    for (x, y, want) in &expected {
        assert_eq!(&get(x, y), want, "C({x}, {y})");
    }
    assert_eq!(hom.len(), 16);
    assert_eq!(v["category"]["support"], serde_json::json!([[0, 1, 1, 0], [1, 1, 0, 1]]));
    assert_eq!(v["classification"]["flags"]["strongly_contextual"], false);
}

#[test]
fn generate_then_analyze_round_trip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("pr.json", vec!["generate", "pr-box", "--cycle", "4"]),
        ("det.json", vec!["generate", "deterministic", "--labels", "0,1,1,0"]),
        ("sec.json", vec!["generate", "section-t", "--edge-labels", "1,2,0", "--d", "3"]),
        ("rnd.json", vec!["generate", "random", "--seed", "7", "--max-den", "4", "--cycle", "3"]),
    ] {
        let run = ctxlab(&args);
        assert_eq!(run.code, 0, "{}", run.stderr);
        let file = dir.path().join(name);
        std::fs::write(&file, &run.stdout).unwrap();
        let analyzed = ctxlab(&["analyze", path_str(&file)]);
        assert_eq!(analyzed.code, 0, "{name}: {}", analyzed.stdout);
        let doc = ctxlab::io::read_dist(&file).unwrap();
        assert_eq!(doc.to_json(), run.stdout, "{name} re-serializes differently");
        let digest = analyzed.json()["input"]["sha256"].as_str().unwrap().to_string();
        assert_eq!(digest, ctxlab::cli::sha256_hex(run.stdout.as_bytes()));
    }
}

#[test]
fn random_generation_replays_from_the_seed() {
    let a = ctxlab(&["generate", "random", "--seed", "7", "--max-den", "4"]);
    let b = ctxlab(&["generate", "random", "--seed", "7", "--max-den", "4"]);
    let c = ctxlab(&["generate", "random", "--seed", "8", "--max-den", "4"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn generate_to_file_reports_digest_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let v = ctxlab(&["generate", "random", "--seed", "3", "--out", path_str(&out)]).json();
    assert_eq!(v["seed"], 3);
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(v["sha256"], ctxlab::cli::sha256_hex(&bytes));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"scenario\": {\"d\": 2,\n  \"vertices\": [\"a\"] \"edges\": []}\n}").unwrap();
    let run = ctxlab(&["analyze", path_str(&bad)]);
    assert_eq!(run.code, 2);
    let e = &run.json()["error"];
    assert_eq!(e["kind"], "parse");
    assert_eq!(e["line"], 3);
    assert!(e["column"].as_u64().unwrap() > 0);

    let run = ctxlab(&["collapse", &data("chsh_pr.json"), "--edge", "e0"]);
    assert_eq!(run.code, 3);
    assert_eq!(run.json()["error"]["kind"], "not_collapsible");

    let run = ctxlab(&["analyze", &data("chsh_pr.json"), "--cap", "8"]);
    assert_eq!(run.code, 4);
    assert_eq!(run.json()["error"]["kind"], "too_large");

    let run = ctxlab(&["analyze", "no/such/file.json"]);
    assert_eq!(run.code, 3);

    let run = ctxlab(&["fly"]);
    assert_eq!(run.code, 2);
}

fn write_scenario(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const SQUARE: &str = r#"{"d": 2, "vertices": ["a", "b", "c", "e"], "edges": [
  {"id": "p", "source": "a", "target": "b"}, {"id": "q", "source": "b", "target": "c"},
  {"id": "r", "source": "c", "target": "e"}, {"id": "s", "source": "e", "target": "a"}]}"#;

#[test]
fn face_reports() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_scenario(dir.path(), "square.json", SQUARE);
    let v = ctxlab(&["face", path_str(&square), "--labels", "1,0,0,0"]).json();
    assert_eq!(v["face"]["dimension"], 0);
    assert_eq!(v["face"]["unique_member"]["pr_box"], true);
    assert_eq!(v["face"]["unique_member"]["strongly_contextual"], true);
    assert_eq!(v["face"]["unique_member"]["polytope_vertex"], true);

    let labels = dir.path().join("zero.json");
    std::fs::write(&labels, "[0, 0, 0, 0]").unwrap();
    let v = ctxlab(&["face", path_str(&square), "--labels-file", path_str(&labels)]).json();
    assert_eq!(v["face"]["dimension"], 1);
    assert_eq!(v["face"]["null_homotopic"], true);

    let looped = write_scenario(
        dir.path(),
        "loop.json",
        r#"{"d": 4, "vertices": ["v"], "edges": [{"id": "l", "source": "v", "target": "v"}]}"#,
    );
    let v = ctxlab(&["face", path_str(&looped), "--labels", "2"]).json();
    assert_eq!(v["face"]["dimension"], 1);
    assert_eq!(v["face"]["subgroup"], serde_json::json!([0, 2]));

    let split = write_scenario(
        dir.path(),
        "split.json",
        r#"{"d": 2, "vertices": ["u", "v"], "edges": []}"#,
    );
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let run = ctxlab(&["face", path_str(&split), "--labels-file", path_str(&empty)]);
    assert_eq!(run.code, 3);
    assert_eq!(run.json()["error"]["kind"], "not_connected");
}

#[test]
fn collapse_diagonal_edge_of_square() {
    let dir = tempfile::tempdir().unwrap();
    let square = write_scenario(dir.path(), "square.json", SQUARE);
    let file = dir.path().join("pr.json");
    let gen = ctxlab(&["generate", "section-t", "--scenario", path_str(&square), "--edge-labels", "1,0,0,0"]);
    std::fs::write(&file, gen.stdout).unwrap();
    let out_dir = dir.path().join("out");
    let run = ctxlab(&["collapse", path_str(&file), "--edge", "q", "--out-dir", path_str(&out_dir)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = run.json();
    assert_eq!(v["flags_equal"], true);
    assert_eq!(v["flags_after"]["strongly_contextual"], true);
    assert_eq!(v["scenario"]["vertices"].as_array().unwrap().len(), 3);
    let collapsed = out_dir.join("pr.collapsed.json");
    let doc = ctxlab::io::read_dist(&collapsed).unwrap();
    assert_eq!(doc.dist.scenario().num_edges(), 3);
    assert_eq!(doc.scenario_ref.as_deref(), Some("pr.collapsed.scenario.json"));
    let again = ctxlab(&["analyze", path_str(&collapsed)]).json();
    assert_eq!(again["classification"]["flags"]["strongly_contextual"], true);
}

#[test]
fn collapse_path_to_a_single_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        dir.path(),
        "path.json",
        r#"{"d": 3, "vertices": ["a", "b", "c", "e"], "edges": [
  {"id": "p", "source": "a", "target": "b"}, {"id": "q", "source": "b", "target": "c"},
  {"id": "r", "source": "c", "target": "e"}]}"#,
    );
    let file = dir.path().join("diag.json");
    let gen = ctxlab(&["generate", "deterministic", "--scenario", path_str(&path), "--labels", "2,2,2,2", "--d", "3"]);
    assert_eq!(gen.code, 0, "{}", gen.stdout);
    std::fs::write(&file, gen.stdout).unwrap();
    let v = ctxlab(&["collapse", path_str(&file), "--all"]).json();
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["scenario"]["vertices"], serde_json::json!(["a"]));
    assert_eq!(v["flags_equal"], true);
    assert_eq!(v["distribution"]["vertices"]["a"], serde_json::json!(["0", "0", "1"]));
}

#[test]
fn batch_mode_reports_every_distribution_file() {
    let run = ctxlab(&["analyze", "--batch", "examples/data", "--verbose"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = run.json();
    let files: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["input"]["file"].as_str().unwrap())
        .collect();
    assert_eq!(
        files,
        ["examples/data/abcdu.json", "examples/data/chsh_pr.json", "examples/data/deterministic.json"]
    );
    assert_eq!(run.stderr.lines().count(), 3);
    let cat = ctxlab(&["category", "--batch", "examples/data"]).json();
    assert_eq!(cat["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn verbose_summary_goes_to_stderr_only() {
    let quiet = ctxlab(&["analyze", &data("chsh_pr.json")]);
    let loud = ctxlab(&["analyze", &data("chsh_pr.json"), "--verbose"]);
    assert!(quiet.stderr.is_empty());
    assert!(loud.stderr.contains("strongly_contextual=true"));
    assert_eq!(without_timing(quiet.json()), without_timing(loud.json()));
}
