use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclicity"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

/// Byte-compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, want, "golden file {name} differs");
}

fn bound<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["name"] == name)
        .unwrap_or_else(|| panic!("no row {name}"))
}

#[test]
fn compute_complete_four() {
    let k4 = data("k4.txt");
    let text = ok(&["compute", k4.to_str().unwrap()]);
    assert!(text.contains("cyclicity: 6\n"), "{text}");
    assert!(text.contains("μ: 3\n"), "{text}");
    let flag = ok(&["compute", "-i", k4.to_str().unwrap()]);
    assert_eq!(flag, text);
}

#[test]
fn compute_tree() {
    let text = ok(&["compute", data("tree10.txt").to_str().unwrap()]);
    assert!(text.contains("cyclicity: 0\n"), "{text}");
    assert!(text.contains("tree: yes\n"));
}

#[test]
fn compute_structured_golden() {
    golden(
        "compute_k4.json",
        &ok(&["compute", data("k4.txt").to_str().unwrap(), "--format", "structured"]),
    );
}

#[test]
fn report_keys_are_stable() {
    let text = ok(&["compute", "--fixture", "cycle:5", "--format", "structured"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["bounds", "cyclicity", "flags", "m", "mu", "n"]);
    let row: Vec<&str> = v["bounds"][0].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(row, ["actual", "bound", "kind", "name", "slack", "tight"]);
}

#[test]
fn dump_matrix_lists_lower_triangle() {
    let text = ok(&["compute", "--fixture", "path:3", "--dump-matrix"]);
    let dump: Vec<&str> = text
        .lines()
        .filter(|l| l.split_whitespace().next().is_some_and(|t| t.parse::<usize>().is_ok()))
        .collect();
    assert_eq!(dump.len(), 6);
    let end_to_end = dump.iter().find(|l| l.starts_with("2 0 ")).unwrap();
    let value: f64 = end_to_end[4..].parse().unwrap();
    assert!((value - 2.0).abs() < 1e-12);
}

#[test]
fn self_loop_is_a_parse_error() {
    let out = run(&["compute", data("self_loop.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("self-loop"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn disconnected_is_a_precondition_error() {
    let out = run(&["compute", data("disconnected.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn missing_file_and_bad_tolerance() {
    assert_eq!(run(&["compute", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let out = run(&["compute", "--fixture", "cycle:4", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_cycle_six() {
    let text = ok(&["bounds", "--fixture", "cycle:6", "--format", "structured"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(bound(&v, "mu_sandwich_lower")["tight"], true);
    golden("bounds_cycle6.txt", &ok(&["bounds", "--fixture", "cycle:6"]));
}

#[test]
fn bounds_complete_five_upper_rows_tight() {
    let text = ok(&["bounds", "--fixture", "complete:5", "--format", "structured"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let uppers: Vec<&Value> = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["kind"] == "upper")
        .collect();
    assert!(uppers.len() >= 6);
    for b in uppers {
        assert_eq!(b["tight"], true, "{b}");
    }
}

#[test]
fn bounds_petersen() {
    let text = ok(&["bounds", "--fixture", "petersen", "--format", "structured"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(bound(&v, "majorization_lower")["tight"], true);
    assert_eq!(bound(&v, "degree_bound")["tight"], false);
    golden("bounds_petersen.json", &text);
}

#[test]
fn delta_path_ends() {
    let p5 = data("path5.txt");
    let text = ok(&["delta", p5.to_str().unwrap(), "0", "4"]);
    assert!(text.contains("delta: 5/4 (1.25)\n"), "{text}");
    assert!(text.contains("upper: 5/4 (1.25) (tight"), "{text}");
    let structured = ok(&["delta", p5.to_str().unwrap(), "0", "4", "--format", "structured"]);
    golden("delta_path5.json", &structured);
    let fixture = ok(&["delta", "--fixture", "path:5", "0", "4", "--format", "structured"]);
    assert_eq!(fixture, structured);
}

#[test]
fn delta_rejects_existing_edge() {
    let out = run(&["delta", data("path5.txt").to_str().unwrap(), "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ng_paley_five() {
    let text = ok(&["ng", "--fixture", "paley:5"]);
    assert!(text.contains("sum: 5/2 (2.5) in [5/2 (2.5), 5), lower tight"), "{text}");
    golden("ng_paley5.json", &ok(&["ng", "--fixture", "paley:5", "--format", "structured"]));
    let out = run(&["ng", "--fixture", "complete:5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_paley_thirteen() {
    let text = ok(&["generate", "paley", "13"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "13 39");
    assert_eq!(lines.len() - 1, 39);
    golden("generate_paley13.txt", &text);
    assert_eq!(ok(&["generate", "paley:13"]), text);
    assert_eq!(run(&["generate", "paley", "7"]).status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let a = ok(&["generate", "random", "9", "0.4", "--seed", "3"]);
    assert_eq!(a, ok(&["generate", "random", "9", "0.4", "--seed", "3"]));
    assert_ne!(a, ok(&["generate", "random", "9", "0.4", "--seed", "4"]));
}

#[test]
fn certify_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("five.certrun");
    let text = ok(&["certify", "--exhaustive", "5", "-o", path.to_str().unwrap()]);
    assert!(text.contains("result: pass"), "{text}");
    let stored = std::fs::read_to_string(&path).unwrap();
    assert!(stored.contains("\"mode\": \"exhaustive\""));

    let again = dir.path().join("five-threaded.certrun");
    ok(&["certify", "--exhaustive", "5", "--jobs", "3", "-o", again.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&again).unwrap(), stored);

    let replay = ok(&["certify", "--replay", path.to_str().unwrap()]);
    assert!(replay.contains("reproduced"));

    let mut run: Value = serde_json::from_str(&stored).unwrap();
    let sum = run["ng_records"][0]["sum"].as_f64().unwrap();
    run["ng_records"][0]["sum"] = Value::from(sum + 0.5);
    let tampered = dir.path().join("tampered.certrun");
    std::fs::write(&tampered, serde_json::to_string(&run).unwrap()).unwrap();
    let out = run_replay(&tampered);
    assert_eq!(out.status.code(), Some(4));

    let corrupt = dir.path().join("corrupt.certrun");
    std::fs::write(&corrupt, "{").unwrap();
    assert_eq!(run_replay(&corrupt).status.code(), Some(1));
}

fn run_replay(path: &Path) -> Output {
    run(&["certify", "--replay", path.to_str().unwrap()])
}

#[test]
fn certify_sampled_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("s{k}.certrun"));
        ok(&[
            "certify", "--sampled", "8,9", "--samples", "5", "--p", "0.5", "--seed", "7", "-o",
            path.to_str().unwrap(),
        ]);
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn certify_rejects_large_orders() {
    let out = run(&["certify", "--exhaustive", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("8"));
}
