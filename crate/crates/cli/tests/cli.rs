use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arcspoke::corpus;
use arcspoke::format::{diagram_json, parse_presentation};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arcspoke"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_entry(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, diagram_json(&corpus::get(name).unwrap())).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const GENUS_ONE_THETA: &str = r#"{"name": "bad", "nodes": [
    {"id": "u", "kind": "vertex", "rotation": ["a", "b", "c"]},
    {"id": "v", "kind": "vertex", "rotation": ["a'", "b'", "c'"]}],
  "edges": [{"id": "1", "ends": ["a", "a'"]}, {"id": "2", "ends": ["b", "b'"]}, {"id": "3", "ends": ["c", "c'"]}]}"#;

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write_entry(dir.path(), "theta-3");
    let o = run(&["validate", s(&good)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = stdout(&o);
    for stage in ["parse: ok", "structure: ok (2 vertices, 0 crossings, 3 edges)", "sphericity: ok", "strands: ok"] {
        assert!(report.contains(stage), "{report}");
    }
    assert!(report.ends_with("valid\n"));

    let nonplanar = dir.path().join("nonplanar.json");
    fs::write(&nonplanar, GENUS_ONE_THETA).unwrap();
    let o = run(&["validate", s(&nonplanar)]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("sphericity: FAIL"));

    let truncated = dir.path().join("truncated.json");
    let text = fs::read_to_string(&good).unwrap();
    fs::write(&truncated, &text[..text.len() / 3]).unwrap();
    let o = run(&["validate", s(&truncated)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("parse: FAIL"));

    let arity = dir.path().join("arity.json");
    fs::write(&arity, text.replacen(r#""kind": "vertex""#, r#""kind": "crossing", "over": "02""#, 1)).unwrap();
    let o = run(&["validate", s(&arity)]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("crossing arity"));

    let binary = dir.path().join("binary.json");
    fs::write(&binary, [0xff, 0xfe, 0x00]).unwrap();
    assert_eq!(code(&run(&["validate", s(&binary)])), 1);
    assert_eq!(code(&run(&["validate", s(&dir.path().join("missing.json"))])), 7);
}

#[test]
fn corpus_entries_all_validate() {
    let o = run(&["corpus", "list"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert!(names.len() >= 15, "{names:?}");
    let dir = TempDir::new().unwrap();
    for name in &names {
        let path = dir.path().join(format!("{name}.json"));
        let o = run(&["corpus", "emit", name, "--out", s(&path)]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
        let o = run(&["validate", s(&path)]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
    let o = run(&["corpus", "emit", "no-such-entry"]);
    assert_eq!(code(&o), 7);
    assert!(stderr(&o).contains("no corpus entry"));
}

fn spoke_pages(dir: &Path, name: &str) -> (u64, u64) {
    let input = write_entry(dir, name);
    let out = dir.join("out");
    let o = run(&["spoke", s(&input), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(out.join(format!("{name}.report.json"))).unwrap()).unwrap();
    let pres = parse_presentation(&fs::read_to_string(out.join(format!("{name}.presentation.json"))).unwrap()).unwrap();
    assert_eq!(report["totals"]["achievedPages"].as_u64(), Some(pres.page_count() as u64));
    (pres.page_count() as u64, report["totals"]["bound"].as_u64().unwrap())
}

#[test]
fn spoke_examples() {
    let dir = TempDir::new().unwrap();
    assert_eq!(spoke_pages(dir.path(), "trefoil-v"), (5, 5));
    assert_eq!(spoke_pages(dir.path(), "theta-6"), (6, 6));
    assert_eq!(spoke_pages(dir.path(), "bouquet-4"), (8, 8));
    assert_eq!(spoke_pages(dir.path(), "figure-eight-v"), (6, 6));
    assert_eq!(spoke_pages(dir.path(), "theta-5x"), (8, 8));
}

#[test]
fn spoke_trace_and_render_files() {
    let dir = TempDir::new().unwrap();
    let input = write_entry(dir.path(), "theta3-plus-trefoil");
    let out = dir.path().join("o");
    let o = run(&["spoke", s(&input), "--out", s(&out), "--trace", "--render", "ascii", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "theta3-plus-trefoil: 8 pages, bound 8 (c = 3, e = 4, b = 1)\n");
    let trace = fs::read_to_string(out.join("theta3-plus-trefoil.trace.jsonl")).unwrap();
    let comps: Vec<String> = trace
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["component"].as_str().unwrap().to_string())
        .collect();
    assert!(comps.contains(&"C1".to_string()) && comps.contains(&"C2".to_string()));
    let ascii = fs::read_to_string(out.join("theta3-plus-trefoil.txt")).unwrap();
    let pres =
        parse_presentation(&fs::read_to_string(out.join("theta3-plus-trefoil.presentation.json")).unwrap()).unwrap();
    assert!(ascii.ends_with(&format!("8 pages, {} levels\n", pres.level_count())), "{ascii}");
    // nothing half-written is left behind
    for entry in fs::read_dir(&out).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(!name.ends_with(".tmp"), "{name}");
    }
}

#[test]
fn pivot_override() {
    let dir = TempDir::new().unwrap();
    let input = write_entry(dir.path(), "tetrahedron");
    let out = dir.path().join("o");
    for pivot in ["o", "a", "b", "c"] {
        let o = run(&["spoke", s(&input), "--out", s(&out), "--pivot", pivot]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).starts_with("tetrahedron: 6 pages"));
    }
    let o = run(&["spoke", s(&input), "--out", s(&out), "--pivot", "zz"]);
    assert_eq!(code(&o), 4);
    let trefoil = write_entry(dir.path(), "trefoil-v");
    let o = run(&["spoke", s(&trefoil), "--out", s(&out), "--pivot", "x1"]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
}

#[test]
fn several_files_with_one_failure() {
    let dir = TempDir::new().unwrap();
    let a = write_entry(dir.path(), "theta-4");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, GENUS_ONE_THETA).unwrap();
    let b = write_entry(dir.path(), "handcuff");
    let out = dir.path().join("o");
    let o = run(&["spoke", s(&a), s(&bad), s(&b), "--out", s(&out)]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("bad.json"));
    assert!(out.join("theta-4.presentation.json").exists());
    assert!(out.join("handcuff.presentation.json").exists());
    assert!(!out.join("bad.presentation.json").exists());

    let o = run(&["spoke", s(&a), s(&a), "--out", s(&out)]);
    assert_eq!(code(&o), 7);
}

#[test]
fn reduce_decompose_bound() {
    let dir = TempDir::new().unwrap();
    let kinked = write_entry(dir.path(), "trefoil-v-kinked");
    let o = run(&["reduce", s(&kinked)]);
    assert_eq!(code(&o), 0);
    let reduced = arcspoke::format::parse_diagram(&stdout(&o)).unwrap();
    assert_eq!(reduced.crossing_count(), 3);

    let wedge = write_entry(dir.path(), "wedge-two-trefoils");
    let o = run(&["decompose", s(&wedge)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert!(v["components"].as_array().unwrap().iter().all(|c| c["bouquet"] == true));

    let fig8 = write_entry(dir.path(), "figure-eight-v");
    let o = run(&["bound", s(&fig8)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["totals"]["bound"], 6);
    assert_eq!(v["totals"]["c"], 4);
    assert!(v["totals"]["achievedPages"].is_null());
    assert!(v["certificate"].as_str().unwrap().contains("c(D) + e + b(D)"));
}

#[test]
fn render_wheel_labels_match_presentation() {
    let dir = TempDir::new().unwrap();
    let input = write_entry(dir.path(), "trefoil-v");
    let out = dir.path().join("o");
    assert_eq!(code(&run(&["spoke", s(&input), "--out", s(&out)])), 0);
    let pres_path = out.join("trefoil-v.presentation.json");
    let pres = parse_presentation(&fs::read_to_string(&pres_path).unwrap()).unwrap();

    let o = run(&["render", s(&pres_path), "--format", "svg"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<line").count(), 5);
    let labels: Vec<[u32; 2]> = svg
        .split("</text>")
        .filter(|chunk| chunk.contains("<text"))
        .filter_map(|chunk| chunk.rsplit_once('>'))
        .map(|(_, label)| {
            let (i, j) = label.split_once(',').unwrap();
            [i.parse().unwrap(), j.parse().unwrap()]
        })
        .collect();
    assert_eq!(labels, pres.pages);

    let o = run(&["render", s(&pres_path), "--format", "ascii"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.ends_with("5 pages, 5 levels\n"), "{text}");
    assert_eq!(text.lines().count(), 1 + 5 + 1);
}

#[test]
fn render_two_page_loop_and_empty() {
    let dir = TempDir::new().unwrap();
    let input = write_entry(dir.path(), "bouquet-1");
    let out = dir.path().join("o");
    assert_eq!(code(&run(&["spoke", s(&input), "--out", s(&out)])), 0);
    let o = run(&["render", s(&out.join("bouquet-1.presentation.json")), "--format", "svg"]);
    assert_eq!(stdout(&o).matches("<line").count(), 2);

    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"binding": [], "pages": []}"#).unwrap();
    let o = run(&["render", s(&empty), "--format", "ascii"]);
    assert_eq!(code(&o), 7);
    assert!(stderr(&o).contains("nothing to render"));

    let invalid = dir.path().join("invalid.json");
    fs::write(&invalid, r#"{"binding": [{"level": 1, "kind": "pass"}], "pages": [{"page": 1, "arc": [1, 1]}]}"#)
        .unwrap();
    assert_eq!(code(&run(&["render", s(&invalid), "--format", "ascii"])), 5);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&[])), 7);
    assert_eq!(code(&run(&["frobnicate"])), 7);
    assert_eq!(code(&run(&["render", "x.json"])), 7);
    assert_eq!(code(&run(&["render", "x.json", "--format", "png"])), 7);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = write_entry(dir.path(), "figure-eight-v");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("o{k}"));
        let o = run(&["spoke", s(&input), "--out", s(&out), "--trace", "--seed", "11", "--render", "svg"]);
        assert_eq!(code(&o), 0);
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
            })
            .collect();
        files.sort();
        outputs.push(files);
    }
    assert_eq!(outputs[0].len(), 4);
    assert_eq!(outputs[0], outputs[1]);
}
