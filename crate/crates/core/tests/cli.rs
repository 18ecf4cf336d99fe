mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::data_dir;

fn numdecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numdecomp"))
        .arg("--data-dir")
        .arg(data_dir())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn decompose_prints_root_and_args() {
    let o = numdecomp(&["decompose", "--lang", "en", "--word", "sixty-nine"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "_ty-_(6, 9)\n");
}

#[test]
fn decompose_engine_flag() {
    let o = numdecomp(&[
        "decompose",
        "--lang",
        "es",
        "--word",
        "veintisiete",
        "--engine",
        "v2",
    ]);
    assert_eq!(stdout(&o), "veintisiete()\n");
    let o = numdecomp(&["decompose", "--lang", "es", "--word", "veintisiete"]);
    assert_eq!(stdout(&o), "veinti_(7)\n");
}

#[test]
fn decompose_trace_table() {
    let o = numdecomp(&[
        "decompose",
        "--lang",
        "de",
        "--word",
        "dreihunderteins",
        "--engine",
        "v2",
        "--trace",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "_hundert_(3, 1)");
    assert!(lines[1].starts_with("Cutout"));
    let cutouts: Vec<&str> = lines[2..]
        .iter()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(cutouts, ["X[0:4]", "X[0:11]", "X[11:15]"]);
}

#[test]
fn unknown_numeral_exits_two() {
    let o = numdecomp(&["decompose", "--lang", "en", "--word", "zzz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zzz"));
}

#[test]
fn missing_language_exits_one() {
    let o = numdecomp(&["decompose", "--lang", "xx", "--word", "one"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_goldens() {
    let o = numdecomp(&[
        "decompose",
        "--lang",
        "en",
        "--word",
        "sixty-nine",
        "--json",
    ]);
    assert_eq!(stdout(&o), golden("decompose_sixty_nine.json"));
    let o = numdecomp(&[
        "decompose",
        "--lang",
        "vmw",
        "--word",
        "miloko mithanu na mosa",
        "--json",
        "--trace",
    ]);
    assert_eq!(stdout(&o), golden("decompose_makuwa_trace.json"));
    let o = numdecomp(&["lexicon", "--lang", "de"]);
    assert_eq!(stdout(&o), golden("lexicon_de.json"));
}

#[test]
fn lexicon_writes_file_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("en.json");
    let o = numdecomp(&[
        "lexicon",
        "--lang",
        "en",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "30 entries\n");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 30);
    let hundred_and = entries
        .iter()
        .find(|e| e["root"] == "_ hundred and _")
        .unwrap();
    assert_eq!(hundred_and["fit"]["coeffs"], serde_json::json!([100, 1]));
    assert_eq!(hundred_and["fit"]["c0"], 0);

    let o = numdecomp(&[
        "lexicon",
        "--lang",
        "en",
        "--engine",
        "v2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o), "30 entries\n");
}

#[test]
fn empty_dataset_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.tsv");
    fs::write(&path, "\n").unwrap();
    let o = numdecomp(&["lexicon", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn csv_goldens() {
    let o = numdecomp(&["evaluate"]);
    assert_eq!(stdout(&o), golden("evaluate_v6.csv"));
    let o = numdecomp(&["evaluate", "--engine", "v2", "--serial"]);
    assert_eq!(stdout(&o), golden("evaluate_v2.csv"));
    let o = numdecomp(&["compare"]);
    assert_eq!(stdout(&o), golden("compare.csv"));
}

#[test]
fn evaluate_rows() {
    let o = numdecomp(&["evaluate", "--lang", "en", "--lang", "es"]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1][..4], ["en", "v6", "999", "30"]);
    assert_eq!(rows[2][0], "es");
}

#[test]
fn compare_shows_spanish_gain() {
    let o = numdecomp(&["compare", "--lang", "es"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let (v2, v6): (usize, usize) = (row[1].parse().unwrap(), row[2].parse().unwrap());
    assert!(v6 < v2, "{text}");
}

#[test]
fn empty_data_dir_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, header) in [
        (
            "evaluate",
            "language,engine,dataset_size,lexicon_size,failures,degenerate,status\n",
        ),
        ("compare", "language,size_v2,size_v6,ratio,status\n"),
    ] {
        let o = Command::new(env!("CARGO_BIN_EXE_numdecomp"))
            .args(["--data-dir", dir.path().to_str().unwrap(), cmd])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), header);
    }
}

#[test]
fn unreadable_language_is_skipped() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("aa.tsv"), "1\tone\n").unwrap();
    fs::write(dir.path().join("zz.tsv"), "x\ty\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_numdecomp"))
        .args(["--data-dir", dir.path().to_str().unwrap(), "evaluate"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("zz,v6,,,,,skipped\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped zz"));
}

#[test]
fn validate_reports_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.tsv");
    fs::write(&path, "1\tja\n5\tkua\n7\tkua\n").unwrap();
    let o = numdecomp(&["validate", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dup (3 numerals)\nduplicate \"kua\": 5, 7\n");
}

#[test]
fn nfc_flag_normalizes_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("es.tsv");
    // decomposed "é"
    fs::write(&path, "3\ttres\n23\tveintitre\u{301}s\n").unwrap();
    let composed = "veintitr\u{e9}s";
    let o = numdecomp(&[
        "decompose",
        "--file",
        path.to_str().unwrap(),
        "--word",
        composed,
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = numdecomp(&[
        "--normalize-nfc",
        "decompose",
        "--file",
        path.to_str().unwrap(),
        "--word",
        composed,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{composed}()\n"));
}
