mod common;

use common::bundled;
use numeral_decomposer::decomposer::{
    decompose_v1, Criterion, Decomposer, Decomposition, Engine, Verdict,
};

fn run(lang: &str, engine: Engine, word: &str) -> Decomposition {
    Decomposer::new(engine)
        .with_trace(true)
        .decompose(&bundled(lang), word)
        .unwrap()
}

fn shown(lang: &str, engine: Engine, word: &str) -> String {
    run(lang, engine, word).to_string()
}

#[test]
fn english_sixty_nine() {
    for engine in [Engine::V1, Engine::V2, Engine::V6] {
        assert_eq!(shown("en", engine, "sixty-nine"), "_ty-_(6, 9)");
    }
}

#[test]
fn english_sixty_nine_rows() {
    let d = run("en", Engine::V2, "sixty-nine");
    let rows: Vec<(String, Verdict, usize, usize, Vec<i64>)> = d
        .trace
        .unwrap()
        .into_iter()
        .map(|r| {
            (
                r.substring,
                r.verdict,
                r.checkpoint_before,
                r.checkpoint_after,
                r.unpacked,
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            ("six".into(), Verdict::Unpacked, 0, 0, vec![6]),
            ("sixty".into(), Verdict::Rejected, 0, 5, vec![6]),
            ("nine".into(), Verdict::Unpacked, 5, 5, vec![6, 9]),
        ]
    );
}

#[test]
fn german_hundreds() {
    assert_eq!(
        shown("de", Engine::V2, "dreihunderteins"),
        "_hundert_(3, 1)"
    );
    assert_eq!(
        shown("de", Engine::V6, "dreihunderteins"),
        "_hundert_(3, 1)"
    );
}

#[test]
fn german_without_checkpoint_reads_the_summand_combination() {
    let d = decompose_v1(&bundled("de"), "dreihunderteins").unwrap();
    assert_eq!(d.arg_values(), vec![3, 101]);
    assert_eq!(d.root.render(), "__");
}

#[test]
fn spanish_masked_twenty() {
    assert_eq!(shown("es", Engine::V2, "veinticinco"), "veinticinco()");
    assert_eq!(shown("es", Engine::V2, "veintisiete"), "veintisiete()");
    assert_eq!(shown("es", Engine::V6, "veinticinco"), "veinti_(5)");
    assert_eq!(shown("es", Engine::V6, "veintisiete"), "veinti_(7)");
    for word in ["veintiuno", "veinticuatro", "veintiocho", "veintinueve"] {
        assert!(
            shown("es", Engine::V6, word).starts_with("veinti_("),
            "{word}"
        );
    }
    // the accent hides "dos", "tres" and "seis"
    for word in ["veintidós", "veintitrés", "veintiséis"] {
        assert_eq!(shown("es", Engine::V6, word), format!("{word}()"));
    }
}

#[test]
fn spanish_v2_trace_single_row() {
    let d = run("es", Engine::V2, "veinticinco");
    let rows = d.trace.unwrap();
    let first_reject = rows
        .iter()
        .find(|r| r.verdict == Verdict::Rejected)
        .unwrap();
    assert_eq!(first_reject.substring, "veinticinco");
    assert_eq!(
        (
            first_reject.checkpoint_before,
            first_reject.checkpoint_after
        ),
        (0, 11)
    );
    assert!(rows.iter().all(|r| r.verdict != Verdict::Unpacked));
}

#[test]
fn finnish_inflected_multiplier() {
    assert_eq!(shown("fi", Engine::V6, "kaksisataayksi"), "_sataa_(2, 1)");
}

#[test]
fn makuwa_multiplier_after_factor() {
    let d = run("vmw", Engine::V6, "miloko mithanu na mosa");
    assert_eq!(d.to_string(), "miloko mi_(6)");
    let rows: Vec<(String, usize, usize, Vec<i64>)> = d
        .trace
        .unwrap()
        .into_iter()
        .map(|r| {
            (
                r.substring,
                r.checkpoint_before,
                r.checkpoint_after,
                r.unpacked,
            )
        })
        .collect();
    assert_eq!(
        rows,
        vec![
            ("miloko mithanu".into(), 0, 14, vec![]),
            ("thanu".into(), 14, 9, vec![5]),
            ("thanu na mosa".into(), 9, 9, vec![6]),
        ]
    );
}

#[test]
fn nyungwe_multiplier_first() {
    assert_eq!(
        shown("nyu", Engine::V2, "mak'umi matatu na zinai"),
        "ma_ matatu na zi_(10, 4)"
    );
    assert_eq!(
        shown("nyu", Engine::V6, "mak'umi matatu na zinai"),
        "mak'umi ma_ na zi_(3, 4)"
    );
}

#[test]
fn sakha_over_trigger() {
    let d = run("sah", Engine::V6, "икки сүүс тоҕус уон тоҕус");
    assert_eq!(d.to_string(), "_ сү_ тоҕус уон тоҕус(2, 3)");
    let dropped: Vec<i64> = d
        .trace
        .unwrap()
        .iter()
        .filter(|r| r.criterion == Criterion::MuPostpass && r.verdict == Verdict::UnUnpacked)
        .map(|r| r.value)
        .collect();
    // 3·99 + 2 = 299
    assert_eq!(dropped, vec![99]);
}

#[test]
fn upper_sorbian_summand_factor_multiplier() {
    let d = run("hsb", Engine::V2, "jedynašěścdźesat");
    assert_eq!(d.to_string(), "_a_dźesat(1, 6)");
    // the rescue loop reads 60, which the post-pass then drops as 1 + 60
    assert_eq!(
        shown("hsb", Engine::V6, "jedynašěścdźesat"),
        "_ašěścdźesat(1)"
    );
}

#[test]
fn french_vigesimal() {
    assert_eq!(
        shown("fr", Engine::V6, "quatre-vingt-seize"),
        "_-_-seize(4, 20)"
    );
    let words = [
        "quatre-vingt-un",
        "quatre-vingt-deux",
        "quatre-vingt-trois",
        "quatre-vingt-quatre",
        "quatre-vingt-cinq",
        "quatre-vingt-six",
        "quatre-vingt-sept",
        "quatre-vingt-huit",
        "quatre-vingt-neuf",
    ];
    for (i, word) in words.iter().enumerate() {
        let d = run("fr", Engine::V6, word);
        assert_eq!(d.root.render(), "_-vingt-_", "{word}");
        assert_eq!(d.arg_values(), vec![4, i as i64 + 1], "{word}");
    }
    assert_eq!(shown("fr", Engine::V6, "quatre-vingts"), "_-vingts(4)");
}

#[test]
fn text_table_mirrors_rows() {
    let d = run("en", Engine::V2, "sixty-nine");
    let table = numeral_decomposer::decomposer::render_table(d.trace.as_ref().unwrap(), d.value);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(
        lines[2].contains("sixty") && lines[2].contains("0 → 5"),
        "{table}"
    );
}
