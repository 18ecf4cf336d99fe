#![allow(dead_code)]

use std::path::PathBuf;

use numeral_decomposer::dataset::{load_dictionary, NumeralDictionary};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn bundled(lang: &str) -> NumeralDictionary {
    load_dictionary(&data_dir().join(format!("{lang}.tsv")), lang)
        .unwrap_or_else(|e| panic!("bundled {lang}: {e}"))
}

pub const BUNDLED: [&str; 10] = [
    "de", "en", "es", "fa", "fi", "fr", "hsb", "nyu", "sah", "vmw",
];

/// Two-letter consonant-vowel words; equal length, so none contains another.
pub fn cv_words(n: usize) -> Vec<String> {
    let mut words = Vec::new();
    for c in "bcdfgjklmnpqrsvwxyz".chars() {
        for v in "aeiou".chars() {
            words.push(format!("{c}{v}"));
        }
    }
    assert!(n <= words.len());
    words.truncate(n);
    words
}
