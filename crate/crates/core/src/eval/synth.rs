//! Fully regular positional numeral systems with known decompositions.
//!
//! For `n = h·b² + t·b + u` the generated numeral is
//! `[digit(h) hundreds infix] [digit(t) tens infix] [digit(u)]`, omitting
//! zero parts and the trailing infix. Used as an oracle for engine
//! properties: the correct lexicon has exactly `b + 3` entries.

use std::collections::HashSet;

use crate::dataset::NumeralDictionary;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("base {0} is out of range (3..=100)")]
    BaseOutOfRange(u32),
    #[error("expected {expected} digit words, got {got}")]
    DigitCount { expected: usize, got: usize },
    #[error("empty digit word or join string")]
    EmptyWord,
    #[error("{0:?} and {1:?} overlap")]
    Overlap(String, String),
    #[error("{substring:?} occurs by accident inside {numeral:?}")]
    AccidentalSubNumeral { numeral: String, substring: String },
}

/// Strings that glue digit words into larger numerals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinRules {
    /// Appended to a digit word to name `digit·base`.
    pub tens: String,
    /// Appended to a digit word to name `digit·base²`.
    pub hundreds: String,
    /// Between a multiple of the base and the summand that follows it.
    pub infix: String,
}

impl Default for JoinRules {
    fn default() -> Self {
        JoinRules {
            tens: "-t".into(),
            hundreds: "-h".into(),
            infix: " ".into(),
        }
    }
}

/// Builds the numerals `1 ..= base³ - 1`.
///
/// Base 2 is refused: there `1·2 + 0` has a factor failing `2·s < x`, so the
/// system is not decomposable by construction.
pub fn synth_language(
    base: u32,
    digit_words: &[&str],
    rules: &JoinRules,
) -> Result<NumeralDictionary, SynthError> {
    if !(3..=100).contains(&base) {
        return Err(SynthError::BaseOutOfRange(base));
    }
    let b = base as i64;
    if digit_words.len() != base as usize - 1 {
        return Err(SynthError::DigitCount {
            expected: base as usize - 1,
            got: digit_words.len(),
        });
    }
    let pieces: Vec<&str> = digit_words
        .iter()
        .copied()
        .chain([rules.tens.as_str(), rules.hundreds.as_str()])
        .collect();
    if pieces.iter().any(|p| p.is_empty()) {
        return Err(SynthError::EmptyWord);
    }
    for (i, a) in pieces.iter().enumerate() {
        for (j, c) in pieces.iter().enumerate() {
            let both_joins = i >= digit_words.len() && j >= digit_words.len();
            if i != j && !both_joins && c.contains(a) {
                return Err(SynthError::Overlap(a.to_string(), c.to_string()));
            }
        }
    }
    for w in digit_words {
        if rules.infix.contains(w) || (!rules.infix.is_empty() && w.contains(rules.infix.as_str()))
        {
            return Err(SynthError::Overlap(w.to_string(), rules.infix.clone()));
        }
    }

    let numeral = |n: i64| -> String {
        let (h, rest) = (n / (b * b), n % (b * b));
        let (t, u) = (rest / b, rest % b);
        let mut parts = Vec::new();
        if h > 0 {
            parts.push(format!("{}{}", digit_words[h as usize - 1], rules.hundreds));
        }
        if t > 0 {
            parts.push(format!("{}{}", digit_words[t as usize - 1], rules.tens));
        }
        if u > 0 {
            parts.push(digit_words[u as usize - 1].to_owned());
        }
        parts.join(&rules.infix)
    };

    let max = b * b * b - 1;
    let pairs: Vec<(i64, String)> = (1..=max).map(|n| (n, numeral(n))).collect();
    let dict = NumeralDictionary::from_pairs("synthetic", pairs.iter().cloned())
        .expect("generated numerals are nonempty and positive");

    // Every dictionary substring of a numeral must be one of its intended
    // constituents or a leading part of it (`ka-h ka` inside `ka-h ka-t`).
    for (n, word) in &pairs {
        let (h, rest) = (n / (b * b), n % (b * b));
        let (t, u) = (rest / b, rest % b);
        let mut intended: HashSet<i64> = HashSet::from([*n]);
        for part in [
            h,
            h * b * b,
            rest,
            t,
            t * b,
            u,
            h * b * b + t,
            h * b * b + t * b,
        ] {
            if part > 0 {
                intended.insert(part);
            }
        }
        let chars: Vec<char> = word.chars().collect();
        for start in 0..chars.len() {
            for end in start + 1..=chars.len() {
                if let Some(v) = dict.value_of(&chars[start..end]) {
                    if !intended.contains(&v) {
                        return Err(SynthError::AccidentalSubNumeral {
                            numeral: word.clone(),
                            substring: chars[start..end].iter().collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(dict)
}
