//! Grouping decompositions into root functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::decomposer::{Decomposition, Span};

/// Literal segments around the argument slots of a decomposition.
///
/// `segments.len() == arity + 1`; segments may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootKey {
    segments: Vec<String>,
}

impl RootKey {
    pub fn new(segments: Vec<String>) -> Self {
        assert!(!segments.is_empty(), "a root has at least one segment");
        RootKey { segments }
    }

    /// Root of `word` with `spans` (sorted, disjoint) cut out.
    pub fn from_spans(word: &[char], spans: &[Span]) -> Self {
        let mut segments = Vec::with_capacity(spans.len() + 1);
        let mut pos = 0;
        for span in spans {
            segments.push(word[pos..span.start].iter().collect());
            pos = span.end;
        }
        segments.push(word[pos..].iter().collect());
        RootKey { segments }
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    pub fn arity(&self) -> usize {
        self.segments.len() - 1
    }

    /// Segments joined by `_`; a literal `_` inside a segment renders as `\_`.
    pub fn render(&self) -> String {
        self.segments
            .iter()
            .map(|s| s.replace('_', "\\_"))
            .collect::<Vec<_>>()
            .join("_")
    }
}

impl fmt::Display for RootKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn root_of(d: &Decomposition) -> RootKey {
    let word: Vec<char> = d.word.chars().collect();
    RootKey::from_spans(&word, &d.spans())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Sample {
    pub args: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceWord {
    pub value: i64,
    pub word: String,
}

/// One root function with everything observed for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub root: RootKey,
    pub samples: BTreeSet<Sample>,
    /// Sorted by value, then word.
    pub source_words: Vec<SourceWord>,
}

impl LexiconEntry {
    pub fn arity(&self) -> usize {
        self.root.arity()
    }

    /// Argument tuples observed with more than one value.
    pub fn conflicts(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut by_args: BTreeMap<&[i64], Vec<i64>> = BTreeMap::new();
        for s in &self.samples {
            by_args.entry(&s.args).or_default().push(s.value);
        }
        by_args
            .into_iter()
            .filter(|(_, values)| values.len() > 1)
            .map(|(args, values)| (args.to_vec(), values))
            .collect()
    }

    pub fn has_conflict(&self) -> bool {
        self.samples
            .iter()
            .zip(self.samples.iter().skip(1))
            .any(|(a, b)| a.args == b.args)
    }
}

/// Groups decompositions by root. Entries are ordered by arity, then by
/// rendered root.
pub fn build_lexicon(decompositions: &[Decomposition]) -> Vec<LexiconEntry> {
    let mut groups: BTreeMap<RootKey, (BTreeSet<Sample>, Vec<SourceWord>)> = BTreeMap::new();
    for d in decompositions {
        let (samples, sources) = groups.entry(root_of(d)).or_default();
        samples.insert(Sample {
            args: d.arg_values(),
            value: d.value,
        });
        sources.push(SourceWord {
            value: d.value,
            word: d.word.clone(),
        });
    }
    let mut entries: Vec<LexiconEntry> = groups
        .into_iter()
        .map(|(root, (samples, mut source_words))| {
            source_words.sort();
            LexiconEntry {
                root,
                samples,
                source_words,
            }
        })
        .collect();
    entries.sort_by_cached_key(|e| (e.arity(), e.root.render(), e.root.clone()));
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::NumeralDictionary;
    use crate::decomposer::{decompose_v6, Decomposer, Engine};

    fn english_teens() -> NumeralDictionary {
        NumeralDictionary::from_tsv_str(
            "en",
            "4\tfour\n6\tsix\n7\tseven\n9\tnine\n14\tfourteen\n16\tsixteen\n17\tseventeen\n19\tnineteen\n",
        )
        .unwrap()
    }

    #[test]
    fn root_rendering() {
        let word: Vec<char> = "sixty-nine".chars().collect();
        let root = RootKey::from_spans(&word, &[Span::new(0, 3), Span::new(6, 10)]);
        assert_eq!(root.segments(), &["", "ty-", ""]);
        assert_eq!(root.render(), "_ty-_");
        assert_eq!(root.arity(), 2);

        let word: Vec<char> = "twenty-seven thousand and two hundred and six"
            .chars()
            .collect();
        let root = RootKey::from_spans(&word, &[Span::new(0, 12), Span::new(26, 45)]);
        assert_eq!(root.render(), "_ thousand and _");

        let atom = RootKey::from_spans(&"ten".chars().collect::<Vec<_>>(), &[]);
        assert_eq!(atom.render(), "ten");
        assert_eq!(atom.arity(), 0);
    }

    #[test]
    fn underscore_in_data_is_escaped_for_display_only() {
        let a = RootKey::new(vec!["a_b".into()]);
        let b = RootKey::new(vec!["a".into(), "b".into()]);
        assert_eq!(a.render(), "a\\_b");
        assert_eq!(b.render(), "a_b");
        assert_ne!(a, b);
    }

    #[test]
    fn teens_share_one_entry() {
        let dict = english_teens();
        let ds: Vec<_> = ["fourteen", "sixteen"]
            .iter()
            .map(|w| decompose_v6(&dict, w).unwrap())
            .collect();
        let lexicon = build_lexicon(&ds);
        assert_eq!(lexicon.len(), 1);
        let entry = &lexicon[0];
        assert_eq!(entry.root.render(), "_teen");
        let samples: Vec<(Vec<i64>, i64)> = entry
            .samples
            .iter()
            .map(|s| (s.args.clone(), s.value))
            .collect();
        assert_eq!(samples, vec![(vec![4], 14), (vec![6], 16)]);
        assert!(!entry.has_conflict());
    }

    #[test]
    fn single_decomposition() {
        let d = decompose_v6(&english_teens(), "nine").unwrap();
        let lexicon = build_lexicon(&[d]);
        assert_eq!(lexicon.len(), 1);
        assert_eq!(lexicon[0].samples.len(), 1);
        assert_eq!(lexicon[0].source_words[0].word, "nine");
    }

    #[test]
    fn homograph_values_conflict() {
        let dict = NumeralDictionary::from_tsv_str("x", "1\tja\n5\tkua\n7\tkua\n").unwrap();
        let engine = Decomposer::new(Engine::V6);
        let ds: Vec<_> = dict
            .entries()
            .map(|(n, w)| engine.decompose_entry(&dict, w, n).unwrap())
            .collect();
        let lexicon = build_lexicon(&ds);
        let kua = lexicon.iter().find(|e| e.root.render() == "kua").unwrap();
        assert!(kua.has_conflict());
        assert_eq!(kua.conflicts(), vec![(vec![], vec![5, 7])]);
        assert_eq!(kua.source_words.len(), 2);
    }

    #[test]
    fn ordering_is_by_arity_then_root() {
        let dict = english_teens();
        let ds: Vec<_> = dict
            .entries()
            .map(|(_, w)| decompose_v6(&dict, w).unwrap())
            .collect();
        let keys: Vec<(usize, String)> = build_lexicon(&ds)
            .iter()
            .map(|e| (e.arity(), e.root.render()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.last().unwrap(), &(1, "_teen".to_owned()));
    }
}
