//! Whole-dataset evaluation: lexicon sizes, fit failures, engine comparison.

mod synth;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use synth::{synth_language, JoinRules, SynthError};

use crate::dataset::{load_dictionary_with, Duplicate, LoadOptions, NumeralDictionary};
use crate::decomposer::{DecomposeError, Decomposer, Decomposition, Engine};
use crate::fitter::{fit_affine, FitOutcome};
use crate::lexicon::{build_lexicon, LexiconEntry};

/// A lexicon entry together with its fitted equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittedEntry {
    pub entry: LexiconEntry,
    pub fit: FitOutcome,
}

impl Serialize for FittedEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let sources: Vec<&str> = self
            .entry
            .source_words
            .iter()
            .map(|s| s.word.as_str())
            .collect();
        let samples: Vec<_> = self.entry.samples.iter().collect();
        let mut s = serializer.serialize_struct("FittedEntry", 5)?;
        s.serialize_field("root", &self.entry.root.render())?;
        s.serialize_field("arity", &self.entry.arity())?;
        s.serialize_field("samples", &samples)?;
        s.serialize_field("sources", &sources)?;
        s.serialize_field("fit", &self.fit)?;
        s.end()
    }
}

pub fn fit_entry(entry: LexiconEntry) -> FittedEntry {
    let fit = fit_affine(
        entry.samples.iter().map(|s| (s.args.as_slice(), s.value)),
        entry.arity(),
    )
    .expect("lexicon entries are nonempty and arity-consistent");
    FittedEntry { entry, fit }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureClass {
    Inconsistent,
    NonIntegerOnly,
    Conflict,
}

impl FailureClass {
    fn of(fit: &FitOutcome) -> Option<Self> {
        match fit {
            FitOutcome::Exact(_) => None,
            FitOutcome::Inconsistent => Some(FailureClass::Inconsistent),
            FitOutcome::NonIntegerOnly => Some(FailureClass::NonIntegerOnly),
            FitOutcome::Conflict => Some(FailureClass::Conflict),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitFailure {
    pub root: String,
    pub class: FailureClass,
}

/// Metrics of one language under one engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageReport {
    pub language_id: String,
    pub engine: Engine,
    pub dataset_size: usize,
    pub lexicon_size: usize,
    pub fit_failures: Vec<FitFailure>,
    pub duplicate_flags: Vec<Duplicate>,
    /// Every numeral needed its own root.
    pub degenerate: bool,
    pub lexicon: Vec<FittedEntry>,
}

pub fn decompose_all(
    dict: &NumeralDictionary,
    engine: Engine,
) -> Result<Vec<Decomposition>, DecomposeError> {
    let decomposer = Decomposer::new(engine);
    dict.entries()
        .map(|(value, word)| decomposer.decompose_entry(dict, word, value))
        .collect()
}

pub fn evaluate_language(
    dict: &NumeralDictionary,
    engine: Engine,
) -> Result<LanguageReport, DecomposeError> {
    let decompositions = decompose_all(dict, engine)?;
    let lexicon: Vec<FittedEntry> = build_lexicon(&decompositions)
        .into_iter()
        .map(fit_entry)
        .collect();
    let fit_failures = lexicon
        .iter()
        .filter_map(|e| {
            FailureClass::of(&e.fit).map(|class| FitFailure {
                root: e.entry.root.render(),
                class,
            })
        })
        .collect();
    Ok(LanguageReport {
        language_id: dict.language_id().to_owned(),
        engine,
        dataset_size: dict.len(),
        lexicon_size: lexicon.len(),
        fit_failures,
        duplicate_flags: dict.duplicates().to_vec(),
        degenerate: lexicon.len() == dict.len(),
        lexicon,
    })
}

impl LanguageReport {
    pub fn entry(&self, root: &str) -> Option<&FittedEntry> {
        self.lexicon.iter().find(|e| e.entry.root.render() == root)
    }

    /// `{"language", "engine", "size", "entries": [...]}`
    pub fn lexicon_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            language: &'a str,
            engine: Engine,
            size: usize,
            entries: &'a [FittedEntry],
        }
        let mut out = serde_json::to_string_pretty(&Doc {
            language: &self.language_id,
            engine: self.engine,
            size: self.lexicon_size,
            entries: &self.lexicon,
        })
        .expect("lexicon serializes");
        out.push('\n');
        out
    }
}

/// Lexicon sizes of one language under both shipped engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub language_id: String,
    pub size_v2: usize,
    pub size_v6: usize,
}

impl ComparisonRow {
    /// `size_v6 / size_v2` rounded half-up to four decimals.
    pub fn ratio_string(&self) -> String {
        let (num, den) = (self.size_v6 as u128, self.size_v2 as u128);
        if den == 0 {
            return "NaN".to_owned();
        }
        let scaled = (num * 20_000 + den) / (2 * den);
        format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
    }
}

pub fn compare_versions(dict: &NumeralDictionary) -> Result<ComparisonRow, DecomposeError> {
    Ok(ComparisonRow {
        language_id: dict.language_id().to_owned(),
        size_v2: evaluate_language(dict, Engine::V2)?.lexicon_size,
        size_v6: evaluate_language(dict, Engine::V6)?.lexicon_size,
    })
}

/// Coarse failure buckets. Telling a bad decomposition from a plausible
/// misreading needs a human, so both land in one bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureBucket {
    IncorrectInputData,
    MisinterpretationOrBadDecomposition,
}

impl fmt::Display for FailureBucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureBucket::IncorrectInputData => "incorrect input data",
            FailureBucket::MisinterpretationOrBadDecomposition => {
                "misinterpretation or bad decomposition"
            }
        })
    }
}

/// bucket → language → roots needing review
pub type FailureSummary = BTreeMap<FailureBucket, BTreeMap<String, Vec<String>>>;

pub fn classify_failures<'a, I>(reports: I) -> FailureSummary
where
    I: IntoIterator<Item = &'a LanguageReport>,
{
    let mut summary = FailureSummary::new();
    for report in reports {
        for failure in &report.fit_failures {
            let bucket = match failure.class {
                FailureClass::Conflict => FailureBucket::IncorrectInputData,
                FailureClass::Inconsistent | FailureClass::NonIntegerOnly => {
                    FailureBucket::MisinterpretationOrBadDecomposition
                }
            };
            summary
                .entry(bucket)
                .or_default()
                .entry(report.language_id.clone())
                .or_default()
                .push(failure.root.clone());
        }
    }
    summary
}

// ---------------------------------------------------------------------------
// Directory-level runs

/// `<dir>/<language_id>.tsv`, sorted by language id.
pub fn discover_languages(dir: &Path) -> io::Result<Vec<(String, PathBuf)>> {
    let mut found = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("tsv") || !path.is_file() {
            continue;
        }
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            found.push((stem.to_owned(), path));
        }
    }
    found.sort();
    Ok(found)
}

#[derive(Debug, Clone, Default)]
pub struct CorpusOptions {
    pub load: LoadOptions,
    /// Restrict to these language ids; empty means all.
    pub languages: Vec<String>,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageOutcome<T> {
    Done(T),
    /// The file could not be loaded.
    Skipped {
        language_id: String,
        reason: String,
    },
    /// An engine invariant failed on this language.
    Failed {
        language_id: String,
        reason: String,
    },
}

impl<T> LanguageOutcome<T> {
    pub fn status(&self) -> &'static str {
        match self {
            LanguageOutcome::Done(_) => "ok",
            LanguageOutcome::Skipped { .. } => "skipped",
            LanguageOutcome::Failed { .. } => "error",
        }
    }
}

fn run_corpus<T, F>(
    dir: &Path,
    options: &CorpusOptions,
    per_language: F,
) -> io::Result<Vec<LanguageOutcome<T>>>
where
    T: Send,
    F: Fn(&NumeralDictionary) -> Result<T, DecomposeError> + Sync,
{
    let files: Vec<(String, PathBuf)> = discover_languages(dir)?
        .into_iter()
        .filter(|(id, _)| options.languages.is_empty() || options.languages.contains(id))
        .collect();
    let run_one =
        |(id, path): &(String, PathBuf)| match load_dictionary_with(path, id, options.load) {
            Err(e) => LanguageOutcome::Skipped {
                language_id: id.clone(),
                reason: e.to_string(),
            },
            Ok(dict) => match per_language(&dict) {
                Ok(v) => LanguageOutcome::Done(v),
                Err(e) => LanguageOutcome::Failed {
                    language_id: id.clone(),
                    reason: e.to_string(),
                },
            },
        };
    // Both paths keep the sorted file order.
    Ok(if options.parallel {
        files.par_iter().map(run_one).collect()
    } else {
        files.iter().map(run_one).collect()
    })
}

pub fn evaluate_corpus(
    dir: &Path,
    engine: Engine,
    options: &CorpusOptions,
) -> io::Result<Vec<LanguageOutcome<LanguageReport>>> {
    run_corpus(dir, options, |dict| evaluate_language(dict, engine))
}

pub fn compare_corpus(
    dir: &Path,
    options: &CorpusOptions,
) -> io::Result<Vec<LanguageOutcome<ComparisonRow>>> {
    run_corpus(dir, options, compare_versions)
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    write(&mut w).expect("writing CSV to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
}

/// Columns: language, engine, dataset_size, lexicon_size, failures,
/// degenerate, status.
pub fn report_csv(engine: Engine, rows: &[LanguageOutcome<LanguageReport>]) -> String {
    csv_string(|w| {
        w.write_record([
            "language",
            "engine",
            "dataset_size",
            "lexicon_size",
            "failures",
            "degenerate",
            "status",
        ])?;
        for row in rows {
            match row {
                LanguageOutcome::Done(r) => w.write_record([
                    r.language_id.as_str(),
                    r.engine.as_str(),
                    &r.dataset_size.to_string(),
                    &r.lexicon_size.to_string(),
                    &r.fit_failures.len().to_string(),
                    if r.degenerate { "true" } else { "false" },
                    row.status(),
                ])?,
                LanguageOutcome::Skipped { language_id, .. }
                | LanguageOutcome::Failed { language_id, .. } => w.write_record([
                    language_id.as_str(),
                    engine.as_str(),
                    "",
                    "",
                    "",
                    "",
                    row.status(),
                ])?,
            }
        }
        Ok(())
    })
}

/// Columns: language, size_v2, size_v6, ratio, status.
pub fn comparison_csv(rows: &[LanguageOutcome<ComparisonRow>]) -> String {
    csv_string(|w| {
        w.write_record(["language", "size_v2", "size_v6", "ratio", "status"])?;
        for row in rows {
            match row {
                LanguageOutcome::Done(c) => w.write_record([
                    c.language_id.as_str(),
                    &c.size_v2.to_string(),
                    &c.size_v6.to_string(),
                    &c.ratio_string(),
                    row.status(),
                ])?,
                LanguageOutcome::Skipped { language_id, .. }
                | LanguageOutcome::Failed { language_id, .. } => {
                    w.write_record([language_id.as_str(), "", "", "", row.status()])?
                }
            }
        }
        Ok(())
    })
}
