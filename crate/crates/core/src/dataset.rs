//! Number/numeral dictionaries: loading, validation and lookup.
//!
//! Two on-disk formats are accepted by the same loader:
//!
//! * TSV, one record per line: `<decimal number>\t<numeral>\n`
//! * JSON, `{"language": "<id>", "entries": {"<number>": "<numeral>", ...}}`
//!
//! Numerals are stored verbatim. All positional work downstream indexes
//! numerals by Unicode codepoint.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid JSON dataset: {0}")]
    Json(String),
    #[error("dataset contains no entries")]
    Empty,
}

fn parse_error(line: usize, reason: impl Into<String>) -> DatasetError {
    DatasetError::Parse {
        line,
        reason: reason.into(),
    }
}

/// One numeral string that names more than one number in the source data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duplicate {
    pub numeral: String,
    /// Ascending. The first element is what [`NumeralDictionary::value_of`] returns.
    pub numbers: Vec<i64>,
}

/// Loader switches that alter the stored strings.
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Apply Unicode NFC to every numeral before indexing.
    pub normalize_nfc: bool,
}

/// Immutable two-way map between numbers and numerals of one language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumeralDictionary {
    language_id: String,
    forward: BTreeMap<i64, String>,
    reverse: HashMap<Vec<char>, i64>,
    duplicates: Vec<Duplicate>,
}

impl NumeralDictionary {
    /// Builds a dictionary from `(number, numeral)` pairs.
    ///
    /// `line_of` maps the pair's position to a line number for error messages.
    fn build<I>(language_id: &str, entries: I, options: LoadOptions) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = (usize, i64, String)>,
    {
        let mut forward = BTreeMap::new();
        for (line, number, numeral) in entries {
            if number < 1 {
                return Err(parse_error(
                    line,
                    format!("number {number} is not positive"),
                ));
            }
            if numeral.trim().is_empty() {
                return Err(parse_error(line, "empty numeral"));
            }
            let numeral = if options.normalize_nfc {
                numeral.nfc().collect()
            } else {
                numeral
            };
            if forward.insert(number, numeral).is_some() {
                return Err(parse_error(line, format!("number {number} listed twice")));
            }
        }
        if forward.is_empty() {
            return Err(DatasetError::Empty);
        }

        let mut by_numeral: HashMap<Vec<char>, Vec<i64>> = HashMap::new();
        // forward iterates in ascending number order, so each list is sorted.
        for (&number, numeral) in &forward {
            by_numeral
                .entry(numeral.chars().collect())
                .or_default()
                .push(number);
        }
        let mut duplicates: Vec<Duplicate> = by_numeral
            .iter()
            .filter(|(_, numbers)| numbers.len() > 1)
            .map(|(chars, numbers)| Duplicate {
                numeral: chars.iter().collect(),
                numbers: numbers.clone(),
            })
            .collect();
        duplicates.sort_by(|a, b| a.numbers[0].cmp(&b.numbers[0]));
        let reverse = by_numeral
            .into_iter()
            .map(|(chars, numbers)| (chars, numbers[0]))
            .collect();

        Ok(NumeralDictionary {
            language_id: language_id.to_owned(),
            forward,
            reverse,
            duplicates,
        })
    }

    pub fn from_pairs<I, S>(language_id: &str, pairs: I) -> Result<Self, DatasetError>
    where
        I: IntoIterator<Item = (i64, S)>,
        S: Into<String>,
    {
        Self::build(
            language_id,
            pairs
                .into_iter()
                .enumerate()
                .map(|(i, (n, s))| (i + 1, n, s.into())),
            LoadOptions::default(),
        )
    }

    pub fn from_tsv_str(language_id: &str, text: &str) -> Result<Self, DatasetError> {
        Self::from_tsv_str_with(language_id, text, LoadOptions::default())
    }

    pub fn from_tsv_str_with(
        language_id: &str,
        text: &str,
        options: LoadOptions,
    ) -> Result<Self, DatasetError> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut entries = Vec::new();
        for (idx, raw) in text.split('\n').enumerate() {
            let line = idx + 1;
            let record = raw.trim_end();
            if record.is_empty() {
                continue;
            }
            let (number, numeral) = record
                .split_once('\t')
                .ok_or_else(|| parse_error(line, "missing TAB separator"))?;
            if numeral.contains('\t') {
                return Err(parse_error(line, "more than one TAB separator"));
            }
            entries.push((line, parse_number(number, line)?, numeral.to_owned()));
        }
        Self::build(language_id, entries, options)
    }

    /// Parses the JSON form; the language id is taken from the document.
    pub fn from_json_str(text: &str) -> Result<Self, DatasetError> {
        Self::from_json_str_with(text, LoadOptions::default())
    }

    pub fn from_json_str_with(text: &str, options: LoadOptions) -> Result<Self, DatasetError> {
        #[derive(Deserialize)]
        struct Document {
            language: String,
            entries: BTreeMap<String, String>,
        }
        let doc: Document =
            serde_json::from_str(text).map_err(|e| DatasetError::Json(e.to_string()))?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for (i, (key, numeral)) in doc.entries.into_iter().enumerate() {
            let number = parse_number(&key, i + 1)
                .map_err(|e| DatasetError::Json(format!("entry key {key:?}: {e}")))?;
            entries.push((i + 1, number, numeral));
        }
        Self::build(&doc.language, entries, options)
    }

    pub fn language_id(&self) -> &str {
        &self.language_id
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Looks up an exact codepoint sequence.
    pub fn value_of(&self, s: &[char]) -> Option<i64> {
        self.reverse.get(s).copied()
    }

    pub fn value_of_str(&self, s: &str) -> Option<i64> {
        let chars: Vec<char> = s.chars().collect();
        self.value_of(&chars)
    }

    pub fn numeral_of(&self, number: i64) -> Option<&str> {
        self.forward.get(&number).map(String::as_str)
    }

    /// All `(number, numeral)` pairs in ascending number order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, &str)> + '_ {
        self.forward.iter().map(|(&n, s)| (n, s.as_str()))
    }

    pub fn duplicates(&self) -> &[Duplicate] {
        &self.duplicates
    }

    pub fn duplicates_json(&self) -> String {
        serde_json::to_string_pretty(&self.duplicates).expect("duplicate report serializes")
    }

    /// TSV sorted by number; reloading it yields an equal dictionary.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (n, s) in &self.forward {
            out.push_str(&n.to_string());
            out.push('\t');
            out.push_str(s);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for NumeralDictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} numerals)", self.language_id, self.forward.len())
    }
}

fn parse_number(field: &str, line: usize) -> Result<i64, DatasetError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(
            line,
            format!("{field:?} is not a decimal number"),
        ));
    }
    field
        .parse::<i64>()
        .map_err(|_| parse_error(line, format!("{field} exceeds the 64-bit range")))
}

/// Reads a dictionary file. JSON is recognized by a leading `{`.
pub fn load_dictionary(path: &Path, language_id: &str) -> Result<NumeralDictionary, DatasetError> {
    load_dictionary_with(path, language_id, LoadOptions::default())
}

pub fn load_dictionary_with(
    path: &Path,
    language_id: &str,
    options: LoadOptions,
) -> Result<NumeralDictionary, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_owned(),
        source,
    })?;
    if text
        .trim_start_matches('\u{feff}')
        .trim_start()
        .starts_with('{')
    {
        let mut dict = NumeralDictionary::from_json_str_with(&text, options)?;
        dict.language_id = language_id.to_owned();
        Ok(dict)
    } else {
        NumeralDictionary::from_tsv_str_with(language_id, &text, options)
    }
}
