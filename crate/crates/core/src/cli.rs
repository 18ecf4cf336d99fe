//! Command-line front end.
//!
//! Exit codes: 0 success, 1 data or I/O error (including bad usage),
//! 2 unknown numeral.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dataset::{load_dictionary_with, LoadOptions, NumeralDictionary};
use crate::decomposer::{render_table, DecomposeError, Decomposer, Engine};
use crate::eval::{
    classify_failures, compare_corpus, comparison_csv, evaluate_corpus, evaluate_language,
    report_csv, CorpusOptions, LanguageOutcome,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_UNKNOWN_NUMERAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "numdecomp",
    version,
    about = "Decompose numeral words into root functions"
)]
struct Cli {
    /// Directory holding <language>.tsv files.
    #[arg(long, global = true, default_value = "data")]
    data_dir: PathBuf,
    /// Apply Unicode NFC to numerals when loading.
    #[arg(long, global = true)]
    normalize_nfc: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a dataset and report its size and duplicate numerals.
    Validate(Source),
    /// Decompose one numeral.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "v6", value_parser = parse_engine)]
        engine: Engine,
        /// Print the step table.
        #[arg(long)]
        trace: bool,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Build the lexicon of one language with fitted equations.
    Lexicon {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "v6", value_parser = parse_engine)]
        engine: Engine,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One CSV row per language in the data directory.
    Evaluate {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value = "v6", value_parser = parse_engine)]
        engine: Engine,
        /// Also write <language>.json lexicons into this directory.
        #[arg(long)]
        lexicon_dir: Option<PathBuf>,
    },
    /// Lexicon sizes under v2 and v6 per language.
    Compare {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Language id, read from <data-dir>/<lang>.tsv.
    #[arg(long, required_unless_present = "file")]
    lang: Option<String>,
    /// Explicit dataset path (TSV or JSON).
    #[arg(long, conflicts_with = "lang")]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Restrict to these languages (repeatable).
    #[arg(long)]
    lang: Vec<String>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Evaluate languages one after another.
    #[arg(long)]
    serial: bool,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    match s.parse::<Engine>()? {
        Engine::V1 => Err("v1 is a test reference only; use v2 or v6".into()),
        e => Ok(e),
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        code
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io {
        out: stdout,
        err: stderr,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.err, "{rendered}");
                    EXIT_DATA
                }
            };
        }
    };
    let load = LoadOptions {
        normalize_nfc: cli.normalize_nfc,
    };
    match cli.command {
        Command::Validate(source) => match source.load(&cli.data_dir, load) {
            Err(code_msg) => io.fail(EXIT_DATA, code_msg),
            Ok(dict) => {
                let _ = writeln!(io.out, "{dict}");
                for d in dict.duplicates() {
                    let numbers: Vec<String> = d.numbers.iter().map(i64::to_string).collect();
                    let _ = writeln!(io.out, "duplicate {:?}: {}", d.numeral, numbers.join(", "));
                }
                EXIT_OK
            }
        },
        Command::Decompose {
            source,
            word,
            engine,
            trace,
            json,
        } => {
            let dict = match source.load(&cli.data_dir, load) {
                Ok(d) => d,
                Err(msg) => return io.fail(EXIT_DATA, msg),
            };
            let word = if load.normalize_nfc {
                use unicode_normalization::UnicodeNormalization;
                word.nfc().collect()
            } else {
                word
            };
            match Decomposer::new(engine)
                .with_trace(trace)
                .decompose(&dict, &word)
            {
                Err(e @ DecomposeError::UnknownNumeral(_)) => io.fail(EXIT_UNKNOWN_NUMERAL, e),
                Err(e) => io.fail(EXIT_DATA, e),
                Ok(d) => {
                    if json {
                        let _ = writeln!(io.out, "{}", d.to_json());
                    } else {
                        let _ = writeln!(io.out, "{d}");
                        if let Some(rows) = &d.trace {
                            let _ = write!(io.out, "{}", render_table(rows, d.value));
                        }
                    }
                    EXIT_OK
                }
            }
        }
        Command::Lexicon {
            source,
            engine,
            output,
        } => {
            let dict = match source.load(&cli.data_dir, load) {
                Ok(d) => d,
                Err(msg) => return io.fail(EXIT_DATA, msg),
            };
            let report = match evaluate_language(&dict, engine) {
                Ok(r) => r,
                Err(e) => return io.fail(EXIT_DATA, e),
            };
            let json = report.lexicon_json();
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, json) {
                        return io.fail(EXIT_DATA, format!("{}: {e}", path.display()));
                    }
                    let _ = writeln!(io.out, "{} entries", report.lexicon_size);
                }
                None => {
                    let _ = write!(io.out, "{json}");
                    let _ = writeln!(io.err, "{} entries", report.lexicon_size);
                }
            }
            for f in &report.fit_failures {
                let _ = writeln!(
                    io.err,
                    "warning: {} has no exact fit ({:?})",
                    f.root, f.class
                );
            }
            EXIT_OK
        }
        Command::Evaluate {
            corpus,
            engine,
            lexicon_dir,
        } => {
            let options = corpus.options(load);
            let rows = match evaluate_corpus(&cli.data_dir, engine, &options) {
                Ok(r) => r,
                Err(e) => return io.fail(EXIT_DATA, format!("{}: {e}", cli.data_dir.display())),
            };
            warn_unfinished(&mut io, &rows);
            if let Some(dir) = lexicon_dir {
                if let Err(e) = fs::create_dir_all(&dir) {
                    return io.fail(EXIT_DATA, format!("{}: {e}", dir.display()));
                }
                for row in &rows {
                    if let LanguageOutcome::Done(r) = row {
                        let path = dir.join(format!("{}.json", r.language_id));
                        if let Err(e) = fs::write(&path, r.lexicon_json()) {
                            return io.fail(EXIT_DATA, format!("{}: {e}", path.display()));
                        }
                    }
                }
            }
            let reports = rows.iter().filter_map(|r| match r {
                LanguageOutcome::Done(r) => Some(r),
                _ => None,
            });
            for (bucket, langs) in classify_failures(reports) {
                for (lang, roots) in langs {
                    let _ = writeln!(io.err, "review ({bucket}) {lang}: {}", roots.join(" | "));
                }
            }
            emit(
                &mut io,
                corpus.output.as_deref(),
                &report_csv(engine, &rows),
            )
        }
        Command::Compare { corpus } => {
            let options = corpus.options(load);
            let rows = match compare_corpus(&cli.data_dir, &options) {
                Ok(r) => r,
                Err(e) => return io.fail(EXIT_DATA, format!("{}: {e}", cli.data_dir.display())),
            };
            warn_unfinished(&mut io, &rows);
            emit(&mut io, corpus.output.as_deref(), &comparison_csv(&rows))
        }
    }
}

impl Source {
    fn load(&self, data_dir: &Path, options: LoadOptions) -> Result<NumeralDictionary, String> {
        let (path, id) = match (&self.file, &self.lang) {
            (Some(path), lang) => {
                let stem = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (path.clone(), lang.clone().unwrap_or(stem))
            }
            (None, Some(lang)) => (data_dir.join(format!("{lang}.tsv")), lang.clone()),
            (None, None) => return Err("either --lang or --file is required".into()),
        };
        let dict = load_dictionary_with(&path, &id, options)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        if dict.is_empty() {
            return Err(format!("{}: dataset is empty", path.display()));
        }
        Ok(dict)
    }
}

impl CorpusArgs {
    fn options(&self, load: LoadOptions) -> CorpusOptions {
        CorpusOptions {
            load,
            languages: self.lang.clone(),
            parallel: !self.serial,
        }
    }
}

fn warn_unfinished<T>(io: &mut Io<'_>, rows: &[LanguageOutcome<T>]) {
    for row in rows {
        match row {
            LanguageOutcome::Done(_) => {}
            LanguageOutcome::Skipped {
                language_id,
                reason,
            } => {
                let _ = writeln!(io.err, "warning: skipped {language_id}: {reason}");
            }
            LanguageOutcome::Failed {
                language_id,
                reason,
            } => {
                let _ = writeln!(io.err, "warning: {language_id} failed: {reason}");
            }
        }
    }
}

fn emit(io: &mut Io<'_>, output: Option<&Path>, text: &str) -> i32 {
    match output {
        Some(path) => match fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => io.fail(EXIT_DATA, format!("{}: {e}", path.display())),
        },
        None => {
            let _ = write!(io.out, "{text}");
            EXIT_OK
        }
    }
}
