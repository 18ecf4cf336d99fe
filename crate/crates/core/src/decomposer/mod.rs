//! Decomposition engines.
//!
//! All engines scan the numeral left to right by end position. At each end
//! position only the leftmost dictionary substring starting at or after the
//! checkpoint is examined:
//!
//! * [`Engine::V2`] unpacks it when `2·s < x`, otherwise moves the
//!   checkpoint to `end` so that combinations of multiplier and summand are
//!   never read.
//! * [`Engine::V6`] additionally rescues suffixes of a rejected sub-numeral
//!   (`s² ≤ x`, or the leaky divisibility gate), and finally un-unpacks a
//!   value-largest span that behaves like the multiplier in `fa·mu + su`.
//! * [`Engine::V1`] has no checkpoint at all. It exists to reproduce the
//!   failure that motivated the checkpoint and is not offered by the CLI.

mod criteria;
mod state;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use criteria::{criterion_leaky, criterion_necessary, criterion_sufficient};
pub use state::{mu_postpass, RoleHypothesis, Span, UnpackState, Unpacked};
pub use trace::{render_table, to_json_lines, Criterion, TraceRow, Verdict};

use crate::dataset::NumeralDictionary;
use crate::lexicon::RootKey;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("unknown numeral {0:?}")]
    UnknownNumeral(String),
    #[error("span {0} out of bounds")]
    SpanOutOfBounds(Span),
    #[error("internal invariant violated: {incoming} partially overlaps unpacked {existing}")]
    OverlappingSpan { existing: Span, incoming: Span },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    V1,
    V2,
    V6,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::V1 => "v1",
            Engine::V2 => "v2",
            Engine::V6 => "v6",
        }
    }

    /// Release name of the engine.
    pub fn release(self) -> &'static str {
        match self {
            Engine::V1 => "prototype without checkpoint",
            Engine::V2 => "Numeral Decomposer 1.0",
            Engine::V6 => "Numeral Decomposer 1.1",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Engine::V1),
            "v2" | "1.0" => Ok(Engine::V2),
            "v6" | "1.1" => Ok(Engine::V6),
            other => Err(format!("unknown engine {other:?} (expected v2 or v6)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arg {
    pub span: Span,
    pub value: i64,
    pub text: String,
}

/// Final result of decomposing one numeral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub word: String,
    pub value: i64,
    pub engine: Engine,
    #[serde(serialize_with = "serialize_root")]
    pub root: RootKey,
    pub args: Vec<Arg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
}

fn serialize_root<S: serde::Serializer>(root: &RootKey, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&root.render())
}

impl Decomposition {
    pub fn arg_values(&self) -> Vec<i64> {
        self.args.iter().map(|a| a.value).collect()
    }

    pub fn spans(&self) -> Vec<Span> {
        self.args.iter().map(|a| a.span).collect()
    }

    /// Interleaves root segments and argument texts; equals `word`.
    pub fn reconstruct(&self) -> String {
        let mut out = String::new();
        for (i, segment) in self.root.segments().iter().enumerate() {
            out.push_str(segment);
            if let Some(arg) = self.args.get(i) {
                out.push_str(&arg.text);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }
}

impl fmt::Display for Decomposition {
    /// `root(u1, ..., uk)` with argument values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.args.iter().map(|a| a.value.to_string()).collect();
        write!(f, "{}({})", self.root.render(), values.join(", "))
    }
}

/// Engine selection plus tracing switch.
#[derive(Debug, Clone, Copy)]
pub struct Decomposer {
    engine: Engine,
    trace: bool,
}

impl Decomposer {
    pub fn new(engine: Engine) -> Self {
        Decomposer {
            engine,
            trace: false,
        }
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// Decomposes a numeral whose value is looked up in `dict`.
    pub fn decompose(
        &self,
        dict: &NumeralDictionary,
        word: &str,
    ) -> Result<Decomposition, DecomposeError> {
        let value = dict
            .value_of_str(word)
            .ok_or_else(|| DecomposeError::UnknownNumeral(word.to_owned()))?;
        self.decompose_entry(dict, word, value)
    }

    /// Decomposes `word` as the numeral of `value`. Used when iterating a
    /// dictionary, where a homograph can carry a value other than the one
    /// reverse lookup returns.
    pub fn decompose_entry(
        &self,
        dict: &NumeralDictionary,
        word: &str,
        value: i64,
    ) -> Result<Decomposition, DecomposeError> {
        let mut run = Run {
            dict,
            engine: self.engine,
            state: UnpackState::new(word, value),
            trace: self.trace.then(Vec::new),
        };
        run.scan()?;
        if self.engine == Engine::V6 {
            run.postpass();
        }
        Ok(run.finish())
    }
}

/// Prototype engine without checkpoint; reference only.
pub fn decompose_v1(dict: &NumeralDictionary, word: &str) -> Result<Decomposition, DecomposeError> {
    Decomposer::new(Engine::V1)
        .with_trace(true)
        .decompose(dict, word)
}

/// Numeral Decomposer 1.0.
pub fn decompose_v2(dict: &NumeralDictionary, word: &str) -> Result<Decomposition, DecomposeError> {
    Decomposer::new(Engine::V2)
        .with_trace(true)
        .decompose(dict, word)
}

/// Numeral Decomposer 1.1.
pub fn decompose_v6(dict: &NumeralDictionary, word: &str) -> Result<Decomposition, DecomposeError> {
    Decomposer::new(Engine::V6)
        .with_trace(true)
        .decompose(dict, word)
}

struct Run<'a> {
    dict: &'a NumeralDictionary,
    engine: Engine,
    state: UnpackState,
    trace: Option<Vec<TraceRow>>,
}

impl Run<'_> {
    fn lookup(&self, start: usize, end: usize) -> Option<i64> {
        self.dict.value_of(&self.state.word()[start..end])
    }

    fn record(
        &mut self,
        span: Span,
        value: i64,
        criterion: Criterion,
        verdict: Verdict,
        enclosing: Option<i64>,
        checkpoint_before: usize,
    ) {
        if let Some(rows) = self.trace.as_mut() {
            rows.push(TraceRow {
                span,
                substring: self.state.substring(span),
                value,
                criterion,
                verdict,
                enclosing,
                checkpoint_before,
                checkpoint_after: self.state.checkpoint,
                unpacked: self.state.values(),
            });
        }
    }

    fn scan(&mut self) -> Result<(), DecomposeError> {
        let len = self.state.word().len();
        let x = self.state.word_value();
        for end in 1..=len {
            let first = if self.engine == Engine::V1 {
                0
            } else {
                self.state.checkpoint
            };
            for start in first..end {
                let Some(value) = self.lookup(start, end) else {
                    continue;
                };
                let span = Span::new(start, end);
                let cp_before = self.state.checkpoint;
                if criterion_necessary(value, x) {
                    self.state.unpack(span, value)?;
                    self.record(
                        span,
                        value,
                        Criterion::Necessary,
                        Verdict::Unpacked,
                        None,
                        cp_before,
                    );
                    break;
                }
                if self.engine == Engine::V1 {
                    self.record(
                        span,
                        value,
                        Criterion::Necessary,
                        Verdict::Rejected,
                        None,
                        cp_before,
                    );
                    continue;
                }
                self.state.checkpoint = end;
                self.record(
                    span,
                    value,
                    Criterion::Necessary,
                    Verdict::Rejected,
                    None,
                    cp_before,
                );
                if self.engine == Engine::V6 {
                    self.rescue(start, end, value)?;
                }
                break;
            }
        }
        Ok(())
    }

    /// Looks for a suffix of the rejected `[start, end)` that is still a
    /// factor or summand.
    fn rescue(&mut self, start: usize, end: usize, enclosing: i64) -> Result<(), DecomposeError> {
        let x = self.state.word_value();
        let mut pending: Option<(Span, i64)> = None;
        for newstart in start + 1..end {
            let Some(value) = self.lookup(newstart, end) else {
                continue;
            };
            let span = Span::new(newstart, end);
            let cp_before = self.state.checkpoint;
            if criterion_sufficient(value, x) {
                self.state.unpack(span, value)?;
                self.state.checkpoint = newstart;
                self.record(
                    span,
                    value,
                    Criterion::Sufficient,
                    Verdict::Unpacked,
                    Some(enclosing),
                    cp_before,
                );
                return Ok(());
            } else if criterion_leaky(value, enclosing, x) {
                pending = Some((span, value));
                self.record(
                    span,
                    value,
                    Criterion::Leaky,
                    Verdict::Provisional,
                    Some(enclosing),
                    cp_before,
                );
            } else {
                pending = None;
                self.record(
                    span,
                    value,
                    Criterion::Leaky,
                    Verdict::Rejected,
                    Some(enclosing),
                    cp_before,
                );
            }
        }
        if let Some((span, value)) = pending {
            let cp_before = self.state.checkpoint;
            self.state.unpack(span, value)?;
            self.state.checkpoint = span.start;
            self.record(
                span,
                value,
                Criterion::Leaky,
                Verdict::Confirmed,
                Some(enclosing),
                cp_before,
            );
        }
        Ok(())
    }

    fn postpass(&mut self) {
        let Some(hypothesis) = RoleHypothesis::propose(self.state.unpacked()) else {
            return;
        };
        if hypothesis.others.is_empty() {
            return;
        }
        let next = mu_postpass(&self.state);
        let removed = next.unpacked().len() < self.state.unpacked().len();
        self.state = next;
        let mu = hypothesis.proposed_mu;
        let cp = self.state.checkpoint;
        let verdict = if removed {
            Verdict::UnUnpacked
        } else {
            Verdict::Kept
        };
        self.record(mu.span, mu.value, Criterion::MuPostpass, verdict, None, cp);
    }

    fn finish(self) -> Decomposition {
        let word: String = self.state.word().iter().collect();
        let spans: Vec<Span> = self.state.unpacked().iter().map(|u| u.span).collect();
        let root = RootKey::from_spans(self.state.word(), &spans);
        let args = self
            .state
            .unpacked()
            .iter()
            .map(|u| Arg {
                span: u.span,
                value: u.value,
                text: self.state.substring(u.span),
            })
            .collect();
        Decomposition {
            word,
            value: self.state.word_value(),
            engine: self.engine,
            root,
            args,
            trace: self.trace,
        }
    }
}
