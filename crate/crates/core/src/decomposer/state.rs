use std::fmt;

use serde::{Deserialize, Serialize};

use super::DecomposeError;

/// Half-open codepoint interval `[start, end)` within a numeral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start < end, "empty span [{start}:{end})");
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn is_disjoint(&self, other: &Span) -> bool {
        self.end <= other.start || other.end <= self.start
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{}:{}]", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Unpacked {
    pub span: Span,
    pub value: i64,
}

/// Working state of one decomposition run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnpackState {
    word: Vec<char>,
    word_value: i64,
    unpacked: Vec<Unpacked>,
    pub(crate) checkpoint: usize,
}

impl UnpackState {
    pub fn new(word: &str, word_value: i64) -> Self {
        UnpackState {
            word: word.chars().collect(),
            word_value,
            unpacked: Vec::new(),
            checkpoint: 0,
        }
    }

    /// Builds a state from already unpacked spans, mostly for exercising
    /// [`mu_postpass`] directly. Spans must be disjoint and in bounds.
    pub fn with_unpacked(
        word: &str,
        word_value: i64,
        unpacked: impl IntoIterator<Item = Unpacked>,
    ) -> Result<Self, DecomposeError> {
        let mut state = Self::new(word, word_value);
        for u in unpacked {
            if u.span.is_empty() || u.span.end > state.word.len() {
                return Err(DecomposeError::SpanOutOfBounds(u.span));
            }
            if let Some(o) = state.unpacked.iter().find(|o| !o.span.is_disjoint(&u.span)) {
                return Err(DecomposeError::OverlappingSpan {
                    existing: o.span,
                    incoming: u.span,
                });
            }
            state.unpacked.push(u);
        }
        state.unpacked.sort_by_key(|u| u.span);
        Ok(state)
    }

    pub fn word(&self) -> &[char] {
        &self.word
    }

    pub fn word_value(&self) -> i64 {
        self.word_value
    }

    pub fn unpacked(&self) -> &[Unpacked] {
        &self.unpacked
    }

    pub fn checkpoint(&self) -> usize {
        self.checkpoint
    }

    pub fn values(&self) -> Vec<i64> {
        self.unpacked.iter().map(|u| u.value).collect()
    }

    pub fn substring(&self, span: Span) -> String {
        self.word[span.start..span.end].iter().collect()
    }

    /// Marks `span` as unpacked, evicting every unpacked span it contains.
    ///
    /// A partially overlapping span is an engine invariant violation.
    pub fn unpack(&mut self, span: Span, value: i64) -> Result<(), DecomposeError> {
        if span.is_empty() || span.end > self.word.len() {
            return Err(DecomposeError::SpanOutOfBounds(span));
        }
        if let Some(bad) = self
            .unpacked
            .iter()
            .find(|u| !span.contains(&u.span) && !span.is_disjoint(&u.span))
        {
            return Err(DecomposeError::OverlappingSpan {
                existing: bad.span,
                incoming: span,
            });
        }
        self.unpacked.retain(|u| !span.contains(&u.span));
        let at = self.unpacked.partition_point(|u| u.span < span);
        self.unpacked.insert(at, Unpacked { span, value });
        Ok(())
    }

    fn remove(&mut self, span: Span) {
        self.unpacked.retain(|u| u.span != span);
    }
}

/// Guess at the roles in `x = fa·mu + su`: the value-largest unpacked span
/// is proposed as the multiplier, everything else as factor/summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleHypothesis {
    pub proposed_mu: Unpacked,
    /// In span order.
    pub others: Vec<Unpacked>,
}

impl RoleHypothesis {
    /// `None` with no unpacked spans. Ties go to the leftmost span.
    pub fn propose(unpacked: &[Unpacked]) -> Option<Self> {
        let (idx, _) = unpacked
            .iter()
            .enumerate()
            .fold(None::<(usize, i64)>, |best, (i, u)| match best {
                Some((_, v)) if v >= u.value => best,
                _ => Some((i, u.value)),
            })?;
        let mut others = unpacked.to_vec();
        let proposed_mu = others.remove(idx);
        Some(RoleHypothesis {
            proposed_mu,
            others,
        })
    }

    /// True when the other values explain `x` with the proposed multiplier,
    /// i.e. the proposed multiplier should not stay unpacked.
    pub fn explains(&self, x: i64) -> bool {
        let mu = self.proposed_mu.value as i128;
        let x = x as i128;
        let vals: Vec<i128> = self.others.iter().map(|u| u.value as i128).collect();
        match vals.as_slice() {
            [] => false,
            [u] => mu + u == x || mu * u == x,
            [u1, u2] => u1 * mu + u2 == x || u2 * mu + u1 == x,
            _ => {
                let total: i128 = vals.iter().sum();
                vals.iter().any(|&fa| fa * mu + (total - fa) == x)
            }
        }
    }
}

/// Un-unpacks the proposed multiplier when the remaining values account for
/// the numeral's value as `fa·mu + su`.
pub fn mu_postpass(state: &UnpackState) -> UnpackState {
    let mut next = state.clone();
    if let Some(h) = RoleHypothesis::propose(&state.unpacked) {
        if h.explains(state.word_value) {
            next.remove(h.proposed_mu.span);
        }
    }
    next
}
