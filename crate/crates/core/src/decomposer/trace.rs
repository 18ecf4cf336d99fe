use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::state::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `2·s < x`
    Necessary,
    /// `s² ≤ x`
    Sufficient,
    /// does not divide the enclosing sub-numeral, and `s < x`
    Leaky,
    /// `fa·mu + su = x` check on the value-largest unpacked span
    MuPostpass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unpacked,
    Rejected,
    /// Held as the pending candidate of the rescue loop.
    Provisional,
    /// Pending candidate unpacked after the rescue loop.
    Confirmed,
    UnUnpacked,
    Kept,
}

/// One tested sub-numeral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub span: Span,
    pub substring: String,
    pub value: i64,
    pub criterion: Criterion,
    pub verdict: Verdict,
    /// Value of the sub-numeral that failed `2·s < x`, for rescue-loop rows.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enclosing: Option<i64>,
    pub checkpoint_before: usize,
    pub checkpoint_after: usize,
    /// Values of the unpacked spans after this step, in span order.
    pub unpacked: Vec<i64>,
}

impl TraceRow {
    fn criterion_text(&self, x: i64) -> String {
        match (self.criterion, self.verdict) {
            (Criterion::Necessary, Verdict::Unpacked) => format!("< {x}/2"),
            (Criterion::Necessary, _) => format!("≮ {x}/2"),
            (Criterion::Sufficient, _) => format!("≤ √{x}"),
            (Criterion::Leaky, Verdict::Confirmed) => "pending candidate".to_owned(),
            (Criterion::Leaky, verdict) => {
                let enclosing = self.enclosing.unwrap_or(x);
                if verdict == Verdict::Provisional {
                    format!("≰ √{x} and ∤ {enclosing}")
                } else if self.value != 0 && enclosing % self.value == 0 {
                    format!("≰ √{x} and | {enclosing}")
                } else {
                    format!("≰ √{x} and ≮ {x}")
                }
            }
            (Criterion::MuPostpass, Verdict::UnUnpacked) => format!("fa·{}+su = {x}", self.value),
            (Criterion::MuPostpass, _) => format!("fa·{}+su ≠ {x}", self.value),
        }
    }
}

/// Renders rows as a fixed-width table, one step per line.
pub fn render_table(rows: &[TraceRow], word_value: i64) -> String {
    let header = [
        "Cutout",
        "Sub-numeral",
        "Criterion",
        "Checkpoint",
        "Unpacked",
    ];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            let checkpoint = if r.checkpoint_before == r.checkpoint_after {
                r.checkpoint_before.to_string()
            } else {
                format!("{} → {}", r.checkpoint_before, r.checkpoint_after)
            };
            let unpacked = r
                .unpacked
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            [
                r.span.to_string(),
                r.substring.clone(),
                r.criterion_text(word_value),
                checkpoint,
                format!("{{{unpacked}}}"),
            ]
        })
        .collect();

    let mut widths = header.map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w - cell.chars().count();
            let _ = write!(s, "{cell}{}", " ".repeat(pad));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &body {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    out
}

/// One JSON object per row, newline-terminated.
pub fn to_json_lines(rows: &[TraceRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("trace row serializes"));
        out.push('\n');
    }
    out
}
