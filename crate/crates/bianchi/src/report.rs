//! The `CHECK`/`NOTE` report format shared by every verifier.
//!
//! A report is an ordered list of lines. `CHECK` lines carry a stable id,
//! a pass/fail verdict, and a short detail; `NOTE` lines carry commentary
//! such as typo flags, where the recomputed value wins but the discrepancy
//! is recorded. Rendering is deterministic in both text and JSON.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Line {
    Check { id: String, pass: bool, detail: String },
    Note { id: String, text: String },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn check(&mut self, id: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(Line::Check { id: id.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, id: impl Into<String>, text: impl Into<String>) {
        self.lines.push(Line::Note { id: id.into(), text: text.into() });
    }

    pub fn merge(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| match l {
            Line::Check { pass, .. } => *pass,
            Line::Note { .. } => true,
        })
    }

    pub fn checks(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l, Line::Check { .. }))
            .count()
    }

    pub fn failures(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l, Line::Check { pass: false, .. }))
            .count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            match l {
                Line::Check { id, pass, detail } => {
                    let verdict = if *pass { "PASS" } else { "FAIL" };
                    out.push_str(&format!("CHECK {id} {verdict} {detail}\n"));
                }
                Line::Note { id, text } => {
                    out.push_str(&format!("NOTE {id} {text}\n"));
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            lines: &'a [Line],
            checks: usize,
            failures: usize,
            passed: bool,
        }
        let doc = Doc {
            lines: &self.lines,
            checks: self.checks(),
            failures: self.failures(),
            passed: self.all_passed(),
        };
        serde_json::to_string_pretty(&doc).expect("report serialization")
    }
}
