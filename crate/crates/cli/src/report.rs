use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use monotone_core::seqspace::format_rational;
use monotone_core::{Rational, Seq};
use serde::Serialize;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Failure messages kept per suite; the full count is in `counts.failures`.
const MAX_FAILURE_MESSAGES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub label: String,
    /// Exact rational as `p/q`.
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRecord {
    pub name: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub evidence: Vec<Evidence>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl SuiteRecord {
    pub fn new(name: &str) -> Self {
        SuiteRecord {
            name: name.to_string(),
            status: Status::Pass,
            counts: BTreeMap::new(),
            evidence: Vec::new(),
            failures: Vec::new(),
            duration_ms: None,
        }
    }

    pub fn count(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_default() += 1;
    }

    pub fn evidence(&mut self, label: impl Into<String>, value: &Rational) {
        self.evidence.push(Evidence { label: label.into(), value: format_rational(value) });
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.status = Status::Fail;
        self.count("failures");
        if self.failures.len() < MAX_FAILURE_MESSAGES {
            self.failures.push(message.into());
        }
    }

    /// Records a pass/fail check under `key`.
    pub fn check(&mut self, key: &str, ok: bool, message: impl FnOnce() -> String) {
        self.count(key);
        if !ok {
            self.fail(message());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub overall: Status,
    pub seed: u64,
    pub samples: usize,
    pub support_max: usize,
    pub coeff_bound: u64,
    pub taus: Vec<String>,
    pub ytilde: Seq,
    pub suites: Vec<SuiteRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl SuiteReport {
    /// Drops the timestamp and per-suite durations, leaving only content
    /// that is a function of the config.
    pub fn strip_timing(&mut self) {
        self.timestamp = None;
        for s in &mut self.suites {
            s.duration_ms = None;
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

pub fn render(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => render_markdown(report),
    }
}

fn render_markdown(r: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Certificate report\n");
    let _ = writeln!(out, "- overall: **{}**", r.overall.as_str());
    let _ = writeln!(out, "- seed: {}", r.seed);
    let _ = writeln!(out, "- samples: {}", r.samples);
    let _ = writeln!(out, "- support_max: {}, coeff_bound: {}", r.support_max, r.coeff_bound);
    let _ = writeln!(out, "- taus: {}", r.taus.join(", "));
    let _ = writeln!(out, "- ytilde: {}", serde_json::to_string(&r.ytilde).expect("serializes"));
    if let Some(ts) = r.timestamp {
        let _ = writeln!(out, "- timestamp: {ts}");
    }
    out.push('\n');
    let _ = writeln!(out, "| suite | status | checks | duration (ms) |");
    let _ = writeln!(out, "|---|---|---|---|");
    for s in &r.suites {
        let checks = s
            .counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        let dur = s.duration_ms.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "| {} | {} | {} | {} |", s.name, s.status.as_str(), checks, dur);
    }
    for s in &r.suites {
        let _ = writeln!(out, "\n## {}\n", s.name);
        if !s.evidence.is_empty() {
            let _ = writeln!(out, "| evidence | value |");
            let _ = writeln!(out, "|---|---|");
            for e in &s.evidence {
                let _ = writeln!(out, "| {} | `{}` |", e.label, e.value);
            }
        }
        for f in &s.failures {
            let _ = writeln!(out, "- FAIL: {f}");
        }
    }
    out
}

/// Writes the report to `out` (standard output when `None`) and returns the
/// process exit code: 0 on overall pass, 1 on any suite failure, 3 when the
/// report cannot be written.
pub fn emit_report(report: &SuiteReport, format: Format, out: Option<&Path>) -> i32 {
    let text = render(report, format);
    let written = match out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| format!("cannot write report to {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("cannot write report to standard output: {e}"))
        }
    };
    match written {
        Ok(()) => report.exit_code(),
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    }
}
