use change_actions::{CheckMode, CheckReport};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::doc::NamedReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

const LABEL_WIDTH: usize = 30;

/// Text lines and a JSON object built side by side.
#[derive(Debug, Clone)]
pub struct Report {
    pub passed: bool,
    lines: Vec<String>,
    fields: Map<String, Value>,
    checks: Vec<NamedReport>,
}

pub fn verdict(r: &CheckReport) -> String {
    let mode = match r.mode {
        CheckMode::Exhaustive => format!("exhaustive, {} cases", r.checked),
        CheckMode::Sampled { seed, n } => format!("sampled, seed {seed}, {n} cases"),
    };
    match &r.witness {
        _ if r.passed => format!("PASS ({mode})"),
        Some(w) => format!("FAIL at {w:?} ({mode})"),
        None => format!("FAIL ({mode})"),
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), Value::from(command));
        Self { passed: true, lines: Vec::new(), fields, checks: Vec::new() }
    }

    pub fn line(&mut self, label: &str, text: impl AsRef<str>) {
        self.lines.push(format!("{label:<LABEL_WIDTH$} {}", text.as_ref()).trim_end().to_string());
    }

    pub fn raw(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) {
        self.fields.insert(key.into(), serde_json::to_value(value).expect("report fields serialise"));
    }

    pub fn check(&mut self, name: impl Into<String>, r: &CheckReport) {
        let name = name.into();
        self.line(&name, verdict(r));
        self.passed &= r.passed;
        self.checks.push(NamedReport::new(name, r.clone()));
    }

    /// Records an outcome that has no enumerated cases.
    pub fn verdict(&mut self, name: &str, passed: bool) {
        self.line(name, if passed { "PASS" } else { "FAIL" });
        self.passed &= passed;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = self.lines.join("\n");
                if !out.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("result: {}\n", if self.passed { "PASS" } else { "FAIL" }));
                out
            }
            Format::Json => {
                let mut obj = self.fields.clone();
                obj.insert("passed".into(), Value::from(self.passed));
                if !self.checks.is_empty() {
                    obj.insert("checks".into(), serde_json::to_value(&self.checks).expect("reports serialise"));
                }
                format!("{}\n", Value::Object(obj))
            }
        }
    }
}
