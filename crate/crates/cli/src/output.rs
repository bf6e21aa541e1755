use crate::args::Format;
use hfskit_core::dsl::ParseDiagnostic;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "hfskit.report/v1";

#[derive(Debug, Serialize)]
pub struct CliReport<'a> {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'a [String],
    pub results: Value,
    pub diagnostics: &'a [ParseDiagnostic],
}

impl<'a> CliReport<'a> {
    pub fn new(command: &'a [String], results: Value, diagnostics: &'a [ParseDiagnostic]) -> Self {
        CliReport { schema: REPORT_SCHEMA, tool_version: env!("CARGO_PKG_VERSION"), command, results, diagnostics }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// ANSI styling, enabled with HFSKIT_COLOR=1.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn from_env() -> Self {
        Style { color: std::env::var("HFSKIT_COLOR").map(|v| v == "1").unwrap_or(false) }
    }

    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    pub fn bold(&self, s: &str) -> String {
        self.paint("1", s)
    }

    pub fn dim(&self, s: &str) -> String {
        self.paint("2", s)
    }

    pub fn good(&self, s: &str) -> String {
        self.paint("32", s)
    }

    pub fn bad(&self, s: &str) -> String {
        self.paint("31", s)
    }

    pub fn warn(&self, s: &str) -> String {
        self.paint("33", s)
    }
}

/// What a command produced: a JSON payload and its text rendering.
pub struct Output {
    pub results: Value,
    pub text: String,
    pub warnings: Vec<ParseDiagnostic>,
    pub exit: crate::error::Exit,
}

impl Output {
    pub fn new(results: Value, text: String) -> Self {
        Output { results, text, warnings: Vec::new(), exit: crate::error::Exit::Ok }
    }

    pub fn render(&self, format: Format, command: &[String]) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => CliReport::new(command, self.results.clone(), &self.warnings).to_json() + "\n",
        }
    }
}

pub fn fixed(x: f64) -> String {
    format!("{x:.4}")
}
