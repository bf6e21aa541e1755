//! Text format for flat systems and hierarchies (`.hfs` files).
//!
//! ```text
//! # comment
//! system pair {
//!     input a range 0 10 {
//!         term Weak tri(0, 0, 5);
//!         term Strong trap(0, 5, 10, 10);
//!     }
//!     intermediate b range 0 10 { ... }
//!     output y range 0 10 { ... }
//!     rules {
//!         IF a is Weak AND b is Weak THEN y is Weak;
//!     }
//!     # or: rulegen mean;
//! }
//!
//! hierarchy h {
//!     use pair as P1;
//!     connect P1.y -> P2.b;
//!     inputs a, c;
//!     output z;
//! }
//! ```
//!
//! Keywords are case-insensitive, identifiers are not. `intermediate`
//! declares an input that is fed by another subsystem.

mod ast;
mod compile;
mod lexer;
mod parser;
mod printer;

pub use ast::*;
pub use compile::{compile, Model, Target};
pub use lexer::Keyword;
pub use parser::parse_syntax;
pub use printer::serialize;

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub token: Option<String>,
}

impl ParseDiagnostic {
    pub fn error(message: impl Into<String>, span: Span, token: Option<String>) -> Self {
        ParseDiagnostic { severity: Severity::Error, message: message.into(), line: span.line, column: span.column, token }
    }

    pub fn warning(message: impl Into<String>, span: Span, token: Option<String>) -> Self {
        ParseDiagnostic { severity: Severity::Warning, ..Self::error(message, span, token) }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DslErrorKind {
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl DslError {
    pub fn syntax(diagnostic: ParseDiagnostic) -> Self {
        DslError { kind: DslErrorKind::Syntax, diagnostics: vec![diagnostic] }
    }

    pub fn semantic(diagnostics: Vec<ParseDiagnostic>) -> Self {
        DslError { kind: DslErrorKind::Semantic, diagnostics }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::Semantic => "semantic error",
        };
        write!(f, "{kind}")?;
        for d in &self.diagnostics {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

/// Parses and semantically checks `src`.
pub fn parse(src: &str) -> Result<SystemDefinition, DslError> {
    let def = parse_syntax(src)?;
    compile(&def)?;
    Ok(def)
}

/// Parses, checks, and builds every declared system.
pub fn load(src: &str) -> Result<Model, DslError> {
    compile(&parse_syntax(src)?)
}
