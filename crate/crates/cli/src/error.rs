use hfskit_core::dsl::{DslError, ParseDiagnostic};
use hfskit_core::{FuzzyError, HierarchyError};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Invalid = 1,
    MissingInput = 2,
    Evaluation = 3,
    CheckFailed = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { exit: Exit::Invalid, message: message.into(), diagnostics: Vec::new() }
    }

    pub fn dsl(file: &str, err: DslError) -> Self {
        let kind = match err.kind {
            hfskit_core::dsl::DslErrorKind::Syntax => "syntax error",
            hfskit_core::dsl::DslErrorKind::Semantic => "invalid definition",
        };
        CliError { exit: Exit::Invalid, message: format!("{file}: {kind}"), diagnostics: err.diagnostics }
    }
}

impl From<FuzzyError> for CliError {
    fn from(e: FuzzyError) -> Self {
        let exit = match e {
            FuzzyError::MissingInput { .. } => Exit::MissingInput,
            FuzzyError::EmptyOutput { .. } => Exit::Evaluation,
            _ => Exit::Invalid,
        };
        CliError { exit, message: e.to_string(), diagnostics: Vec::new() }
    }
}

impl From<HierarchyError> for CliError {
    fn from(e: HierarchyError) -> Self {
        let exit = match &e {
            HierarchyError::MissingInput(_) => Exit::MissingInput,
            HierarchyError::Subsystem { source, .. } => CliError::from(source.clone()).exit,
            _ => Exit::Invalid,
        };
        CliError { exit, message: e.to_string(), diagnostics: Vec::new() }
    }
}

impl From<hfskit_core::interpretability::IndexError> for CliError {
    fn from(e: hfskit_core::interpretability::IndexError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<hfskit_core::hierarchy::RuleCountError> for CliError {
    fn from(e: hfskit_core::hierarchy::RuleCountError) -> Self {
        CliError::invalid(e.to_string())
    }
}
