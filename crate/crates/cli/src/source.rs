use crate::error::CliError;
use hfskit_core::cprs;
use hfskit_core::dsl::{load, Model, ParseDiagnostic, Target};
use hfskit_core::interpretability::{ExternalIndices, EXTERNAL_INDICES_SCHEMA};
use std::path::Path;

/// Reads `path`, or the embedded copy when the file does not exist but its
/// name is one of the bundled case-study files.
pub fn read(path: &Path) -> Result<String, CliError> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            bundled(path).map(str::to_string).ok_or_else(|| CliError::invalid(format!("{}: {e}", path.display())))
        }
        Err(e) => Err(CliError::invalid(format!("{}: {e}", path.display()))),
    }
}

fn bundled(path: &Path) -> Option<&'static str> {
    match path.file_name()?.to_str()? {
        cprs::FLAT_FILE => Some(cprs::FLAT_SOURCE),
        cprs::HFS_FILE => Some(cprs::HFS_SOURCE),
        cprs::EXTERNAL_INDEX_FILE => Some(cprs::EXTERNAL_INDEX_SOURCE),
        _ => None,
    }
}

pub struct Loaded {
    pub file: String,
    pub model: Model,
}

impl Loaded {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let file = path.display().to_string();
        let model = load(&read(path)?).map_err(|e| CliError::dsl(&file, e))?;
        Ok(Loaded { file, model })
    }

    pub fn warnings(&self) -> Vec<ParseDiagnostic> {
        self.model.warnings.clone()
    }

    /// The named entry, or the only entry when no name is given.
    pub fn target(&self, name: Option<&str>) -> Result<(String, Target<'_>), CliError> {
        let names = self.model.names();
        let name = match name {
            Some(n) => n.to_string(),
            None if names.len() == 1 => names[0].to_string(),
            None => {
                return Err(CliError::invalid(format!(
                    "{} defines several systems ({}); pick one with --name",
                    self.file,
                    names.join(", ")
                )))
            }
        };
        let target = self.model.get(&name).ok_or_else(|| {
            CliError::invalid(format!("{} has no system named `{name}` (available: {})", self.file, names.join(", ")))
        })?;
        Ok((name, target))
    }
}

/// Splits `FILE:ID` at the last colon.
pub fn split_locator(s: &str) -> Result<(&str, &str), CliError> {
    match s.rsplit_once(':') {
        Some((file, id)) if !file.is_empty() && !id.is_empty() => Ok((file, id)),
        _ => Err(CliError::invalid(format!("expected FILE:ID, got `{s}`"))),
    }
}

pub fn external_indices(path: &Path) -> Result<ExternalIndices, CliError> {
    let text = read(path)?;
    let ext: ExternalIndices = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    if ext.schema != EXTERNAL_INDICES_SCHEMA {
        return Err(CliError::invalid(format!(
            "{}: unsupported schema `{}`, expected `{EXTERNAL_INDICES_SCHEMA}`",
            path.display(),
            ext.schema
        )));
    }
    Ok(ext)
}

pub fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| CliError::invalid(format!("invalid {what} `{}`", p.trim()))))
        .collect()
}
