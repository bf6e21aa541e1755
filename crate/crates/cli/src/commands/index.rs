use super::kind;
use crate::args::{IndexArgs, IndexOptions};
use crate::error::CliError;
use crate::output::{fixed, Output, Style};
use crate::source::{external_indices, parse_list, Loaded};
use hfskit_core::interpretability::{hierarchy_index, nauck_style_index, ExternalIndices, IndexSource};
use serde_json::json;
use std::fmt::Write;

/// Parsed `--weights` and `--external-indices`.
pub struct IndexChoice {
    pub weights: Option<Vec<f64>>,
    pub external: Option<ExternalIndices>,
}

impl IndexChoice {
    pub fn from_options(opts: &IndexOptions) -> Result<Self, CliError> {
        Ok(IndexChoice {
            weights: opts.weights.as_deref().map(|w| parse_list("weight", w)).transpose()?,
            external: opts.external_indices.as_deref().map(external_indices).transpose()?,
        })
    }

    pub fn source(&self) -> IndexSource<'_> {
        match &self.external {
            Some(e) => IndexSource::External(e),
            None => IndexSource::Surrogate,
        }
    }
}

pub fn index(args: &IndexArgs, style: Style) -> Result<Output, CliError> {
    let loaded = Loaded::open(&args.target.system)?;
    let (name, target) = loaded.target(args.target.name.as_deref())?;
    let choice = IndexChoice::from_options(&args.index)?;
    let h = target.to_hierarchy();
    let (per, assignment, score) = hierarchy_index(&h, choice.source(), choice.weights.as_deref())?;

    let subsystems: Vec<_> = per
        .iter()
        .map(|s| {
            let surrogate = match choice.external {
                None => h.subsystem(&s.subsystem).and_then(|f| nauck_style_index(f).ok()),
                Some(_) => None,
            };
            json!({"subsystem": s.subsystem, "layer": s.layer, "value": s.value, "surrogate": surrogate})
        })
        .collect();
    let results = json!({
        "system": name,
        "kind": kind(&target),
        "family": choice.source().family(),
        "family_label": choice.external.as_ref().and_then(|e| e.family.clone()),
        "subsystems": subsystems,
        "weights": assignment.weights(),
        "hfsi": score,
    });

    let mut text = String::new();
    for s in &per {
        writeln!(text, "layer {}  {:<12} {}", s.layer, s.subsystem, fixed(s.value)).unwrap();
    }
    let weights: Vec<String> = assignment.weights().iter().map(|w| fixed(*w)).collect();
    writeln!(text, "weights  {}", weights.join(", ")).unwrap();
    writeln!(text, "HFSi     {}", style.bold(&fixed(score))).unwrap();
    let mut out = Output::new(results, text);
    out.warnings = loaded.warnings();
    Ok(out)
}
