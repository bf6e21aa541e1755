//! Interpretability indices for flat and hierarchical systems.
//!
//! Per-subsystem base indices `E` are aggregated as
//! `HFSi = sum_i w_i * mean_j(E_ij)` over layers `i` and the subsystems `j`
//! of each layer. With one layer of one subsystem and `w = 1` this is the
//! base index itself.
//!
//! The built-in base index is a structural surrogate in the spirit of the
//! Nauck index (complexity x partition x coverage):
//!
//! * complexity = output terms / total antecedent clauses, clamped to 1
//! * partition  = mean over inputs of `1 / (p - 1)` for `p` terms (1 if `p = 1`)
//! * coverage   = mean over inputs of the share of 101 domain samples where
//!   the term memberships sum to at least 0.999
//!
//! Any other index family can be supplied per subsystem as [`ExternalIndices`].

use crate::hierarchy::{rule_count_actual, HierarchicalSystem};
use crate::system::{grid_point, FlatSystem};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;
const COVERAGE_SAMPLES: usize = 101;
const COVERAGE_THRESHOLD: f64 = 0.999;

pub const EXTERNAL_INDICES_SCHEMA: &str = "hfskit.external-indices/v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("layer weights must sum to 1, got {sum}")]
    WeightSum { sum: f64 },
    #[error("expected {expected} layer weights, got {got}")]
    WeightArity { expected: usize, got: usize },
    #[error("layer weight {0} is negative or not finite")]
    InvalidWeight(f64),
    #[error("index for `{subsystem}` is {value}, outside [0, 1]")]
    IndexOutOfRange { subsystem: String, value: f64 },
    #[error("no index assigned to subsystem `{0}`")]
    IncompleteAssignment(String),
    #[error("layer {0} has no subsystems")]
    EmptyLayer(usize),
    #[error("system `{0}` has an empty rule base")]
    EmptyRuleBase(String),
    #[error("flat inputs {flat:?} differ from hierarchy inputs {hierarchy:?}")]
    InputMismatch { flat: Vec<String>, hierarchy: Vec<String> },
}

/// Base indices grouped by layer plus one weight per layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexAssignment {
    layers: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl IndexAssignment {
    pub fn new(layers: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self, IndexError> {
        if weights.len() != layers.len() {
            return Err(IndexError::WeightArity { expected: layers.len(), got: weights.len() });
        }
        if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(IndexError::InvalidWeight(w));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(IndexError::WeightSum { sum });
        }
        for (i, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(IndexError::EmptyLayer(i + 1));
            }
            for (j, &e) in layer.iter().enumerate() {
                if !(0.0..=1.0).contains(&e) {
                    return Err(IndexError::IndexOutOfRange { subsystem: format!("layer {} #{}", i + 1, j + 1), value: e });
                }
            }
        }
        Ok(IndexAssignment { layers, weights })
    }

    /// A flat system: one layer, one subsystem, weight 1.
    pub fn flat(index: f64) -> Result<Self, IndexError> {
        Self::new(vec![vec![index]], vec![1.0])
    }

    /// Groups `indices` (keyed by subsystem name) by the hierarchy's layers.
    /// Keys naming no subsystem are ignored.
    /// `weights` defaults to uniform `1 / layers`.
    pub fn for_hierarchy(
        hfs: &HierarchicalSystem,
        indices: &BTreeMap<String, f64>,
        weights: Option<&[f64]>,
    ) -> Result<Self, IndexError> {
        let groups = hfs
            .layer_groups()
            .into_iter()
            .map(|group| {
                group
                    .into_iter()
                    .map(|i| {
                        let name = hfs.subsystems()[i].name();
                        let value = *indices.get(name).ok_or_else(|| IndexError::IncompleteAssignment(name.into()))?;
                        if !(0.0..=1.0).contains(&value) {
                            return Err(IndexError::IndexOutOfRange { subsystem: name.into(), value });
                        }
                        Ok(value)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let weights = match weights {
            Some(w) => w.to_vec(),
            None => uniform_weights(groups.len()),
        };
        Self::new(groups, weights)
    }

    pub fn layers(&self) -> &[Vec<f64>] {
        &self.layers
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub fn uniform_weights(layers: usize) -> Vec<f64> {
    vec![1.0 / layers as f64; layers]
}

/// Layer-weighted mean of per-subsystem base indices.
pub fn hfsi(assignment: &IndexAssignment) -> f64 {
    assignment
        .layers
        .iter()
        .zip(&assignment.weights)
        .map(|(layer, w)| w * layer.iter().sum::<f64>() / layer.len() as f64)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurrogateIndex {
    pub complexity: f64,
    pub partition: f64,
    pub coverage: f64,
    pub value: f64,
}

/// Structural complexity x partition x coverage index of one flat system.
pub fn nauck_style_index(system: &FlatSystem) -> Result<SurrogateIndex, IndexError> {
    if system.rules().is_empty() {
        return Err(IndexError::EmptyRuleBase(system.name().into()));
    }
    let premises: usize = system.rules().iter().map(|r| r.antecedents.len()).sum();
    let complexity = (system.output().terms().len() as f64 / premises as f64).clamp(0.0, 1.0);

    let inputs = system.inputs();
    let partition = inputs
        .iter()
        .map(|v| match v.terms().len() {
            0 | 1 => 1.0,
            p => 1.0 / (p - 1) as f64,
        })
        .sum::<f64>()
        / inputs.len() as f64;

    let coverage = inputs
        .iter()
        .map(|v| {
            let (lo, hi) = v.domain();
            let covered = (0..COVERAGE_SAMPLES)
                .filter(|&i| {
                    let x = grid_point(lo, hi, COVERAGE_SAMPLES, i);
                    v.fuzzify(x).iter().sum::<f64>() >= COVERAGE_THRESHOLD
                })
                .count();
            covered as f64 / COVERAGE_SAMPLES as f64
        })
        .sum::<f64>()
        / inputs.len() as f64;

    Ok(SurrogateIndex { complexity, partition, coverage, value: complexity * partition * coverage })
}

/// Externally computed base indices, keyed by subsystem name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalIndices {
    #[serde(default = "external_schema")]
    pub schema: String,
    #[serde(default)]
    pub family: Option<String>,
    pub indices: BTreeMap<String, f64>,
}

fn external_schema() -> String {
    EXTERNAL_INDICES_SCHEMA.to_string()
}

impl ExternalIndices {
    pub fn new(indices: BTreeMap<String, f64>) -> Self {
        ExternalIndices { schema: external_schema(), family: None, indices }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexFamily {
    Nauck,
    External,
}

#[derive(Debug, Clone, Copy)]
pub enum IndexSource<'a> {
    Surrogate,
    External(&'a ExternalIndices),
}

impl IndexSource<'_> {
    pub fn family(&self) -> IndexFamily {
        match self {
            IndexSource::Surrogate => IndexFamily::Nauck,
            IndexSource::External(_) => IndexFamily::External,
        }
    }

    fn index_of(&self, system: &FlatSystem) -> Result<f64, IndexError> {
        match self {
            IndexSource::Surrogate => Ok(nauck_style_index(system)?.value),
            IndexSource::External(ext) => {
                let value = *ext
                    .indices
                    .get(system.name())
                    .ok_or_else(|| IndexError::IncompleteAssignment(system.name().into()))?;
                if !(0.0..=1.0).contains(&value) {
                    return Err(IndexError::IndexOutOfRange { subsystem: system.name().into(), value });
                }
                Ok(value)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsystemIndex {
    pub subsystem: String,
    pub layer: usize,
    pub value: f64,
}

/// Base index of every subsystem, in declaration order.
pub fn subsystem_indices(hfs: &HierarchicalSystem, source: IndexSource<'_>) -> Result<Vec<SubsystemIndex>, IndexError> {
    hfs.subsystems()
        .iter()
        .zip(hfs.layers())
        .map(|(s, &layer)| Ok(SubsystemIndex { subsystem: s.name().into(), layer, value: source.index_of(s)? }))
        .collect()
}

/// HFSi of a hierarchy under `source`, with optional explicit layer weights.
pub fn hierarchy_index(
    hfs: &HierarchicalSystem,
    source: IndexSource<'_>,
    weights: Option<&[f64]>,
) -> Result<(Vec<SubsystemIndex>, IndexAssignment, f64), IndexError> {
    let per = subsystem_indices(hfs, source)?;
    let map = per.iter().map(|s| (s.subsystem.clone(), s.value)).collect();
    let assignment = IndexAssignment::for_hierarchy(hfs, &map, weights)?;
    let score = hfsi(&assignment);
    Ok((per, assignment, score))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpretabilityReport {
    pub family: IndexFamily,
    pub flat_system: String,
    pub hfs_system: String,
    pub flat_index: f64,
    pub flat_hfsi: f64,
    pub hfs_indices: Vec<SubsystemIndex>,
    pub hfs_weights: Vec<f64>,
    pub hfs_hfsi: f64,
    pub flat_rules: usize,
    pub hfs_rules: usize,
    pub reduction_percent: f64,
}

/// `(flat - hfs) / flat * 100`; 0 for an empty flat rule base.
pub fn reduction_percent(flat_rules: usize, hfs_rules: usize) -> f64 {
    if flat_rules == 0 {
        0.0
    } else {
        (flat_rules as f64 - hfs_rules as f64) / flat_rules as f64 * 100.0
    }
}

/// Side-by-side rule counts and indices of a flat system and a hierarchy
/// over the same external inputs.
pub fn compare(
    flat: &FlatSystem,
    hfs: &HierarchicalSystem,
    weights: Option<&[f64]>,
    source: IndexSource<'_>,
) -> Result<InterpretabilityReport, IndexError> {
    let flat_inputs: BTreeSet<String> = flat.inputs().iter().map(|v| v.name().to_string()).collect();
    let hfs_inputs: BTreeSet<String> = hfs.external_inputs().iter().cloned().collect();
    if flat_inputs != hfs_inputs {
        return Err(IndexError::InputMismatch {
            flat: flat_inputs.into_iter().collect(),
            hierarchy: hfs_inputs.into_iter().collect(),
        });
    }
    let flat_index = source.index_of(flat)?;
    let flat_hfsi = hfsi(&IndexAssignment::flat(flat_index)?);
    let (hfs_indices, assignment, hfs_hfsi) = hierarchy_index(hfs, source, weights)?;
    let flat_rules = flat.rules().len();
    let hfs_rules = rule_count_actual(hfs).total;
    Ok(InterpretabilityReport {
        family: source.family(),
        flat_system: flat.name().into(),
        hfs_system: hfs.name().into(),
        flat_index,
        flat_hfsi,
        hfs_indices,
        hfs_weights: assignment.weights().to_vec(),
        hfs_hfsi,
        flat_rules,
        hfs_rules,
        reduction_percent: reduction_percent(flat_rules, hfs_rules),
    })
}
