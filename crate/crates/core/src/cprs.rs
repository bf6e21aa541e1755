//! Career path recommendation case study: bundled definitions and a
//! reproduction harness for its published figures.

use crate::dsl::{self, DslError, SystemDefinition};
use crate::hierarchy::{rule_count_actual, rule_count_flat, rule_count_serial_hfs, HierarchicalSystem};
use crate::interpretability::{
    compare, hfsi, uniform_weights, IndexAssignment, IndexSource,
};
use crate::system::{CrispInputs, FlatSystem};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const FLAT_FILE: &str = "cprs_flat.hfs";
pub const HFS_FILE: &str = "cprs_hfs.hfs";
pub const EXTERNAL_INDEX_FILE: &str = "cprs_fuzzy_index.json";

pub const FLAT_SOURCE: &str = include_str!("../data/cprs_flat.hfs");
pub const HFS_SOURCE: &str = include_str!("../data/cprs_hfs.hfs");
pub const EXTERNAL_INDEX_SOURCE: &str = include_str!("../data/cprs_fuzzy_index.json");

pub const FLAT_NAME: &str = "cprs_flat";
pub const HFS_NAME: &str = "cprs_hfs";
pub const OUTPUT: &str = "WebProgrammer";

/// Skill-assessment questions for the Web Programmer career path, each
/// answered on a 0-10 scale.
pub const QUESTIONS: [(&str, &str); 5] = [
    ("Q1", "Design and develop a web base"),
    ("Q2", "Handle whole web project from start to roll-out"),
    ("Q3", "Skill and knowledge in PHP, HTML, CSS, Javascript and MySQL"),
    ("Q4", "Good in problem solving, communication interpersonal and organization skills"),
    ("Q5", "Up to date with latest web technology trends and programming techniques"),
];

/// Published per-subsystem fuzzy-index values, used as external inputs.
pub const FLAT_FUZZY_INDEX: f64 = 0.0642;
pub const HFS_FUZZY_INDEX: f64 = 0.4932;

#[derive(Debug, Clone)]
pub struct CaseStudyBundle {
    pub flat_definition: SystemDefinition,
    pub hfs_definition: SystemDefinition,
    pub flat: FlatSystem,
    pub hfs: HierarchicalSystem,
}

impl CaseStudyBundle {
    pub fn bundled() -> Self {
        Self::from_sources(FLAT_SOURCE, HFS_SOURCE).expect("bundled definitions are valid")
    }

    pub fn from_sources(flat_src: &str, hfs_src: &str) -> Result<Self, DslError> {
        let flat_definition = dsl::parse_syntax(flat_src)?;
        let hfs_definition = dsl::parse_syntax(hfs_src)?;
        let flat_model = dsl::compile(&flat_definition)?;
        let hfs_model = dsl::compile(&hfs_definition)?;
        let missing = |what: &str| {
            DslError::semantic(vec![dsl::ParseDiagnostic::error(
                format!("definition does not declare `{what}`"),
                dsl::Span::new(1, 1),
                None,
            )])
        };
        let flat = flat_model.system(FLAT_NAME).cloned().ok_or_else(|| missing(FLAT_NAME))?;
        let hfs = hfs_model.hierarchy(HFS_NAME).cloned().ok_or_else(|| missing(HFS_NAME))?;
        Ok(CaseStudyBundle { flat_definition, hfs_definition, flat, hfs })
    }
}

/// Flat system: 5 inputs, 243 rules.
pub fn cprs_flat() -> FlatSystem {
    CaseStudyBundle::bundled().flat
}

/// Hierarchy: 4 two-input subsystems in 3 layers, 36 rules.
pub fn cprs_hfs() -> HierarchicalSystem {
    CaseStudyBundle::bundled().hfs
}

/// All five questions answered with the same score.
pub fn uniform_answers(score: f64) -> CrispInputs {
    QUESTIONS.iter().map(|(q, _)| (q.to_string(), score)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Value reported for the original case study.
    #[serde(rename = "PAPER")]
    Reported,
    /// Value computed independently from definitions or formulas.
    #[serde(rename = "DERIVED")]
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub provenance: Provenance,
    pub source: &'static str,
    pub expected: Value,
    pub computed: Value,
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ReproductionReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const REDUCTION_TOLERANCE: f64 = 0.01;
pub const HFSI_TOLERANCE: f64 = 1e-9;
pub const SURROGATE_TOLERANCE: f64 = 1e-4;
pub const SURROGATE_HFS: f64 = 0.08333;
pub const SURROGATE_FLAT: f64 = 0.00123;

/// Runs every check against the bundled definitions.
pub fn reproduce_case_study() -> ReproductionReport {
    reproduce_with(FLAT_SOURCE, HFS_SOURCE)
}

/// Runs every check against the given definition sources. A source that
/// fails to load fails the checks that need it; the rest still run.
pub fn reproduce_with(flat_src: &str, hfs_src: &str) -> ReproductionReport {
    let bundle = CaseStudyBundle::from_sources(flat_src, hfs_src).map_err(|e| e.to_string());
    let mut checks = Vec::with_capacity(6);

    checks.push(run(
        "a",
        "rule-count formulas, three inputs with three terms",
        Provenance::Reported,
        "worked example: flat m^n = 27, serial hierarchy (n-1)m^2 = 18",
        json!({"flat": 27, "serial_hfs": 18}),
        None,
        || {
            let flat = rule_count_flat(3, 3).map_err(|e| e.to_string())?;
            let hfs = rule_count_serial_hfs(3, 3).map_err(|e| e.to_string())?;
            Ok(json!({"flat": flat as u64, "serial_hfs": hfs as u64}))
        },
        |e, c| e == c,
    ));

    checks.push(run(
        "b",
        "rule counts of the bundled systems",
        Provenance::Reported,
        "case-study rule totals: flat 243, hierarchy 4 x 9 = 36",
        json!({"flat": 243, "hfs": 36, "hfs_per_subsystem": {"FLS1": 9, "FLS2": 9, "FLS3": 9, "FLS4": 9}}),
        None,
        || {
            let b = bundle.as_ref().map_err(Clone::clone)?;
            let counts = rule_count_actual(&b.hfs);
            let per: BTreeMap<_, _> = counts.per_subsystem.iter().map(|c| (c.subsystem.clone(), c.rules)).collect();
            Ok(json!({"flat": b.flat.rules().len(), "hfs": counts.total, "hfs_per_subsystem": per}))
        },
        |e, c| e == c,
    ));

    let expected_reduction = (243.0 - 36.0) / 243.0 * 100.0;
    checks.push(run(
        "c",
        "rule reduction of the hierarchy",
        Provenance::Derived,
        "(243 - 36) / 243 x 100, reported as roughly 85%",
        json!(round2(expected_reduction)),
        Some(REDUCTION_TOLERANCE),
        || {
            let b = bundle.as_ref().map_err(Clone::clone)?;
            let r = compare(&b.flat, &b.hfs, None, IndexSource::Surrogate).map_err(|e| e.to_string())?;
            Ok(json!(r.reduction_percent))
        },
        |e, c| within(e, c, REDUCTION_TOLERANCE),
    ));

    checks.push(run(
        "d",
        "all-Weak answers are labelled No by both systems",
        Provenance::Reported,
        "sample rules: Q1..Q5 all Weak end in WebProgrammer is No, flat and hierarchical",
        json!({"flat": "No", "hfs": "No"}),
        None,
        || {
            let b = bundle.as_ref().map_err(Clone::clone)?;
            let zeros = uniform_answers(0.0);
            let flat = b.flat.evaluate(&zeros).map_err(|e| e.to_string())?;
            let hfs = b.hfs.evaluate(&zeros).map_err(|e| e.to_string())?;
            Ok(json!({"flat": flat.label, "hfs": hfs.final_output().label}))
        },
        |e, c| e == c,
    ));

    checks.push(run(
        "e",
        "layer-weighted aggregation of published fuzzy indices",
        Provenance::Reported,
        "flat index 0.0642 is returned unchanged; four subsystems at 0.4932 aggregate to 0.4932",
        json!({"flat": FLAT_FUZZY_INDEX, "hfs": HFS_FUZZY_INDEX}),
        Some(HFSI_TOLERANCE),
        || {
            let b = bundle.as_ref().map_err(Clone::clone)?;
            let flat = hfsi(&IndexAssignment::flat(FLAT_FUZZY_INDEX).map_err(|e| e.to_string())?);
            let indices = b.hfs.subsystems().iter().map(|s| (s.name().to_string(), HFS_FUZZY_INDEX)).collect();
            let weights = uniform_weights(b.hfs.layer_count());
            let assignment =
                IndexAssignment::for_hierarchy(&b.hfs, &indices, Some(&weights)).map_err(|e| e.to_string())?;
            Ok(json!({"flat": flat, "hfs": hfsi(&assignment)}))
        },
        |e, c| {
            // the flat case must be exact
            e["flat"] == c["flat"] && within(&e["hfs"], &c["hfs"], HFSI_TOLERANCE)
        },
    ));

    checks.push(run(
        "f",
        "surrogate index ranks the hierarchy above the flat system",
        Provenance::Derived,
        "complexity x partition x coverage: (3/18)(1/2)(1) vs (3/1215)(1/2)(1)",
        json!({"hfs": SURROGATE_HFS, "flat": SURROGATE_FLAT, "hfs_more_interpretable": true}),
        Some(SURROGATE_TOLERANCE),
        || {
            let b = bundle.as_ref().map_err(Clone::clone)?;
            let r = compare(&b.flat, &b.hfs, None, IndexSource::Surrogate).map_err(|e| e.to_string())?;
            Ok(json!({"hfs": r.hfs_hfsi, "flat": r.flat_hfsi, "hfs_more_interpretable": r.hfs_hfsi > r.flat_hfsi}))
        },
        |e, c| {
            within(&e["hfs"], &c["hfs"], SURROGATE_TOLERANCE)
                && within(&e["flat"], &c["flat"], SURROGATE_TOLERANCE)
                && c["hfs_more_interpretable"] == Value::Bool(true)
        },
    ));

    ReproductionReport { passed: checks.iter().all(|c| c.passed), checks }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn within(expected: &Value, computed: &Value, tol: f64) -> bool {
    match (expected.as_f64(), computed.as_f64()) {
        (Some(e), Some(c)) => (e - c).abs() <= tol,
        _ => false,
    }
}

#[allow(clippy::too_many_arguments)]
fn run(
    id: &'static str,
    name: &'static str,
    provenance: Provenance,
    source: &'static str,
    expected: Value,
    tolerance: Option<f64>,
    compute: impl FnOnce() -> Result<Value, String>,
    accept: impl Fn(&Value, &Value) -> bool,
) -> Check {
    let (computed, error) = match compute() {
        Ok(v) => (v, None),
        Err(e) => (Value::Null, Some(e)),
    };
    let passed = error.is_none() && accept(&expected, &computed);
    Check { id, name, provenance, source, expected, computed, tolerance, passed, error }
}
