//! Hierarchies of flat subsystems wired through intermediate variables.

mod decompose;
mod rule_count;

pub use decompose::{decompose_pairwise, DecompositionPlan};
pub use rule_count::{rule_count_actual, rule_count_flat, rule_count_serial_hfs, RuleCountError, RuleCounts, SubsystemRuleCount};

use crate::error::FuzzyError;
use crate::rule::Rule;
use crate::system::{CrispInputs, FiredRule, FlatSystem};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HierarchyError {
    #[error("a hierarchy needs at least one subsystem")]
    EmptyHierarchy,
    #[error("subsystem `{0}` is declared twice")]
    DuplicateSubsystem(String),
    #[error("unknown subsystem `{0}`")]
    UnknownSubsystem(String),
    #[error("subsystem `{subsystem}` has no input `{input}`")]
    UnknownInput { subsystem: String, input: String },
    #[error("subsystem connections form a cycle through {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("output `{variable}` of subsystem `{subsystem}` is never consumed and is not a final output")]
    DanglingIntermediate { subsystem: String, variable: String },
    #[error("input `{input}` of subsystem `{subsystem}` is neither an external input nor connected")]
    UnboundInput { subsystem: String, input: String },
    #[error("variable `{0}` has more than one producer")]
    DuplicateProducer(String),
    #[error("final output `{0}` is not produced by any subsystem")]
    UnknownOutput(String),
    #[error("missing input `{0}`")]
    MissingInput(String),
    #[error("subsystem `{subsystem}`: {source}")]
    Subsystem {
        subsystem: String,
        #[source]
        source: FuzzyError,
    },
    #[error("{0}")]
    Domain(String),
}

/// Producer output feeding a consumer input. The producer's single output
/// variable is implied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Connection {
    pub producer: String,
    pub consumer: String,
    pub input: String,
}

impl Connection {
    pub fn new(producer: impl Into<String>, consumer: impl Into<String>, input: impl Into<String>) -> Self {
        Connection { producer: producer.into(), consumer: consumer.into(), input: input.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Binding {
    External(usize),
    Intermediate(usize),
}

/// A validated DAG of flat subsystems with 1-based layer assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchicalSystem {
    name: String,
    subsystems: Vec<FlatSystem>,
    external_inputs: Vec<String>,
    intermediates: Vec<String>,
    final_outputs: Vec<String>,
    connections: Vec<Connection>,
    layers: Vec<usize>,
    order: Vec<usize>,
    bindings: Vec<Vec<Binding>>,
}

impl HierarchicalSystem {
    /// Validates the topology and assigns layers:
    /// `layer(s) = 1 + max(layer of producers feeding s)`.
    pub fn build(
        name: impl Into<String>,
        subsystems: Vec<FlatSystem>,
        connections: Vec<Connection>,
        external_inputs: Vec<String>,
        final_outputs: Vec<String>,
    ) -> Result<Self, HierarchyError> {
        if subsystems.is_empty() {
            return Err(HierarchyError::EmptyHierarchy);
        }
        let index_of = |name: &str| subsystems.iter().position(|s| s.name() == name);
        for (i, s) in subsystems.iter().enumerate() {
            if index_of(s.name()) != Some(i) {
                return Err(HierarchyError::DuplicateSubsystem(s.name().into()));
            }
            let out = s.output().name();
            if subsystems[..i].iter().any(|p| p.output().name() == out) || external_inputs.iter().any(|e| e == out) {
                return Err(HierarchyError::DuplicateProducer(out.into()));
            }
        }

        let mut incoming: Vec<Vec<Option<usize>>> =
            subsystems.iter().map(|s| vec![None; s.inputs().len()]).collect();
        for c in &connections {
            let producer = index_of(&c.producer).ok_or_else(|| HierarchyError::UnknownSubsystem(c.producer.clone()))?;
            let consumer = index_of(&c.consumer).ok_or_else(|| HierarchyError::UnknownSubsystem(c.consumer.clone()))?;
            let slot = subsystems[consumer]
                .inputs()
                .iter()
                .position(|v| v.name() == c.input)
                .ok_or_else(|| HierarchyError::UnknownInput { subsystem: c.consumer.clone(), input: c.input.clone() })?;
            if incoming[consumer][slot].replace(producer).is_some() || external_inputs.contains(&c.input) {
                return Err(HierarchyError::DuplicateProducer(c.input.clone()));
            }
        }

        let mut bindings = Vec::with_capacity(subsystems.len());
        for (s, slots) in subsystems.iter().zip(&incoming) {
            let mut row = Vec::with_capacity(slots.len());
            for (var, producer) in s.inputs().iter().zip(slots) {
                row.push(match producer {
                    Some(p) => Binding::Intermediate(*p),
                    None => match external_inputs.iter().position(|e| e == var.name()) {
                        Some(e) => Binding::External(e),
                        None => {
                            return Err(HierarchyError::UnboundInput {
                                subsystem: s.name().into(),
                                input: var.name().into(),
                            })
                        }
                    },
                });
            }
            bindings.push(row);
        }

        for out in &final_outputs {
            if !subsystems.iter().any(|s| s.output().name() == out) {
                return Err(HierarchyError::UnknownOutput(out.clone()));
            }
        }
        let mut intermediates = Vec::new();
        for (i, s) in subsystems.iter().enumerate() {
            let consumed = connections.iter().any(|c| c.producer == s.name());
            let is_final = final_outputs.iter().any(|o| o == s.output().name());
            if !consumed && !is_final {
                return Err(HierarchyError::DanglingIntermediate {
                    subsystem: s.name().into(),
                    variable: s.output().name().into(),
                });
            }
            if consumed {
                intermediates.push(subsystems[i].output().name().to_string());
            }
        }

        let (order, layers) = layer_assignment(&subsystems, &bindings)?;
        Ok(HierarchicalSystem {
            name: name.into(),
            subsystems,
            external_inputs,
            intermediates,
            final_outputs,
            connections,
            layers,
            order,
            bindings,
        })
    }

    /// One-subsystem hierarchy equivalent to `system`.
    pub fn from_flat(system: FlatSystem) -> Self {
        let inputs = system.inputs().iter().map(|v| v.name().to_string()).collect();
        let output = vec![system.output().name().to_string()];
        let name = system.name().to_string();
        Self::build(name, vec![system], vec![], inputs, output).expect("a lone flat system is always a valid hierarchy")
    }

    /// Rebuilds with every subsystem's rule base replaced by `rules(subsystem)`.
    pub fn with_subsystem_rules<F>(&self, rules: F) -> Result<Self, HierarchyError>
    where
        F: Fn(&FlatSystem) -> Vec<Rule>,
    {
        let subsystems = self
            .subsystems
            .iter()
            .map(|s| {
                s.with_rules(rules(s))
                    .map_err(|source| HierarchyError::Subsystem { subsystem: s.name().into(), source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HierarchicalSystem { subsystems, ..self.clone() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn subsystems(&self) -> &[FlatSystem] {
        &self.subsystems
    }

    pub fn subsystem(&self, name: &str) -> Option<&FlatSystem> {
        self.subsystems.iter().find(|s| s.name() == name)
    }

    pub fn external_inputs(&self) -> &[String] {
        &self.external_inputs
    }

    pub fn intermediates(&self) -> &[String] {
        &self.intermediates
    }

    pub fn final_outputs(&self) -> &[String] {
        &self.final_outputs
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    /// Layer of each subsystem, in declaration order.
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn layer_map(&self) -> BTreeMap<String, usize> {
        self.subsystems.iter().zip(&self.layers).map(|(s, &l)| (s.name().to_string(), l)).collect()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.iter().copied().max().unwrap_or(0)
    }

    /// Subsystem indices grouped by layer (outer index = layer - 1).
    pub fn layer_groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.layer_count()];
        for (i, &l) in self.layers.iter().enumerate() {
            groups[l - 1].push(i);
        }
        groups
    }

    /// Evaluation order: by layer, then declaration order.
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    /// Evaluates subsystems in topological order, passing each intermediate
    /// downstream as its defuzzified crisp value.
    pub fn evaluate(&self, inputs: &CrispInputs) -> Result<EvaluationTrace, HierarchyError> {
        let externals = self
            .external_inputs
            .iter()
            .map(|name| inputs.get(name).copied().ok_or_else(|| HierarchyError::MissingInput(name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut produced: Vec<Option<f64>> = vec![None; self.subsystems.len()];
        let mut steps = Vec::with_capacity(self.subsystems.len());
        for &i in &self.order {
            let system = &self.subsystems[i];
            let local: CrispInputs = system
                .inputs()
                .iter()
                .zip(&self.bindings[i])
                .map(|(var, binding)| {
                    let value = match *binding {
                        Binding::External(e) => externals[e],
                        Binding::Intermediate(p) => produced[p].expect("producers precede consumers"),
                    };
                    (var.name().to_string(), value)
                })
                .collect();
            let eval = system
                .evaluate(&local)
                .map_err(|source| HierarchyError::Subsystem { subsystem: system.name().into(), source })?;
            produced[i] = Some(eval.crisp);
            steps.push(SubsystemTrace {
                subsystem: system.name().to_string(),
                layer: self.layers[i],
                inputs: local,
                fired: eval.fired,
                output: system.output().name().to_string(),
                crisp: eval.crisp,
                label: eval.label,
            });
        }
        let outputs = self
            .final_outputs
            .iter()
            .map(|out| {
                let step = steps.iter().find(|s| &s.output == out).expect("final outputs validated at build");
                FinalOutput { variable: out.clone(), crisp: step.crisp, label: step.label.clone() }
            })
            .collect();
        Ok(EvaluationTrace { steps, outputs })
    }
}

/// Kahn's algorithm over producer edges; ties resolved by declaration order.
fn layer_assignment(subsystems: &[FlatSystem], bindings: &[Vec<Binding>]) -> Result<(Vec<usize>, Vec<usize>), HierarchyError> {
    let n = subsystems.len();
    let producers: Vec<Vec<usize>> = bindings
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|b| match *b {
                    Binding::Intermediate(p) => Some(p),
                    Binding::External(_) => None,
                })
                .collect()
        })
        .collect();
    let mut layers = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let ready: Vec<usize> = (0..n)
            .filter(|&i| !done[i] && producers[i].iter().all(|&p| done[p]))
            .collect();
        if ready.is_empty() {
            let stuck = (0..n).filter(|&i| !done[i]).map(|i| subsystems[i].name().to_string()).collect();
            return Err(HierarchyError::CycleDetected(stuck));
        }
        for &i in &ready {
            layers[i] = 1 + producers[i].iter().map(|&p| layers[p]).max().unwrap_or(0);
        }
        for i in ready {
            done[i] = true;
            order.push(i);
        }
    }
    order.sort_by_key(|&i| (layers[i], i));
    Ok((order, layers))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsystemTrace {
    pub subsystem: String,
    pub layer: usize,
    pub inputs: CrispInputs,
    pub fired: Vec<FiredRule>,
    pub output: String,
    pub crisp: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinalOutput {
    pub variable: String,
    pub crisp: f64,
    pub label: String,
}

/// Per-subsystem record of one hierarchical evaluation, in evaluation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationTrace {
    pub steps: Vec<SubsystemTrace>,
    pub outputs: Vec<FinalOutput>,
}

impl EvaluationTrace {
    /// The first declared final output.
    pub fn final_output(&self) -> &FinalOutput {
        &self.outputs[0]
    }

    /// Crisp value produced for `variable` by any subsystem.
    pub fn value(&self, variable: &str) -> Option<f64> {
        self.steps.iter().find(|s| s.output == variable).map(|s| s.crisp)
    }
}
