//! Semantic checks and lowering of a parsed definition into runnable systems.

use super::ast::*;
use super::{DslError, ParseDiagnostic};
use crate::hierarchy::{Connection, HierarchicalSystem, HierarchyError};
use crate::rule::{Clause, Rule};
use crate::rulegen::generate_rules_mean;
use crate::system::FlatSystem;
use crate::variable::{LinguisticVariable, Term, VariableRole};
use std::collections::BTreeSet;

/// Runnable systems from one definition file.
#[derive(Debug, Clone, Default)]
pub struct Model {
    pub systems: Vec<FlatSystem>,
    pub hierarchies: Vec<HierarchicalSystem>,
    pub warnings: Vec<ParseDiagnostic>,
}

/// A named entry of a [`Model`].
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Flat(&'a FlatSystem),
    Hierarchy(&'a HierarchicalSystem),
}

impl Model {
    pub fn system(&self, name: &str) -> Option<&FlatSystem> {
        self.systems.iter().find(|s| s.name() == name)
    }

    pub fn hierarchy(&self, name: &str) -> Option<&HierarchicalSystem> {
        self.hierarchies.iter().find(|h| h.name() == name)
    }

    pub fn get(&self, name: &str) -> Option<Target<'_>> {
        self.system(name)
            .map(Target::Flat)
            .or_else(|| self.hierarchy(name).map(Target::Hierarchy))
    }

    pub fn names(&self) -> Vec<&str> {
        self.systems
            .iter()
            .map(|s| s.name())
            .chain(self.hierarchies.iter().map(|h| h.name()))
            .collect()
    }
}

impl Target<'_> {
    /// Flat systems become one-subsystem hierarchies.
    pub fn to_hierarchy(&self) -> HierarchicalSystem {
        match self {
            Target::Flat(s) => HierarchicalSystem::from_flat((*s).clone()),
            Target::Hierarchy(h) => (*h).clone(),
        }
    }
}

pub fn compile(def: &SystemDefinition) -> Result<Model, DslError> {
    let mut cx = Compiler { errors: Vec::new(), model: Model::default() };
    let mut seen = BTreeSet::new();
    for item in &def.items {
        let name = match item {
            Item::System(s) => &s.name,
            Item::Hierarchy(h) => &h.name,
        };
        if !seen.insert(name.name.as_str()) {
            cx.error(format!("`{}` is declared more than once", name.name), name);
            continue;
        }
        match item {
            Item::System(s) => {
                if let Some(sys) = cx.system(s) {
                    cx.model.systems.push(sys);
                }
            }
            Item::Hierarchy(h) => {
                if let Some(hfs) = cx.hierarchy(h, def) {
                    cx.model.hierarchies.push(hfs);
                }
            }
        }
    }
    if cx.errors.is_empty() {
        Ok(cx.model)
    } else {
        Err(DslError::semantic(cx.errors))
    }
}

struct Compiler {
    errors: Vec<ParseDiagnostic>,
    model: Model,
}

impl Compiler {
    fn error(&mut self, message: String, at: &Ident) {
        self.errors.push(ParseDiagnostic::error(message, at.span, Some(at.name.clone())));
    }

    fn variable(&mut self, v: &VariableDecl) -> Option<LinguisticVariable> {
        let terms = v.terms.iter().map(|t| Term::new(t.name.name.clone(), t.shape)).collect();
        match LinguisticVariable::new(v.name.name.clone(), v.lo, v.hi, terms, v.role) {
            Ok(var) => Some(var),
            Err(e) => {
                let at = match &e {
                    crate::error::FuzzyError::DuplicateTerm { term, .. }
                    | crate::error::FuzzyError::InvalidBreakpoints { term, .. } => {
                        v.terms.iter().rev().find(|t| &t.name.name == term).map(|t| &t.name).unwrap_or(&v.name)
                    }
                    _ => &v.name,
                };
                self.error(e.to_string(), at);
                None
            }
        }
    }

    fn system(&mut self, s: &SystemDecl) -> Option<FlatSystem> {
        let before = self.errors.len();
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        for v in &s.variables {
            if let Some(var) = self.variable(v) {
                if v.role == VariableRole::Output {
                    outputs.push((var, &v.name));
                } else {
                    inputs.push(var);
                }
            }
        }
        if self.errors.len() > before {
            return None;
        }
        if inputs.is_empty() {
            self.error(format!("system `{}` declares no inputs", s.name.name), &s.name);
        }
        let output = match outputs.len() {
            1 => outputs.pop().unwrap().0,
            0 => {
                self.error(format!("system `{}` declares no output", s.name.name), &s.name);
                return None;
            }
            _ => {
                let at = outputs[1].1.clone();
                self.error(format!("system `{}` declares more than one output", s.name.name), &at);
                return None;
            }
        };
        let shell = match FlatSystem::new(s.name.name.clone(), inputs, output, vec![]) {
            Ok(sys) => sys,
            Err(e) => {
                self.error(e.to_string(), &s.name);
                return None;
            }
        };
        let rules = match &s.rules {
            None => {
                self.error(
                    format!("system `{}` has no rule block (`rules {{ ... }}` or `rulegen mean;`)", s.name.name),
                    &s.name,
                );
                return None;
            }
            Some(RuleSource::Generate { policy: GenerationPolicy::Mean, .. }) => {
                generate_rules_mean(shell.inputs(), shell.output())
            }
            Some(RuleSource::Explicit { rules, .. }) => {
                if rules.is_empty() {
                    self.model.warnings.push(ParseDiagnostic::warning(
                        format!("system `{}` has an empty rule base and cannot be evaluated", s.name.name),
                        s.name.span,
                        Some(s.name.name.clone()),
                    ));
                }
                let mut out = Vec::with_capacity(rules.len());
                for r in rules {
                    let rule = Rule::new(
                        r.antecedents.iter().map(|c| Clause::new(&c.variable.name, &c.term.name)).collect(),
                        Clause::new(&r.consequent.variable.name, &r.consequent.term.name),
                    );
                    match shell.check_rule(&rule) {
                        Ok(()) => out.push(rule),
                        Err(e) => {
                            let at = rule_error_position(r, &e);
                            self.error(e.to_string(), at);
                        }
                    }
                }
                out
            }
        };
        if self.errors.len() > before {
            return None;
        }
        Some(shell.with_rules(rules).expect("every rule checked"))
    }

    fn hierarchy(&mut self, h: &HierarchyDecl, def: &SystemDefinition) -> Option<HierarchicalSystem> {
        let before = self.errors.len();
        let mut subsystems: Vec<FlatSystem> = Vec::new();
        for u in &h.uses {
            if subsystems.iter().any(|s| s.name() == u.alias.name) {
                self.error(format!("alias `{}` is used twice", u.alias.name), &u.alias);
                continue;
            }
            match self.model.system(&u.system.name) {
                Some(sys) => subsystems.push(sys.renamed(u.alias.name.clone())),
                None => {
                    let msg = if def.systems().any(|s| s.name.name == u.system.name) {
                        format!("system `{}` must be declared before hierarchy `{}`", u.system.name, h.name.name)
                    } else {
                        format!("unknown system `{}`", u.system.name)
                    };
                    self.error(msg, &u.system);
                }
            }
        }
        let mut connections = Vec::new();
        for c in &h.connections {
            let producer = subsystems.iter().find(|s| s.name() == c.producer.name);
            let consumer = subsystems.iter().find(|s| s.name() == c.consumer.name);
            match (producer, consumer) {
                (None, _) => self.error(format!("unknown subsystem alias `{}`", c.producer.name), &c.producer),
                (_, None) => self.error(format!("unknown subsystem alias `{}`", c.consumer.name), &c.consumer),
                (Some(p), Some(q)) => {
                    if p.output().name() != c.output.name {
                        let msg = format!("`{}` produces `{}`, not `{}`", p.name(), p.output().name(), c.output.name);
                        self.error(msg, &c.output);
                    } else if q.input(&c.input.name).is_none() {
                        self.error(format!("subsystem `{}` has no input `{}`", q.name(), c.input.name), &c.input);
                    } else {
                        connections.push(Connection::new(&c.producer.name, &c.consumer.name, &c.input.name));
                    }
                }
            }
        }
        if h.outputs.is_empty() {
            self.error(format!("hierarchy `{}` declares no output", h.name.name), &h.name);
        }
        if self.errors.len() > before {
            return None;
        }
        let inputs = h.inputs.iter().map(|i| i.name.clone()).collect();
        let outputs = h.outputs.iter().map(|i| i.name.clone()).collect();
        match HierarchicalSystem::build(h.name.name.clone(), subsystems, connections, inputs, outputs) {
            Ok(hfs) => Some(hfs),
            Err(e) => {
                let at = hierarchy_error_position(h, &e);
                self.error(e.to_string(), at);
                None
            }
        }
    }
}

fn rule_error_position<'a>(r: &'a RuleDecl, e: &crate::error::FuzzyError) -> &'a Ident {
    use crate::error::FuzzyError::*;
    let clauses = || r.antecedents.iter().chain(std::iter::once(&r.consequent));
    match e {
        UnknownVariable { variable } | ConsequentNotOutput { variable, .. } => {
            clauses().find(|c| &c.variable.name == variable).map(|c| &c.variable)
        }
        RepeatedAntecedent { variable } => {
            r.antecedents.iter().filter(|c| &c.variable.name == variable).nth(1).map(|c| &c.variable)
        }
        UnknownTerm { variable, term } => clauses()
            .find(|c| &c.variable.name == variable && &c.term.name == term)
            .map(|c| &c.term),
        _ => None,
    }
    .unwrap_or(&r.consequent.variable)
}

fn hierarchy_error_position<'a>(h: &'a HierarchyDecl, e: &HierarchyError) -> &'a Ident {
    let find = |name: &str| h.inputs.iter().chain(&h.outputs).find(|i| i.name == name);
    match e {
        HierarchyError::UnknownOutput(v) | HierarchyError::DuplicateProducer(v) => find(v),
        HierarchyError::UnboundInput { subsystem, .. } | HierarchyError::DanglingIntermediate { subsystem, .. } => {
            h.uses.iter().find(|u| &u.alias.name == subsystem).map(|u| &u.alias)
        }
        _ => None,
    }
    .unwrap_or(&h.name)
}
