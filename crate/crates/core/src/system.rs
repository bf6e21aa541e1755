use crate::error::FuzzyError;
use crate::rule::{firing_strength, Rule};
use crate::variable::LinguisticVariable;
use serde::Serialize;
use std::collections::BTreeMap;

/// Samples used to discretise an output domain unless overridden.
pub const DEFAULT_RESOLUTION: usize = 1001;

/// Crisp values keyed by variable name.
pub type CrispInputs = BTreeMap<String, f64>;

/// Per-variable degree vectors, indexed like the variable's terms.
pub type Fuzzified = BTreeMap<String, Vec<f64>>;

#[derive(Debug, Clone, PartialEq)]
struct CompiledRule {
    antecedents: Vec<(usize, usize)>,
    consequent: usize,
}

/// A single Mamdani rule base: min AND, min implication, max aggregation,
/// centroid defuzzification.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatSystem {
    name: String,
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<Rule>,
    compiled: Vec<CompiledRule>,
    resolution: usize,
}

impl FlatSystem {
    /// Builds a system and resolves every rule against its variables.
    /// An empty rule base is accepted here and rejected at evaluation time.
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<Rule>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        for (i, v) in inputs.iter().enumerate() {
            let clash = inputs[..i].iter().any(|u| u.name() == v.name()) || v.name() == output.name();
            if clash {
                return Err(FuzzyError::DuplicateVariable { system: name, variable: v.name().into() });
            }
        }
        let compiled = rules
            .iter()
            .map(|r| compile_rule(r, &inputs, &output))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FlatSystem { name, inputs, output, rules, compiled, resolution: DEFAULT_RESOLUTION })
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self, FuzzyError> {
        if resolution < 2 {
            return Err(FuzzyError::InvalidResolution(resolution));
        }
        self.resolution = resolution;
        Ok(self)
    }

    /// Same system with a replaced rule base.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Self, FuzzyError> {
        Ok(FlatSystem::new(self.name.clone(), self.inputs.clone(), self.output.clone(), rules)?
            .with_resolution(self.resolution)
            .expect("resolution already validated"))
    }

    /// Resolves `rule` against this system without adding it.
    pub fn check_rule(&self, rule: &Rule) -> Result<(), FuzzyError> {
        compile_rule(rule, &self.inputs, &self.output).map(|_| ())
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FlatSystem { name: name.into(), ..self.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn input(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs.iter().find(|v| v.name() == name)
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Fuzzifies every input variable. Extra entries in `inputs` are ignored.
    pub fn fuzzify(&self, inputs: &CrispInputs) -> Result<Fuzzified, FuzzyError> {
        self.inputs
            .iter()
            .map(|v| Ok((v.name().to_string(), v.fuzzify(crisp_value(inputs, v.name())?))))
            .collect()
    }

    /// Firing strength of an arbitrary rule over already-fuzzified inputs.
    pub fn firing_strength(&self, rule: &Rule, fuzzified: &Fuzzified) -> Result<f64, FuzzyError> {
        let compiled = compile_rule(rule, &self.inputs, &self.output)?;
        compiled
            .antecedents
            .iter()
            .map(|&(var, term)| {
                let name = self.inputs[var].name();
                fuzzified
                    .get(name)
                    .map(|degrees| degrees[term])
                    .ok_or_else(|| FuzzyError::MissingInput { variable: name.into() })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(firing_strength)
    }

    /// Firing strength of every rule, in rule-base order.
    pub fn rule_strengths(&self, inputs: &CrispInputs) -> Result<Vec<f64>, FuzzyError> {
        let degrees = self
            .inputs
            .iter()
            .map(|v| Ok(v.fuzzify(crisp_value(inputs, v.name())?)))
            .collect::<Result<Vec<_>, FuzzyError>>()?;
        Ok(self
            .compiled
            .iter()
            .map(|r| firing_strength(r.antecedents.iter().map(|&(v, t)| degrees[v][t])))
            .collect())
    }

    /// Clips each rule's consequent at its strength and takes the pointwise
    /// maximum over the output grid.
    ///
    /// Rules sharing a consequent term collapse to that term clipped at their
    /// largest strength; `max(min(s1, mu), min(s2, mu)) == min(max(s1, s2), mu)`
    /// exactly, so this is the rule-by-rule composition.
    ///
    /// # Panics
    /// If `strengths.len()` differs from the rule count.
    pub fn aggregate(&self, strengths: &[f64]) -> FuzzyOutputSet {
        assert_eq!(strengths.len(), self.compiled.len(), "one strength per rule");
        let terms = self.output.terms();
        let mut level = vec![0.0f64; terms.len()];
        for (rule, &s) in self.compiled.iter().zip(strengths) {
            level[rule.consequent] = level[rule.consequent].max(s.clamp(0.0, 1.0));
        }
        let (lo, hi) = self.output.domain();
        let n = self.resolution;
        let degrees = (0..n)
            .map(|i| {
                let x = grid_point(lo, hi, n, i);
                terms
                    .iter()
                    .zip(&level)
                    .filter(|(_, &s)| s > 0.0)
                    .map(|(t, &s)| t.mf.eval(x).min(s))
                    .fold(0.0, f64::max)
            })
            .collect();
        FuzzyOutputSet { variable: self.output.name().to_string(), lo, hi, degrees }
    }

    pub fn infer(&self, inputs: &CrispInputs) -> Result<FuzzyOutputSet, FuzzyError> {
        if self.rules.is_empty() {
            return Err(FuzzyError::EmptyRuleBase { system: self.name.clone() });
        }
        Ok(self.aggregate(&self.rule_strengths(inputs)?))
    }

    /// Full pipeline: fuzzify, infer, defuzzify, label.
    pub fn evaluate(&self, inputs: &CrispInputs) -> Result<FlatEvaluation, FuzzyError> {
        if self.rules.is_empty() {
            return Err(FuzzyError::EmptyRuleBase { system: self.name.clone() });
        }
        let strengths = self.rule_strengths(inputs)?;
        let crisp = self.aggregate(&strengths).defuzzify_centroid()?;
        let fired = strengths
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0.0)
            .map(|(index, &strength)| FiredRule { index, strength })
            .collect();
        Ok(FlatEvaluation { crisp, label: self.output.label(crisp).to_string(), fired })
    }
}

fn crisp_value(inputs: &CrispInputs, name: &str) -> Result<f64, FuzzyError> {
    inputs.get(name).copied().ok_or_else(|| FuzzyError::MissingInput { variable: name.into() })
}

fn compile_rule(
    rule: &Rule,
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
) -> Result<CompiledRule, FuzzyError> {
    if rule.antecedents.is_empty() {
        return Err(FuzzyError::NoAntecedents);
    }
    let mut antecedents = Vec::with_capacity(rule.antecedents.len());
    for clause in &rule.antecedents {
        let var = inputs
            .iter()
            .position(|v| v.name() == clause.variable)
            .ok_or_else(|| FuzzyError::UnknownVariable { variable: clause.variable.clone() })?;
        if antecedents.iter().any(|&(v, _)| v == var) {
            return Err(FuzzyError::RepeatedAntecedent { variable: clause.variable.clone() });
        }
        let term = inputs[var].term_index(&clause.term).ok_or_else(|| FuzzyError::UnknownTerm {
            variable: clause.variable.clone(),
            term: clause.term.clone(),
        })?;
        antecedents.push((var, term));
    }
    if rule.consequent.variable != output.name() {
        return Err(FuzzyError::ConsequentNotOutput {
            variable: rule.consequent.variable.clone(),
            output: output.name().into(),
        });
    }
    let consequent = output.term_index(&rule.consequent.term).ok_or_else(|| FuzzyError::UnknownTerm {
        variable: rule.consequent.variable.clone(),
        term: rule.consequent.term.clone(),
    })?;
    Ok(CompiledRule { antecedents, consequent })
}

/// `i`-th of `n` equispaced points spanning exactly `[lo, hi]`.
pub fn grid_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// Output fuzzy set sampled on an equispaced grid over the output domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyOutputSet {
    pub variable: String,
    pub lo: f64,
    pub hi: f64,
    pub degrees: Vec<f64>,
}

impl FuzzyOutputSet {
    pub fn resolution(&self) -> usize {
        self.degrees.len()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.degrees.len();
        self.degrees.iter().enumerate().map(move |(i, &d)| (grid_point(self.lo, self.hi, n, i), d))
    }

    /// Centroid of the sampled curve.
    ///
    /// Samples are weighted with the trapezoid rule (half weight on the two
    /// grid endpoints), which keeps a full-height shoulder such as
    /// `tri(0, 0, 5)` within 1e-5 of its analytic centroid at 1001 samples.
    pub fn defuzzify_centroid(&self) -> Result<f64, FuzzyError> {
        let n = self.degrees.len();
        let (mut num, mut den) = (0.0, 0.0);
        for (i, (x, mu)) in self.points().enumerate() {
            let w = if i == 0 || i + 1 == n { 0.5 * mu } else { mu };
            num += w * x;
            den += w;
        }
        if den <= 0.0 {
            return Err(FuzzyError::EmptyOutput { variable: self.variable.clone() });
        }
        Ok((num / den).clamp(self.lo, self.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiredRule {
    /// Position in the system's rule base.
    pub index: usize,
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatEvaluation {
    pub crisp: f64,
    pub label: String,
    pub fired: Vec<FiredRule>,
}
