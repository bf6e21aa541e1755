use crate::error::FuzzyError;
use crate::membership::MembershipFunction;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableRole {
    Input,
    Intermediate,
    Output,
}

impl fmt::Display for VariableRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariableRole::Input => "input",
            VariableRole::Intermediate => "intermediate",
            VariableRole::Output => "output",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub mf: MembershipFunction,
}

impl Term {
    pub fn new(name: impl Into<String>, mf: MembershipFunction) -> Self {
        Term { name: name.into(), mf }
    }
}

/// A named quantity over a closed interval, partitioned into ordered terms.
///
/// Term order carries meaning (`Weak < Medium < Good`): rule generation and
/// label tie-breaking both use it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    name: String,
    lo: f64,
    hi: f64,
    terms: Vec<Term>,
    role: VariableRole,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        terms: Vec<Term>,
        role: VariableRole,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::InvalidDomain { variable: name, lo, hi });
        }
        if terms.len() < 2 {
            return Err(FuzzyError::TooFewTerms { variable: name, count: terms.len() });
        }
        for (i, term) in terms.iter().enumerate() {
            if terms[..i].iter().any(|t| t.name == term.name) {
                return Err(FuzzyError::DuplicateTerm { variable: name, term: term.name.clone() });
            }
            let inside = term.mf.breakpoints().iter().all(|&p| p >= lo && p <= hi);
            if !term.mf.is_well_formed() || !inside {
                return Err(FuzzyError::InvalidBreakpoints {
                    variable: name,
                    term: term.name.clone(),
                });
            }
        }
        Ok(LinguisticVariable { name, lo, hi, terms, role })
    }

    /// `names.len()` triangles with peaks spread evenly over `[lo, hi]`:
    /// the first and last terms are shoulders, and the family is a strong
    /// partition.
    pub fn uniform_triangles(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        names: &[&str],
        role: VariableRole,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if names.len() < 2 {
            return Err(FuzzyError::TooFewTerms { variable: name, count: names.len() });
        }
        let last = (names.len() - 1) as f64;
        let peak = |i: usize| lo + (hi - lo) * i as f64 / last;
        let terms = names
            .iter()
            .enumerate()
            .map(|(i, term)| {
                let left = if i == 0 { lo } else { peak(i - 1) };
                let right = if i + 1 == names.len() { hi } else { peak(i + 1) };
                Term::new(*term, MembershipFunction::triangular(left, peak(i), right))
            })
            .collect();
        Self::new(name, lo, hi, terms, role)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn role(&self) -> VariableRole {
        self.role
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == term)
    }

    /// Copy of this variable under another name and role.
    pub fn renamed(&self, name: impl Into<String>, role: VariableRole) -> Self {
        LinguisticVariable { name: name.into(), role, ..self.clone() }
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// One degree per term. Out-of-domain values are clamped first.
    pub fn fuzzify(&self, x: f64) -> Vec<f64> {
        let x = self.clamp(x);
        self.terms.iter().map(|t| t.mf.eval(x)).collect()
    }

    /// Term with the highest membership at `x`; ties go to the earlier term.
    pub fn label(&self, x: f64) -> &str {
        let degrees = self.fuzzify(x);
        let mut best = 0;
        for (i, &d) in degrees.iter().enumerate().skip(1) {
            if d > degrees[best] {
                best = i;
            }
        }
        &self.terms[best].name
    }
}
