use serde::{Deserialize, Serialize};
use std::fmt;

/// `<variable> is <term>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Clause { variable: variable.into(), term: term.into() }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is {}", self.variable, self.term)
    }
}

/// Conjunctive rule: `IF a is x AND b is y THEN out is z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub antecedents: Vec<Clause>,
    pub consequent: Clause,
}

impl Rule {
    pub fn new(antecedents: Vec<Clause>, consequent: Clause) -> Self {
        Rule { antecedents, consequent }
    }

    /// Shorthand for tests and hand-built systems.
    pub fn from_pairs(antecedents: &[(&str, &str)], consequent: (&str, &str)) -> Self {
        Rule {
            antecedents: antecedents.iter().map(|(v, t)| Clause::new(*v, *t)).collect(),
            consequent: Clause::new(consequent.0, consequent.1),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("IF ")?;
        for (i, clause) in self.antecedents.iter().enumerate() {
            if i > 0 {
                f.write_str(" AND ")?;
            }
            write!(f, "{clause}")?;
        }
        write!(f, " THEN {}", self.consequent)
    }
}

/// Minimum of the antecedent degrees (the AND t-norm).
pub fn firing_strength<I: IntoIterator<Item = f64>>(degrees: I) -> f64 {
    degrees.into_iter().fold(1.0, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_tnorm() {
        assert_eq!(firing_strength([0.7, 0.4]), 0.4);
        assert_eq!(firing_strength([1.0; 5]), 1.0);
        assert_eq!(firing_strength([0.9, 0.0]), 0.0);
    }

    #[test]
    fn display() {
        let r = Rule::from_pairs(&[("Q1", "Weak"), ("Q2", "Weak")], ("comb_skill1", "Weak"));
        assert_eq!(r.to_string(), "IF Q1 is Weak AND Q2 is Weak THEN comb_skill1 is Weak");
    }
}
