use thiserror::Error;

/// Errors raised while building or evaluating a flat fuzzy system.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("variable `{variable}` has an invalid domain [{lo}, {hi}]")]
    InvalidDomain { variable: String, lo: f64, hi: f64 },
    #[error("variable `{variable}` needs at least 2 terms, found {count}")]
    TooFewTerms { variable: String, count: usize },
    #[error("variable `{variable}` declares term `{term}` twice")]
    DuplicateTerm { variable: String, term: String },
    #[error("term `{variable}.{term}` has breakpoints that are unordered or outside the domain")]
    InvalidBreakpoints { variable: String, term: String },
    #[error("system `{system}` declares variable `{variable}` twice")]
    DuplicateVariable { system: String, variable: String },
    #[error("unknown variable `{variable}`")]
    UnknownVariable { variable: String },
    #[error("variable `{variable}` has no term `{term}`")]
    UnknownTerm { variable: String, term: String },
    #[error("rule has no antecedents")]
    NoAntecedents,
    #[error("variable `{variable}` appears more than once in a rule antecedent")]
    RepeatedAntecedent { variable: String },
    #[error("rule consequent `{variable}` is not the system output `{output}`")]
    ConsequentNotOutput { variable: String, output: String },
    #[error("missing input `{variable}`")]
    MissingInput { variable: String },
    #[error("system `{system}` has an empty rule base")]
    EmptyRuleBase { system: String },
    #[error("no rule fired for output `{variable}`; the fuzzy output set is empty")]
    EmptyOutput { variable: String },
    #[error("output resolution must be at least 2 samples, got {0}")]
    InvalidResolution(usize),
}
