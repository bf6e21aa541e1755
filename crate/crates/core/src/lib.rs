//! Flat and hierarchical Mamdani fuzzy systems.
//!
//! * [`system`]: linguistic variables, rule bases, and the
//!   fuzzify / infer / defuzzify pipeline of one flat system.
//! * [`hierarchy`]: DAGs of two-input subsystems, layer assignment, and
//!   rule-count analytics (`m^n` flat vs `(n - 1) m^2` hierarchical).
//! * [`interpretability`]: per-subsystem base indices and their
//!   layer-weighted aggregation.
//! * [`dsl`]: the `.hfs` definition language.
//! * [`cprs`]: the bundled career-path recommendation case study.
//! * [`batch`]: grid and batch evaluation, parallel with the `parallel` feature.

pub mod batch;
pub mod cprs;
pub mod dsl;
pub mod error;
pub mod hierarchy;
pub mod interpretability;
pub mod membership;
pub mod rule;
pub mod rulegen;
pub mod system;
pub mod variable;

pub use error::FuzzyError;
pub use hierarchy::{Connection, EvaluationTrace, HierarchicalSystem, HierarchyError};
pub use membership::MembershipFunction;
pub use rule::{Clause, Rule};
pub use system::{CrispInputs, FlatEvaluation, FlatSystem, FuzzyOutputSet};
pub use variable::{LinguisticVariable, Term, VariableRole};
