use super::{Connection, HierarchicalSystem, HierarchyError};
use crate::system::FlatSystem;
use crate::variable::{LinguisticVariable, VariableRole};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionPlan {
    /// `(v1, v2) -> y1`, `(y1, v3) -> y2`, ...: `n - 1` layers.
    Serial,
    /// Pair neighbours level by level, carrying an odd one out upward.
    Balanced,
}

/// Splits `inputs` into `n - 1` two-input subsystems with empty rule bases.
///
/// Subsystems are named `FLS1..`, intermediates `y1..` (copies of
/// `intermediate` under the new name); the last subsystem produces `output`.
pub fn decompose_pairwise(
    name: &str,
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
    plan: DecompositionPlan,
    intermediate: &LinguisticVariable,
) -> Result<HierarchicalSystem, HierarchyError> {
    if inputs.len() < 2 {
        return Err(HierarchyError::Domain(format!(
            "pairwise decomposition needs at least 2 variables, got {}",
            inputs.len()
        )));
    }
    // each node: the variable it carries and the subsystem producing it
    let mut frontier: Vec<(LinguisticVariable, Option<String>)> =
        inputs.iter().map(|v| (v.renamed(v.name(), VariableRole::Input), None)).collect();
    let total = inputs.len() - 1;
    let mut subsystems = Vec::with_capacity(total);
    let mut connections = Vec::new();

    let mut combine = |left: (LinguisticVariable, Option<String>),
                       right: (LinguisticVariable, Option<String>),
                       subsystems: &mut Vec<FlatSystem>|
     -> Result<(LinguisticVariable, Option<String>), HierarchyError> {
        let k = subsystems.len() + 1;
        let sub = format!("FLS{k}");
        let out = if k == total {
            output.renamed(output.name(), VariableRole::Output)
        } else {
            intermediate.renamed(format!("y{k}"), VariableRole::Output)
        };
        let mut ins = Vec::with_capacity(2);
        for (var, producer) in [left, right] {
            if let Some(p) = producer {
                connections.push(Connection::new(p, sub.clone(), var.name()));
                ins.push(var.renamed(var.name(), VariableRole::Intermediate));
            } else {
                ins.push(var);
            }
        }
        let system = FlatSystem::new(sub.clone(), ins, out.clone(), vec![])
            .map_err(|source| HierarchyError::Subsystem { subsystem: sub.clone(), source })?;
        subsystems.push(system);
        Ok((out, Some(sub)))
    };

    match plan {
        DecompositionPlan::Serial => {
            let mut rest = frontier.into_iter();
            let mut acc = rest.next().expect("at least two inputs");
            for next in rest {
                acc = combine(acc, next, &mut subsystems)?;
            }
        }
        DecompositionPlan::Balanced => {
            while frontier.len() > 1 {
                let mut next = Vec::with_capacity(frontier.len().div_ceil(2));
                let mut it = frontier.into_iter();
                while let Some(left) = it.next() {
                    match it.next() {
                        Some(right) => next.push(combine(left, right, &mut subsystems)?),
                        None => next.push(left),
                    }
                }
                frontier = next;
            }
        }
    }

    let externals = inputs.iter().map(|v| v.name().to_string()).collect();
    HierarchicalSystem::build(name, subsystems, connections, externals, vec![output.name().to_string()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::rule_count_actual;
    use crate::rulegen::generate_rules_mean;

    const SKILL: [&str; 3] = ["Weak", "Medium", "Good"];

    fn vars(n: usize, m: usize) -> Vec<LinguisticVariable> {
        let names: Vec<String> = (0..m).map(|i| format!("t{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        (1..=n)
            .map(|i| LinguisticVariable::uniform_triangles(format!("Q{i}"), 0.0, 10.0, &names, VariableRole::Input).unwrap())
            .collect()
    }

    fn skills() -> Vec<LinguisticVariable> {
        (1..=5)
            .map(|i| LinguisticVariable::uniform_triangles(format!("Q{i}"), 0.0, 10.0, &SKILL, VariableRole::Input).unwrap())
            .collect()
    }

    fn out() -> LinguisticVariable {
        LinguisticVariable::uniform_triangles("out", 0.0, 10.0, &SKILL, VariableRole::Output).unwrap()
    }

    #[test]
    fn serial_over_five_has_four_layers() {
        let q = skills();
        let h = decompose_pairwise("s", &q, &out(), DecompositionPlan::Serial, &q[0]).unwrap();
        assert_eq!(h.subsystems().len(), 4);
        assert_eq!(h.layers(), &[1, 2, 3, 4]);
    }

    #[test]
    fn balanced_over_five_matches_the_case_study_shape() {
        let q = skills();
        let h = decompose_pairwise("b", &q, &out(), DecompositionPlan::Balanced, &q[0]).unwrap();
        assert_eq!(h.layers(), &[1, 1, 2, 3]);
        let inputs: Vec<Vec<&str>> =
            h.subsystems().iter().map(|s| s.inputs().iter().map(|v| v.name()).collect()).collect();
        assert_eq!(inputs, vec![vec!["Q1", "Q2"], vec!["Q3", "Q4"], vec!["y1", "y2"], vec!["y3", "Q5"]]);
    }

    #[test]
    fn two_variables_make_one_subsystem() {
        let q = skills();
        for plan in [DecompositionPlan::Serial, DecompositionPlan::Balanced] {
            let h = decompose_pairwise("p", &q[..2], &out(), plan, &q[0]).unwrap();
            assert_eq!(h.subsystems().len(), 1);
            assert_eq!(h.subsystems()[0].output().name(), "out");
        }
    }

    #[test]
    fn too_few_variables() {
        let q = skills();
        assert!(matches!(
            decompose_pairwise("p", &q[..1], &out(), DecompositionPlan::Serial, &q[0]),
            Err(HierarchyError::Domain(_))
        ));
    }

    #[test]
    fn complete_rule_bases_total_n_minus_one_m_squared() {
        for n in 2..=7usize {
            for m in 2..=4usize {
                let q = vars(n, m);
                for plan in [DecompositionPlan::Serial, DecompositionPlan::Balanced] {
                    let h = decompose_pairwise("x", &q, &q[0].renamed("out", VariableRole::Output), plan, &q[0])
                        .unwrap()
                        .with_subsystem_rules(|s| generate_rules_mean(s.inputs(), s.output()))
                        .unwrap();
                    assert_eq!(h.subsystems().len(), n - 1);
                    assert_eq!(rule_count_actual(&h).total, (n - 1) * m * m);
                }
            }
        }
    }
}
