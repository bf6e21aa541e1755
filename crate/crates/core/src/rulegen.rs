//! Complete rule-base generation.
//!
//! The mean policy enumerates every antecedent combination (last variable
//! varying fastest) and picks the consequent whose index is the mean of the
//! antecedent term indices, rounded half down. When term counts differ, each
//! index is first normalised to `[0, 1]` and the mean is rescaled onto the
//! output's terms.

use crate::rule::{Clause, Rule};
use crate::variable::LinguisticVariable;

const TIE_EPS: f64 = 1e-9;

/// Rounds to the nearest integer, sending exact halves down.
pub fn round_half_down(value: f64) -> usize {
    let floor = value.floor();
    let frac = value - floor;
    let rounded = if frac > 0.5 + TIE_EPS { floor + 1.0 } else { floor };
    rounded.max(0.0) as usize
}

/// Consequent index for one antecedent combination.
pub fn mean_consequent(indices: &[usize], term_counts: &[usize], output_terms: usize) -> usize {
    debug_assert_eq!(indices.len(), term_counts.len());
    let uniform = term_counts.iter().all(|&m| m == output_terms);
    let target = if uniform {
        indices.iter().sum::<usize>() as f64 / indices.len() as f64
    } else {
        let mean = indices
            .iter()
            .zip(term_counts)
            .map(|(&i, &m)| i as f64 / (m - 1) as f64)
            .sum::<f64>()
            / indices.len() as f64;
        mean * (output_terms - 1) as f64
    };
    round_half_down(target).min(output_terms - 1)
}

/// One rule per antecedent combination: `Π m_v` rules for the given inputs.
pub fn generate_rules_mean(inputs: &[LinguisticVariable], output: &LinguisticVariable) -> Vec<Rule> {
    if inputs.is_empty() {
        return Vec::new();
    }
    let counts: Vec<usize> = inputs.iter().map(|v| v.terms().len()).collect();
    let total: usize = counts.iter().product();
    let mut rules = Vec::with_capacity(total);
    let mut idx = vec![0usize; inputs.len()];
    loop {
        let antecedents = inputs
            .iter()
            .zip(&idx)
            .map(|(v, &t)| Clause::new(v.name(), v.terms()[t].name.as_str()))
            .collect();
        let out = mean_consequent(&idx, &counts, output.terms().len());
        rules.push(Rule::new(antecedents, Clause::new(output.name(), output.terms()[out].name.as_str())));

        // odometer step, last position fastest
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return rules;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < counts[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variable::VariableRole;
    use std::collections::HashSet;

    fn skill(name: &str) -> LinguisticVariable {
        LinguisticVariable::uniform_triangles(name, 0.0, 10.0, &["Weak", "Medium", "Good"], VariableRole::Input)
            .unwrap()
    }

    fn answer() -> LinguisticVariable {
        LinguisticVariable::uniform_triangles("WebProgrammer", 0.0, 10.0, &["No", "Maybe", "Yes"], VariableRole::Output)
            .unwrap()
    }

    #[test]
    fn round_half_down_examples() {
        assert_eq!(round_half_down(0.5), 0);
        assert_eq!(round_half_down(1.5), 1);
        assert_eq!(round_half_down(0.6), 1);
        assert_eq!(round_half_down(1.4), 1);
        assert_eq!(round_half_down(2.0), 2);
    }

    #[test]
    fn two_inputs_give_nine_rules() {
        let out = skill("comb_skill1").renamed("comb_skill1", VariableRole::Output);
        let rules = generate_rules_mean(&[skill("Q1"), skill("Q2")], &out);
        assert_eq!(rules.len(), 9);
        assert_eq!(rules[0].to_string(), "IF Q1 is Weak AND Q2 is Weak THEN comb_skill1 is Weak");
        // (Weak, Medium): mean 0.5 rounds down
        assert_eq!(rules[1].consequent.term, "Weak");
        // (Medium, Good): mean 1.5 rounds down
        assert_eq!(rules[5].consequent.term, "Medium");
        assert_eq!(rules[8].consequent.term, "Good");
    }

    #[test]
    fn five_inputs_give_243_rules_with_all_weak_to_no() {
        let inputs: Vec<_> = (1..=5).map(|i| skill(&format!("Q{i}"))).collect();
        let rules = generate_rules_mean(&inputs, &answer());
        assert_eq!(rules.len(), 243);
        assert!(rules[0].antecedents.iter().all(|c| c.term == "Weak"));
        assert_eq!(rules[0].consequent.term, "No");
        assert_eq!(rules[242].consequent.term, "Yes");
        let distinct: HashSet<_> = rules.iter().map(|r| r.antecedents.clone()).collect();
        assert_eq!(distinct.len(), 243);
    }

    #[test]
    fn mirror_symmetry_on_tie_free_combinations() {
        let m: usize = 3;
        for k in 1..=5u32 {
            let total = m.pow(k);
            for code in 0..total {
                let idx: Vec<usize> = (0..k).map(|p| (code / m.pow(p)) % m).collect();
                let sum: usize = idx.iter().sum();
                if (2 * sum).is_multiple_of(k as usize) && (2 * sum / k as usize) % 2 == 1 {
                    continue; // exact half tie
                }
                let mirrored: Vec<usize> = idx.iter().map(|&i| m - 1 - i).collect();
                let counts = vec![m; k as usize];
                assert_eq!(
                    mean_consequent(&mirrored, &counts, m),
                    m - 1 - mean_consequent(&idx, &counts, m),
                    "{idx:?}"
                );
            }
        }
    }

    #[test]
    fn mixed_term_counts_rescale() {
        // 2-term input at its top term maps onto the top of a 3-term output
        assert_eq!(mean_consequent(&[1], &[2], 3), 2);
        assert_eq!(mean_consequent(&[0, 1], &[2, 2], 3), 1);
        assert_eq!(mean_consequent(&[0, 0, 0, 1], &[2, 2, 2, 2], 3), 0);
        assert_eq!(mean_consequent(&[1, 1], &[2, 3], 3), 1);
    }
}
