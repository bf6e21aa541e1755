use super::HierarchicalSystem;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleCountError {
    #[error("{0}")]
    Domain(String),
    #[error("rule count overflows 128 bits for n = {n}, m = {m}")]
    Overflow { n: u32, m: u64 },
}

/// Rules in a complete flat rule base: `m^n`.
pub fn rule_count_flat(n: u32, m: u64) -> Result<u128, RuleCountError> {
    if n < 1 {
        return Err(RuleCountError::Domain(format!("flat rule count needs n >= 1, got n = {n}")));
    }
    if m < 2 {
        return Err(RuleCountError::Domain(format!("rule counts need m >= 2 terms, got m = {m}")));
    }
    (m as u128).checked_pow(n).ok_or(RuleCountError::Overflow { n, m })
}

/// Rules in a serial two-input hierarchy with complete rule bases: `(n - 1) m^2`.
pub fn rule_count_serial_hfs(n: u32, m: u64) -> Result<u128, RuleCountError> {
    if n < 2 {
        return Err(RuleCountError::Domain(format!("serial hierarchy rule count needs n >= 2, got n = {n}")));
    }
    if m < 2 {
        return Err(RuleCountError::Domain(format!("rule counts need m >= 2 terms, got m = {m}")));
    }
    (m as u128)
        .checked_mul(m as u128)
        .and_then(|sq| sq.checked_mul((n - 1) as u128))
        .ok_or(RuleCountError::Overflow { n, m })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsystemRuleCount {
    pub subsystem: String,
    pub layer: usize,
    pub rules: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleCounts {
    pub per_subsystem: Vec<SubsystemRuleCount>,
    pub total: usize,
    /// Subsystems whose rule base is empty.
    pub empty: Vec<String>,
}

/// Rules actually present in each subsystem.
pub fn rule_count_actual(hfs: &HierarchicalSystem) -> RuleCounts {
    let per_subsystem: Vec<_> = hfs
        .subsystems()
        .iter()
        .zip(hfs.layers())
        .map(|(s, &layer)| SubsystemRuleCount { subsystem: s.name().to_string(), layer, rules: s.rules().len() })
        .collect();
    RuleCounts {
        total: per_subsystem.iter().map(|c| c.rules).sum(),
        empty: per_subsystem.iter().filter(|c| c.rules == 0).map(|c| c.subsystem.clone()).collect(),
        per_subsystem,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        assert_eq!(rule_count_flat(3, 3), Ok(27));
        assert_eq!(rule_count_serial_hfs(3, 3), Ok(18));
        assert_eq!(rule_count_flat(5, 3), Ok(243));
        assert_eq!(rule_count_serial_hfs(5, 3), Ok(36));
        assert_eq!(rule_count_flat(2, 4), Ok(16));
        assert_eq!(rule_count_serial_hfs(2, 3), rule_count_flat(2, 3));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(rule_count_serial_hfs(1, 3), Err(RuleCountError::Domain(_))));
        assert!(matches!(rule_count_flat(0, 3), Err(RuleCountError::Domain(_))));
        assert!(matches!(rule_count_flat(3, 1), Err(RuleCountError::Domain(_))));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(rule_count_flat(128, 2), Err(RuleCountError::Overflow { n: 128, m: 2 }));
        assert_eq!(rule_count_flat(127, 2), Ok(1u128 << 127));
        assert!(rule_count_serial_hfs(3, u64::MAX).is_err());
    }

    #[test]
    fn flat_dominates_serial_exhaustively() {
        for n in 2..=12u32 {
            for m in 2..=6u64 {
                let flat = rule_count_flat(n, m).unwrap();
                let hfs = rule_count_serial_hfs(n, m).unwrap();
                assert!(flat >= hfs, "n={n} m={m}");
                let equal = n == 2 || (n == 3 && m == 2);
                assert_eq!(flat == hfs, equal, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn serial_count_grows_by_m_squared() {
        for m in 2..=6u64 {
            for n in 2..=11u32 {
                let step = rule_count_serial_hfs(n + 1, m).unwrap() - rule_count_serial_hfs(n, m).unwrap();
                assert_eq!(step, (m * m) as u128);
            }
        }
    }
}
