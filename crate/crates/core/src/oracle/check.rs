use std::collections::BTreeSet;
use std::fmt;

use crate::kb::KnowledgeBase;
use crate::model::{Fact, StatStatement, TermId};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub fact: Fact,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.fact, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub violations: Vec<Violation>,
    /// Facts that had enumerations available and were actually checked.
    pub checked: usize,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks declared statistics and subset facts against the enumerated
/// extensions. Facts mentioning a class without an enumeration are skipped.
pub fn check_extensional(kb: &KnowledgeBase) -> ConsistencyReport {
    let mut report = ConsistencyReport::default();

    for stat in kb.stats() {
        let (Some(targets), Some(references)) =
            (kb.extension(&stat.target), kb.extension(&stat.reference))
        else {
            continue;
        };
        report.checked += 1;
        if let Some(v) = check_stat(&stat, targets, references) {
            report.violations.push(v);
        }
    }

    for (sub, sup) in kb.subset_facts() {
        let (Some(small), Some(large)) = (kb.extension(sub), kb.extension(sup)) else {
            continue;
        };
        report.checked += 1;
        let missing: Vec<&str> = small.difference(large).map(TermId::as_str).collect();
        if !missing.is_empty() {
            report.violations.push(Violation {
                fact: Fact::Subset {
                    sub: sub.clone(),
                    sup: sup.clone(),
                },
                expected: format!("every member of {sub} in {sup}"),
                actual: format!("not in {sup}: {}", missing.join(" ")),
            });
        }
    }
    report
}

fn check_stat(
    stat: &StatStatement,
    targets: &BTreeSet<TermId>,
    references: &BTreeSet<TermId>,
) -> Option<Violation> {
    let total = references.len();
    if total == 0 {
        return Some(Violation {
            fact: Fact::Stat(stat.clone()),
            expected: stat.interval.to_string(),
            actual: format!("no frequency: {} has no members", stat.reference),
        });
    }
    let hits = references.intersection(targets).count();
    let frequency = Rational::new(hits as i64, total as i64).expect("nonzero total");
    (!stat.interval.contains(frequency)).then(|| Violation {
        fact: Fact::Stat(stat.clone()),
        expected: stat.interval.to_string(),
        actual: format!("{frequency} ({hits} of {total})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_kb;

    fn balls(prefix: &str, n: usize) -> String {
        (0..n).map(|i| format!("{prefix}{i} ")).collect()
    }

    #[test]
    fn room_of_fifty_black_balls() {
        let text = format!(
            "class Room Black\nterm {all}\nextensional Room {{ {all} }}\nextensional Black {{ {black} }}\nstat Black Room = 1/2\n",
            all = balls("b", 100),
            black = balls("b", 50),
        );
        let report = check_extensional(&parse_kb(&text).unwrap());
        assert!(report.is_consistent(), "{:?}", report.violations);
        assert_eq!(report.checked, 1);
    }

    #[test]
    fn urn_counts_are_checked() {
        let good = "class UrnA Black\nterm w1 k1 k2 k3 k4\nextensional UrnA { w1 k1 k2 k3 k4 }\nextensional Black { k1 k2 k3 k4 }\nstat Black UrnA = 4/5\n";
        assert!(check_extensional(&parse_kb(good).unwrap()).is_consistent());

        let bad = good.replace("= 4/5", "= 1/2");
        let report = check_extensional(&parse_kb(&bad).unwrap());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].expected, "1/2");
        assert_eq!(report.violations[0].actual, "4/5 (4 of 5)");
    }

    #[test]
    fn subsets_and_empty_references() {
        let text = "class A B C\nterm x y\nextensional A { x y }\nextensional B { x }\nextensional C { }\nsubset A B\nstat A C = 1/2\n";
        let report = check_extensional(&parse_kb(text).unwrap());
        assert_eq!(report.checked, 2);
        assert_eq!(report.violations.len(), 2);
        assert!(report
            .violations
            .iter()
            .any(|v| v.actual.contains("not in B: y")));
        assert!(report
            .violations
            .iter()
            .any(|v| v.actual.contains("no members")));
    }

    #[test]
    fn nothing_to_check() {
        let report = check_extensional(&parse_kb("class A B\nstat A B = 1/2").unwrap());
        assert!(report.is_consistent());
        assert_eq!(report.checked, 0);
    }
}
