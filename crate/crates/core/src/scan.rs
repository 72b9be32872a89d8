//! Enumeration of parameter quadruples up to a bound on `v`.

use std::collections::BTreeMap;
use std::fmt;

use crate::srg_params::{AbelianVerdict, FeasibilityVerdict, Rule, SrgParams};

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub params: SrgParams<i64>,
    pub verdict: FeasibilityVerdict,
}

impl ScanEntry {
    pub fn abelian_impossible(&self) -> bool {
        self.verdict.abelian == AbelianVerdict::Impossible
    }

    pub fn flags(&self) -> Vec<&'static str> {
        let v = &self.verdict;
        let mut out = Vec::new();
        if v.trivial {
            out.push("trivial");
        }
        out.push(if v.conference { "conference" } else { "type-ii" });
        if self.abelian_impossible() {
            out.push("abelian-impossible");
        }
        if v.genuinely_nonabelian_candidate {
            out.push("genuinely-nonabelian-candidate");
        }
        out
    }
}

impl fmt::Display for ScanEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.params, self.flags().join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub v_max: i64,
    /// Quadruples passing the counting, conference/type II and multiplicity filters.
    pub feasible: Vec<ScanEntry>,
    /// Rejected quadruples with the first filter that failed.
    pub rejected: Vec<(SrgParams<i64>, Rule)>,
}

impl ScanResult {
    pub fn find(&self, v: i64, k: i64, lambda: i64, mu: i64) -> Option<&ScanEntry> {
        let p = SrgParams::from_i64(v, k, lambda, mu);
        self.feasible.iter().find(|e| e.params == p)
    }

    pub fn rejected_by(&self, p: &SrgParams<i64>) -> Option<Rule> {
        self.rejected.iter().find(|(q, _)| q == p).map(|&(_, r)| r)
    }

    /// Rejection counts keyed by the rule's name.
    pub fn rejection_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (_, r) in &self.rejected {
            *out.entry(r.to_string()).or_insert(0) += 1;
        }
        out
    }
}

/// Every `(v, k, λ, μ)` with `3 ≤ v ≤ v_max`, `1 ≤ k ≤ v − 2`, `0 ≤ λ < k`,
/// `1 ≤ μ ≤ k`, run through the feasibility filters in order.
pub fn scan(v_max: i64) -> ScanResult {
    let mut feasible = Vec::new();
    let mut rejected = Vec::new();
    for v in 3..=v_max {
        for k in 1..=v - 2 {
            for lambda in 0..k {
                for mu in 1..=k {
                    let params = SrgParams::from_i64(v, k, lambda, mu);
                    let verdict = params.feasibility();
                    if verdict.feasible() {
                        feasible.push(ScanEntry { params, verdict });
                    } else {
                        let rule = verdict.first_failure().map_or(Rule::Multiplicity, |r| r.rule);
                        rejected.push((params, rule));
                    }
                }
            }
        }
    }
    ScanResult { v_max, feasible, rejected }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan() {
        let r = scan(30);
        let t7 = r.find(21, 10, 5, 4).unwrap();
        assert!(t7.abelian_impossible());
        let g = r.find(27, 10, 1, 5).unwrap();
        assert!(g.verdict.genuinely_nonabelian_candidate);
        assert!(g.flags().contains(&"abelian-impossible"));
        let lattice = r.find(16, 6, 2, 2).unwrap();
        assert_eq!(lattice.verdict.abelian, AbelianVerdict::Unknown);
        assert!(r.find(13, 6, 2, 3).unwrap().verdict.conference);
        assert!(r.find(5, 2, 0, 1).unwrap().verdict.conference);
        // Petersen: v/sqrt(delta) = 10/3.
        assert!(r.find(10, 3, 0, 1).unwrap().abelian_impossible());
    }

    #[test]
    fn first_failing_filter() {
        let r = scan(12);
        assert_eq!(r.rejected_by(&SrgParams::from_i64(10, 3, 1, 1)), Some(Rule::FirstCondition));
        assert!(r.rejected.iter().any(|&(_, rule)| rule != Rule::FirstCondition));
        assert!(r.rejected_by(&SrgParams::from_i64(9, 4, 1, 2)).is_none());
        let counts = r.rejection_counts();
        assert!(counts["first-condition"] > 0);
        assert_eq!(r.feasible.len() + r.rejected.len(), (3..=12).map(|v: i64| (1..=v - 2).map(|k| k * k).sum::<i64>()).sum::<i64>() as usize);
    }

    #[test]
    fn every_feasible_entry_satisfies_the_counting_identity() {
        for e in scan(40).feasible {
            let SrgParams { v, k, lambda, mu } = e.params;
            assert_eq!(k * (k - lambda - 1), (v - k - 1) * mu);
        }
    }
}
