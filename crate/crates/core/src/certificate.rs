//! Certificates: weighted sets of valid strategies and the bound they give.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use crate::graph::{Graph, Vertex};
use crate::rational::{to_text, Rational};
use crate::strategy::{
    combine, covering_bound, validate_attachments, validate_structural, CoveringBound, Strategy, StrategyKind,
    WeightFunction,
};
use crate::validity::{verify_strategy_bruteforce, Validity};
use crate::{Error, SolverBudget};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateEntry {
    pub strategy: Strategy,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub graph: Graph,
    pub root: Vertex,
    pub entries: Vec<CertificateEntry>,
    pub claimed_bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Shape checks only; explicit strategies must be marked trusted.
    Structural,
    /// Shape checks, plus exhaustive checks of explicit strategies.
    Bruteforce,
}

impl VerifyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyMode::Structural => "structural",
            VerifyMode::Bruteforce => "bruteforce",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    /// Passed its shape check.
    Structural,
    /// Passed an exhaustive check.
    Bruteforce,
    /// Accepted as trusted, not checked.
    Trusted,
    Invalid(String),
    BudgetExceeded,
}

impl EntryStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryStatus::Structural => "valid_structural",
            EntryStatus::Bruteforce => "valid_bruteforce",
            EntryStatus::Trusted => "trusted_unchecked",
            EntryStatus::Invalid(_) => "invalid",
            EntryStatus::BudgetExceeded => "budget_exceeded",
        }
    }

    fn accepted(&self) -> bool {
        matches!(self, EntryStatus::Structural | EntryStatus::Bruteforce | EntryStatus::Trusted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub index: usize,
    pub kind: StrategyKind,
    pub status: EntryStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Confirmed,
    Invalid(String),
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub mode: VerifyMode,
    pub entries: Vec<EntryReport>,
    pub combined: Option<WeightFunction>,
    pub covering: Option<CoveringBound>,
    pub claimed_bound: u64,
    pub outcome: Outcome,
}

impl CertificateReport {
    pub fn is_confirmed(&self) -> bool {
        self.outcome == Outcome::Confirmed
    }

    pub fn bound(&self) -> Option<u64> {
        self.covering.as_ref().map(|c| c.bound)
    }
}

impl Certificate {
    /// The nonnegative combination of all entries.
    pub fn combined(&self) -> Result<WeightFunction, Error> {
        let pairs: Vec<(&WeightFunction, Rational)> =
            self.entries.iter().map(|e| (&e.strategy.weight, e.coefficient.clone())).collect();
        combine(&pairs)
    }
}

pub fn verify_certificate(c: &Certificate, mode: VerifyMode, budget: &SolverBudget) -> CertificateReport {
    let mut report = CertificateReport {
        mode,
        entries: Vec::new(),
        combined: None,
        covering: None,
        claimed_bound: c.claimed_bound,
        outcome: Outcome::Confirmed,
    };
    let fail = |mut r: CertificateReport, why: String| {
        r.outcome = Outcome::Invalid(why);
        r
    };
    if c.root >= c.graph.n() {
        return fail(report, format!("root {} is not a vertex", c.root));
    }
    if c.entries.is_empty() {
        return fail(report, "certificate has no entries".into());
    }
    let mut first_problem: Option<String> = None;
    let mut budget_hit = false;
    for (index, e) in c.entries.iter().enumerate() {
        let status = entry_status(&c.graph, c.root, e, mode, budget);
        if !status.accepted() && first_problem.is_none() {
            match &status {
                EntryStatus::BudgetExceeded => budget_hit = true,
                EntryStatus::Invalid(why) => first_problem = Some(format!("entry {index}: {why}")),
                _ => {}
            }
        }
        report.entries.push(EntryReport { index, kind: e.strategy.kind, status });
    }
    match c.combined() {
        Ok(w) => {
            match covering_bound(&w) {
                Ok(cb) => {
                    if cb.bound != c.claimed_bound && first_problem.is_none() {
                        first_problem =
                            Some(format!("claimed bound {} but the weights give {}", c.claimed_bound, cb.bound));
                    }
                    report.covering = Some(cb);
                }
                Err(e) => first_problem = first_problem.or(Some(e.to_string())),
            }
            report.combined = Some(w);
        }
        Err(e) => first_problem = first_problem.or(Some(e.to_string())),
    }
    report.outcome = match (first_problem, budget_hit) {
        (Some(why), _) => Outcome::Invalid(why),
        (None, true) => Outcome::BudgetExceeded,
        (None, false) => Outcome::Confirmed,
    };
    report
}

fn entry_status(g: &Graph, root: Vertex, e: &CertificateEntry, mode: VerifyMode, budget: &SolverBudget) -> EntryStatus {
    let s = &e.strategy;
    if s.weight.n() != g.n() {
        return EntryStatus::Invalid(format!("weights cover {} vertices, graph has {}", s.weight.n(), g.n()));
    }
    if s.root() != root {
        return EntryStatus::Invalid(format!("rooted at {} instead of {root}", s.root()));
    }
    if !e.coefficient.is_positive() {
        return EntryStatus::Invalid(format!("coefficient {} is not positive", to_text(&e.coefficient)));
    }
    if s.kind != StrategyKind::Explicit {
        return match validate_structural(g, s) {
            Ok(()) => EntryStatus::Structural,
            Err(v) => EntryStatus::Invalid(v.to_string()),
        };
    }
    if let Err(v) = validate_attachments(g, s) {
        return EntryStatus::Invalid(v.to_string());
    }
    match mode {
        VerifyMode::Structural if s.trusted => EntryStatus::Trusted,
        VerifyMode::Structural => EntryStatus::Invalid("explicit strategy needs bruteforce mode".into()),
        VerifyMode::Bruteforce => match verify_strategy_bruteforce(g, s, budget) {
            Ok(Validity::Valid) => EntryStatus::Bruteforce,
            Ok(Validity::Invalid(p)) => {
                EntryStatus::Invalid(format!("unsolvable configuration {:?} violates it", p.counts()))
            }
            Ok(Validity::BudgetExceeded) if s.trusted => EntryStatus::Trusted,
            Ok(Validity::BudgetExceeded) => EntryStatus::BudgetExceeded,
            Err(Error::TooLarge(_)) if s.trusted => EntryStatus::Trusted,
            Err(e) => EntryStatus::Invalid(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cycle;
    use crate::rational::int;
    use crate::strategy::WeightFunction;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn c5_certificate(claimed: u64) -> Certificate {
        let g = cycle(5).unwrap();
        let a = WeightFunction::new(0, vec![int(0), int(4), int(2), int(1), int(0)]).unwrap();
        let b = WeightFunction::new(0, vec![int(0), int(0), int(1), int(2), int(4)]).unwrap();
        let pa = BTreeMap::from([(1, 0), (2, 1), (3, 2)]);
        let pb = BTreeMap::from([(4, 0), (3, 4), (2, 3)]);
        Certificate {
            graph: g,
            root: 0,
            entries: vec![
                CertificateEntry { strategy: Strategy::tree(StrategyKind::TreeBasic, a, pa), coefficient: int(1) },
                CertificateEntry { strategy: Strategy::tree(StrategyKind::TreeBasic, b, pb), coefficient: int(1) },
            ],
            claimed_bound: claimed,
        }
    }

    #[test]
    fn five_cycle_certificate() {
        let r = verify_certificate(&c5_certificate(5), VerifyMode::Structural, &SolverBudget::default());
        assert!(r.is_confirmed(), "{r:?}");
        let cb = r.covering.unwrap();
        assert_eq!((cb.total, cb.min, cb.bound), (int(14), int(3), 5));
    }

    #[test]
    fn wrong_claim() {
        let r = verify_certificate(&c5_certificate(4), VerifyMode::Structural, &SolverBudget::default());
        assert!(matches!(r.outcome, Outcome::Invalid(_)));
    }

    #[test]
    fn explicit_needs_bruteforce() {
        let mut c = c5_certificate(5);
        c.entries[0].strategy.kind = StrategyKind::Explicit;
        c.entries[0].strategy.support = crate::strategy::Support::Explicit { template: None };
        let r = verify_certificate(&c, VerifyMode::Structural, &SolverBudget::default());
        assert!(!r.is_confirmed());
        let r = verify_certificate(&c, VerifyMode::Bruteforce, &SolverBudget::default());
        assert!(r.is_confirmed(), "{r:?}");
        assert_eq!(r.entries[0].status, EntryStatus::Bruteforce);
    }
}
