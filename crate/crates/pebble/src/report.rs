//! Serializable results of each command, and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pebbling_core::certificate::{CertificateReport, EntryStatus, Outcome};
use pebbling_core::class0::{AuditReport, Conclusion, Witness};
use pebbling_core::lp::{IlpOutcome, LpResult};
use pebbling_core::rational::to_text;
use pebbling_core::search::PebblingNumber;
use pebbling_core::solver::Solvability;
use pebbling_core::{Configuration, Vertex};
use serde::{Deserialize, Serialize};

use crate::formats::{moves_json, rational_map, CountsJson};

/// Process exit status for a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Success,
    Budget,
    Failed,
}

impl Exit {
    pub fn code(self) -> i32 {
        match self {
            Exit::Success => 0,
            Exit::Failed => 1,
            Exit::Budget => 2,
        }
    }

    /// A failure outranks running out of budget.
    pub fn worst(items: impl IntoIterator<Item = Exit>) -> Exit {
        items.into_iter().max().unwrap_or(Exit::Success)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootValue {
    pub root: Vertex,
    pub exact: bool,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiReport {
    /// `null` for the unrooted number.
    pub root: Option<Vertex>,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    pub lower: u64,
    pub upper: u64,
    /// Root of the unsolvable witness of size `lower - 1`.
    pub witness_root: Vertex,
    pub witness: CountsJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<RootValue>,
}

fn bounds(p: &PebblingNumber) -> (Vertex, u64, u64, &Configuration) {
    match p {
        PebblingNumber::Value { value, root, witness } => (*root, *value, *value, witness),
        PebblingNumber::BudgetExceeded { lower, upper, root, witness } => (*root, *lower, *upper, witness),
    }
}

impl PiReport {
    pub fn rooted(p: &PebblingNumber) -> Self {
        let (root, lower, upper, witness) = bounds(p);
        PiReport {
            root: Some(root),
            exact: lower == upper && p.value().is_some(),
            value: p.value(),
            lower,
            upper,
            witness_root: root,
            witness: CountsJson::from_configuration(witness),
            roots: Vec::new(),
        }
    }

    /// Maximum over per-root results, listed in root order. The witness
    /// comes from the first root attaining the largest lower bound.
    pub fn global(per_root: &[PebblingNumber]) -> Self {
        let roots: Vec<RootValue> = per_root
            .iter()
            .map(|p| {
                let (root, lower, upper, _) = bounds(p);
                RootValue { root, exact: p.value().is_some(), lower, upper }
            })
            .collect();
        let lower = roots.iter().map(|r| r.lower).max().unwrap_or(0);
        let upper = roots.iter().map(|r| r.upper).max().unwrap_or(0);
        let exact = roots.iter().all(|r| r.exact);
        let best = per_root.iter().find(|p| bounds(p).1 == lower).expect("at least one root");
        let (witness_root, _, _, witness) = bounds(best);
        PiReport {
            root: None,
            exact,
            value: exact.then_some(lower),
            lower,
            upper,
            witness_root,
            witness: CountsJson::from_configuration(witness),
            roots,
        }
    }

    pub fn exit(&self) -> Exit {
        if self.exact {
            Exit::Success
        } else {
            Exit::Budget
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let what = match self.root {
            Some(r) => format!("pi(G, {r})"),
            None => "pi(G)".to_string(),
        };
        if self.exact {
            let _ = writeln!(s, "{what} = {}", self.lower);
        } else {
            let _ = writeln!(s, "{what} in [{}, {}] (budget exceeded)", self.lower, self.upper);
        }
        let _ = writeln!(s, "unsolvable witness for root {}: {}", self.witness_root, counts_text(&self.witness));
        for r in &self.roots {
            if r.exact {
                let _ = writeln!(s, "  root {}: {}", r.root, r.lower);
            } else {
                let _ = writeln!(s, "  root {}: [{}, {}]", r.root, r.lower, r.upper);
            }
        }
        s
    }
}

pub fn counts_text(c: &CountsJson) -> String {
    if c.counts.is_empty() {
        return "empty".to_string();
    }
    c.counts.iter().map(|(v, n)| format!("{v}:{n}")).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub root: Vertex,
    pub size: u64,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<[Vertex; 2]>>,
}

impl SolveReport {
    pub fn new(root: Vertex, p: &Configuration, s: &Solvability) -> Self {
        let (status, moves) = match s {
            Solvability::Solvable(m) => ("solvable", Some(moves_json(m))),
            Solvability::Unsolvable => ("unsolvable", None),
            Solvability::BudgetExceeded => ("budget_exceeded", None),
        };
        SolveReport { root, size: p.size(), status: status.to_string(), moves }
    }

    pub fn exit(&self) -> Exit {
        match self.status.as_str() {
            "solvable" => Exit::Success,
            "unsolvable" => Exit::Failed,
            _ => Exit::Budget,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("{} pebbles, root {}: {}\n", self.size, self.root, self.status);
        if let Some(m) = &self.moves {
            let list: Vec<String> = m.iter().map(|[a, b]| format!("{a}->{b}")).collect();
            let _ = writeln!(s, "moves: {}", if list.is_empty() { "none".to_string() } else { list.join(" ") });
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryLine {
    pub index: usize,
    pub kind: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub mode: String,
    pub root: Vertex,
    pub entries: Vec<EntryLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combined: Option<BTreeMap<Vertex, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_vertex: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    pub claimed_bound: u64,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VerifyReport {
    pub fn new(source: Option<String>, root: Vertex, r: &CertificateReport) -> Self {
        let entries = r
            .entries
            .iter()
            .map(|e| EntryLine {
                index: e.index,
                kind: e.kind.as_str().to_string(),
                status: e.status.as_str().to_string(),
                detail: match &e.status {
                    EntryStatus::Invalid(why) => Some(why.clone()),
                    _ => None,
                },
            })
            .collect();
        let (outcome, reason) = match &r.outcome {
            Outcome::Confirmed => ("confirmed", None),
            Outcome::Invalid(why) => ("invalid", Some(why.clone())),
            Outcome::BudgetExceeded => ("budget_exceeded", None),
        };
        VerifyReport {
            source,
            mode: r.mode.as_str().to_string(),
            root,
            entries,
            combined: r.combined.as_ref().map(|w| rational_map(w.weights())),
            total: r.covering.as_ref().map(|c| to_text(&c.total)),
            min: r.covering.as_ref().map(|c| to_text(&c.min)),
            min_vertex: r.covering.as_ref().map(|c| c.min_vertex),
            bound: r.bound(),
            claimed_bound: r.claimed_bound,
            outcome: outcome.to_string(),
            reason,
        }
    }

    pub fn exit(&self) -> Exit {
        match self.outcome.as_str() {
            "confirmed" => Exit::Success,
            "budget_exceeded" => Exit::Budget,
            _ => Exit::Failed,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        if let Some(src) = &self.source {
            let _ = writeln!(s, "{src}");
        }
        let _ = writeln!(s, "root {}, mode {}", self.root, self.mode);
        for e in &self.entries {
            let _ = write!(s, "  entry {} {}: {}", e.index, e.kind, e.status);
            if let Some(d) = &e.detail {
                let _ = write!(s, " ({d})");
            }
            s.push('\n');
        }
        if let (Some(t), Some(m), Some(v), Some(b)) = (&self.total, &self.min, self.min_vertex, self.bound) {
            let _ = writeln!(s, "total {t}, min {m} at vertex {v}, bound {b} (claimed {})", self.claimed_bound);
        }
        let _ = write!(s, "outcome: {}", self.outcome);
        if let Some(r) = &self.reason {
            let _ = write!(s, " ({r})");
        }
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpJson {
    pub exact: bool,
    pub lower: u64,
    pub upper: u64,
    pub witness: CountsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpReport {
    pub root: Vertex,
    pub strategies: usize,
    pub truncated: bool,
    /// `"bound"` or `"no_bound"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certifies: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primal: Option<BTreeMap<Vertex, String>>,
    /// One multiplier per enumerated strategy, in enumeration order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ilp: Option<IlpJson>,
}

impl LpReport {
    pub fn bound(root: Vertex, truncated: bool, r: &LpResult, certifies: bool) -> Self {
        LpReport {
            root,
            strategies: r.strategies.len(),
            truncated,
            status: "bound".into(),
            uncovered: None,
            optimum: Some(to_text(&r.optimum)),
            bound: Some(r.bound),
            certifies: Some(certifies),
            primal: Some(rational_map(&r.primal)),
            dual_weights: Some(r.dual_weights.iter().map(to_text).collect()),
            ilp: None,
        }
    }

    pub fn no_bound(root: Vertex, strategies: usize, truncated: bool, uncovered: Vertex) -> Self {
        LpReport {
            root,
            strategies,
            truncated,
            status: "no_bound".into(),
            uncovered: Some(uncovered),
            optimum: None,
            bound: None,
            certifies: None,
            primal: None,
            dual_weights: None,
            ilp: None,
        }
    }

    pub fn with_ilp(mut self, o: &IlpOutcome) -> Self {
        self.ilp = match o {
            IlpOutcome::Exact { z, witness } => {
                Some(IlpJson { exact: true, lower: *z, upper: *z, witness: CountsJson::from_configuration(witness) })
            }
            IlpOutcome::BudgetExceeded { lower, upper, witness } => Some(IlpJson {
                exact: false,
                lower: *lower,
                upper: *upper,
                witness: CountsJson::from_configuration(witness),
            }),
            IlpOutcome::NoBound { .. } => None,
        };
        self
    }

    pub fn exit(&self) -> Exit {
        match (&self.certifies, &self.ilp) {
            (Some(false), _) => Exit::Failed,
            (_, Some(i)) if !i.exact => Exit::Budget,
            _ => Exit::Success,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("root {}: {} strategies", self.root, self.strategies);
        if self.truncated {
            s.push_str(" (truncated)");
        }
        s.push('\n');
        match (&self.optimum, self.bound) {
            (Some(z), Some(b)) => {
                let _ = writeln!(s, "LP optimum {z}, bound {b}");
                if let Some(c) = self.certifies {
                    let _ = writeln!(s, "dual certificate: {}", if c { "zero gap" } else { "gap" });
                }
            }
            _ => {
                let _ = writeln!(s, "no bound: vertex {} is uncovered", self.uncovered.unwrap_or(0));
            }
        }
        if let Some(i) = &self.ilp {
            if i.exact {
                let _ = writeln!(s, "ILP optimum {}, bound {}", i.lower, i.lower + 1);
            } else {
                let _ = writeln!(s, "ILP optimum in [{}, {}] (budget exceeded)", i.lower, i.upper);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_vertex: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<CountsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required: Option<usize>,
}

impl WitnessJson {
    pub fn new(w: &Witness) -> Self {
        let blank = WitnessJson {
            kind: String::new(),
            root: None,
            cut_vertex: None,
            configuration: None,
            verified: None,
            edges: None,
            required: None,
        };
        match w {
            Witness::Unsolvable { root, configuration, verified } => WitnessJson {
                kind: "unsolvable".into(),
                root: Some(*root),
                configuration: Some(CountsJson::from_configuration(configuration)),
                verified: Some(*verified),
                ..blank
            },
            Witness::CutVertex { vertex, root, configuration, verified } => WitnessJson {
                kind: "cut_vertex".into(),
                root: Some(*root),
                cut_vertex: Some(*vertex),
                configuration: Some(CountsJson::from_configuration(configuration)),
                verified: Some(*verified),
                ..blank
            },
            Witness::EdgeCount { edges, required } => {
                WitnessJson { kind: "edge_count".into(), edges: Some(*edges), required: Some(*required), ..blank }
            }
        }
    }

    fn text(&self) -> String {
        match self.kind.as_str() {
            "edge_count" => format!("{} edges, {} required", self.edges.unwrap_or(0), self.required.unwrap_or(0)),
            _ => {
                let mut s = String::new();
                if let Some(c) = self.cut_vertex {
                    let _ = write!(s, "cut vertex {c}, ");
                }
                let _ = write!(
                    s,
                    "root {}, configuration {}",
                    self.root.unwrap_or(0),
                    self.configuration.as_ref().map(counts_text).unwrap_or_default()
                );
                if self.verified == Some(true) {
                    s.push_str(", solver-checked");
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub condition: String,
    pub status: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub n: usize,
    pub edges: usize,
    pub diameter: usize,
    pub min_degree: usize,
    pub verdicts: Vec<VerdictJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_class: Option<String>,
    pub budget_exceeded: bool,
    pub conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl AuditJson {
    pub fn new(source: Option<String>, r: &AuditReport) -> Self {
        let (reason, witness) = match &r.conclusion {
            Conclusion::NotClass0 { reason, witness } => (Some(reason.clone()), Some(WitnessJson::new(witness))),
            _ => (None, None),
        };
        AuditJson {
            source,
            n: r.n,
            edges: r.edges,
            diameter: r.diameter,
            min_degree: r.min_degree,
            verdicts: r
                .verdicts
                .iter()
                .map(|v| VerdictJson {
                    condition: v.condition.clone(),
                    status: v.status.as_str().to_string(),
                    detail: v.detail.clone(),
                    witness: v.witness.as_ref().map(WitnessJson::new),
                })
                .collect(),
            equality_class: r.equality_class.map(|c| c.to_string()),
            budget_exceeded: r.budget_exceeded,
            conclusion: r.conclusion.as_str().to_string(),
            reason,
            witness,
        }
    }

    pub fn exit(&self) -> Exit {
        match self.conclusion.as_str() {
            "not_class0" => Exit::Failed,
            _ if self.budget_exceeded => Exit::Budget,
            _ => Exit::Success,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        if let Some(src) = &self.source {
            let _ = writeln!(s, "{src}");
        }
        let _ = writeln!(
            s,
            "n {}, edges {}, diameter {}, min degree {}",
            self.n, self.edges, self.diameter, self.min_degree
        );
        for v in &self.verdicts {
            let _ = write!(s, "  {} {}: {}", v.condition, v.status, v.detail);
            if let Some(w) = &v.witness {
                let _ = write!(s, " [{}]", w.text());
            }
            s.push('\n');
        }
        if let Some(c) = &self.equality_class {
            let _ = writeln!(s, "equality class: {c}");
        }
        if self.budget_exceeded {
            let _ = writeln!(s, "exact search: budget exceeded");
        }
        let _ = write!(s, "conclusion: {}", self.conclusion);
        if let Some(r) = &self.reason {
            let _ = write!(s, " ({r})");
        }
        s.push('\n');
        s
    }
}
