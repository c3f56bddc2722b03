//! JSON and text file formats.
//!
//! Vertex-keyed maps are written with numeric keys in increasing order and
//! rationals as canonical `"num/den"` strings, so equal values always
//! serialize to equal bytes.

use std::collections::BTreeMap;

use pebbling_core::certificate::{Certificate, CertificateEntry};
use pebbling_core::rational::{parse as parse_rational, to_text};
use pebbling_core::strategy::{Attachment, CycleRoles, Strategy, StrategyKind, Support, WeightFunction};
use pebbling_core::{Configuration, Graph, PebblingMove, Rational, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("{0}")]
    Core(#[from] pebbling_core::Error),
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<Vertex, String>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        let labels = (!g.labels().is_empty()).then(|| g.labels().clone());
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect(), labels }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(Vertex, Vertex)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = Graph::from_edges(self.n, &edges)?;
        Ok(match &self.labels {
            Some(l) => g.with_labels(l.clone())?,
            None => g,
        })
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    to_json(&GraphJson::from_graph(g))
}

/// One `u v` pair per line; `#` starts a comment. The vertex count is one
/// more than the largest id.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| FormatError::EdgeList { line: i + 1, reason };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(bad(format!("expected two vertex ids, found {}", parts.len())));
        }
        let id = |s: &str| s.parse::<Vertex>().map_err(|_| bad(format!("{s:?} is not a vertex id")));
        let (u, v) = (id(parts[0])?, id(parts[1])?);
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn edge_list_text(g: &Graph) -> String {
    let mut s = format!("# {} vertices\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Graph JSON when the text starts with `{`, an edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<GraphJson>(text)?.to_graph()
    } else {
        parse_edge_list(text)
    }
}

/// A vertex given by id or by label.
pub fn resolve_vertex(g: &Graph, name: &str) -> Result<Vertex> {
    if let Some(v) = g.vertex_labelled(name) {
        return Ok(v);
    }
    let v = name.parse::<Vertex>().map_err(|_| invalid(format!("no vertex {name:?}")))?;
    g.check_vertex(v)?;
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub counts: BTreeMap<String, u32>,
}

/// Keys may be vertex ids or labels; missing vertices hold no pebbles.
pub fn parse_configuration(g: &Graph, text: &str) -> Result<Configuration> {
    let json: ConfigurationJson = serde_json::from_str(text)?;
    let mut counts = vec![0u32; g.n()];
    for (key, &c) in &json.counts {
        counts[resolve_vertex(g, key)?] += c;
    }
    Ok(Configuration::new(counts))
}

/// Nonzero counts only, keyed by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsJson {
    pub counts: BTreeMap<Vertex, u32>,
}

impl CountsJson {
    pub fn from_configuration(p: &Configuration) -> Self {
        CountsJson { counts: p.counts().iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, &c)| (v, c)).collect() }
    }
}

pub fn moves_json(moves: &[PebblingMove]) -> Vec<[Vertex; 2]> {
    moves.iter().map(|m| [m.from, m.to]).collect()
}

pub fn parse_moves(text: &str) -> Result<Vec<PebblingMove>> {
    let pairs: Vec<[Vertex; 2]> = serde_json::from_str(text)?;
    Ok(pairs.into_iter().map(|[a, b]| PebblingMove::new(a, b)).collect())
}

/// Shape data of a strategy. Which fields apply depends on the entry kind:
/// trees use `parent`, cycle-with-tail strategies use `t`, `tail` and the
/// role lists, explicit strategies may carry a `template` edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<BTreeMap<Vertex, Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<Vec<[Vertex; 2]>>,
    /// Vertices hung off a parent, as `[vertex, parent]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attachments: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub trusted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub kind: String,
    /// Every vertex, root included.
    pub weights: BTreeMap<Vertex, String>,
    pub support: SupportJson,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph: GraphJson,
    pub root: Vertex,
    pub entries: Vec<EntryJson>,
    pub claimed_bound: u64,
}

pub fn rational_map(values: &[Rational]) -> BTreeMap<Vertex, String> {
    values.iter().enumerate().map(|(v, r)| (v, to_text(r))).collect()
}

impl EntryJson {
    pub fn from_entry(e: &CertificateEntry) -> Self {
        let s = &e.strategy;
        let mut support = SupportJson {
            attachments: s.attachments.iter().map(|a| [a.vertex, a.parent]).collect(),
            trusted: s.trusted,
            ..SupportJson::default()
        };
        match &s.support {
            Support::Tree { parent } => support.parent = Some(parent.clone()),
            Support::CycleTail { t, tail, roles } => {
                support.t = Some(*t);
                support.tail = Some(*tail);
                support.x0 = Some(roles.x0);
                support.upper = Some(roles.upper.clone());
                support.lower = Some(roles.lower.clone());
                support.spine = Some(roles.spine.clone());
            }
            Support::Explicit { template } => {
                support.template = template.as_ref().map(|t| t.iter().map(|&(u, v)| [u, v]).collect());
            }
        }
        EntryJson {
            kind: s.kind.as_str().to_string(),
            weights: rational_map(s.weight.weights()),
            support,
            coefficient: to_text(&e.coefficient),
        }
    }

    pub fn to_entry(&self, n: usize, root: Vertex) -> Result<CertificateEntry> {
        let kind = StrategyKind::parse(&self.kind).ok_or_else(|| invalid(format!("unknown kind {:?}", self.kind)))?;
        let mut weights = vec![Rational::from_integer(0.into()); n];
        for (&v, text) in &self.weights {
            if v >= n {
                return Err(invalid(format!("weight on vertex {v} outside the graph")));
            }
            weights[v] = parse_rational(text)?;
        }
        let weight = WeightFunction::new(root, weights)?;
        let sp = &self.support;
        let missing = |field: &str| invalid(format!("{} support needs {field:?}", self.kind));
        let support = match kind {
            StrategyKind::TreeBasic | StrategyKind::TreeNonbasic => {
                Support::Tree { parent: sp.parent.clone().ok_or_else(|| missing("parent"))? }
            }
            StrategyKind::CycleTail => Support::CycleTail {
                t: sp.t.ok_or_else(|| missing("t"))?,
                tail: sp.tail.ok_or_else(|| missing("tail"))?,
                roles: CycleRoles {
                    x0: sp.x0.ok_or_else(|| missing("x0"))?,
                    upper: sp.upper.clone().ok_or_else(|| missing("upper"))?,
                    lower: sp.lower.clone().ok_or_else(|| missing("lower"))?,
                    spine: sp.spine.clone().ok_or_else(|| missing("spine"))?,
                },
            },
            StrategyKind::Explicit => {
                Support::Explicit { template: sp.template.as_ref().map(|t| t.iter().map(|&[u, v]| (u, v)).collect()) }
            }
        };
        let strategy = Strategy {
            kind,
            weight,
            support,
            attachments: sp.attachments.iter().map(|&[vertex, parent]| Attachment { vertex, parent }).collect(),
            trusted: sp.trusted,
        };
        Ok(CertificateEntry { strategy, coefficient: parse_rational(&self.coefficient)? })
    }
}

impl CertificateJson {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateJson {
            graph: GraphJson::from_graph(&c.graph),
            root: c.root,
            entries: c.entries.iter().map(EntryJson::from_entry).collect(),
            claimed_bound: c.claimed_bound,
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let graph = self.graph.to_graph()?;
        graph.check_vertex(self.root)?;
        let entries = self.entries.iter().map(|e| e.to_entry(graph.n(), self.root)).collect::<Result<Vec<_>>>()?;
        Ok(Certificate { graph, root: self.root, entries, claimed_bound: self.claimed_bound })
    }
}

pub fn certificate_to_json(c: &Certificate) -> String {
    to_json(&CertificateJson::from_certificate(c))
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    serde_json::from_str::<CertificateJson>(text)?.to_certificate()
}

/// Bare certificate entries, as accepted by `certify --strategies`.
pub fn parse_entries(text: &str, n: usize, root: Vertex) -> Result<Vec<CertificateEntry>> {
    let list: Vec<EntryJson> = serde_json::from_str(text)?;
    list.iter().map(|e| e.to_entry(n, root)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pebbling_core::catalog;
    use pebbling_core::generators::{cycle, lemke};

    #[test]
    fn graph_round_trip() {
        let g = lemke();
        let text = graph_to_json(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(graph_to_json(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn edge_list_with_comments() {
        let g = parse_edge_list("# five cycle\n0 1\n1 2 # chord-free\n\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!(g, cycle(5).unwrap());
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 x\n").is_err());
        assert_eq!(parse_graph(&edge_list_text(&g)).unwrap(), g);
    }

    #[test]
    fn configuration_by_id_or_label() {
        let g = lemke();
        let p = parse_configuration(&g, r#"{"counts": {"x": 7, "1": 2}}"#).unwrap();
        assert_eq!(p.get(5), 7);
        assert_eq!(p.get(1), 2);
        assert!(parse_configuration(&g, r#"{"counts": {"q": 1}}"#).is_err());
    }

    #[test]
    fn certificates_round_trip() {
        for (name, c) in catalog::all() {
            let text = certificate_to_json(&c);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, c, "{name}");
            assert_eq!(certificate_to_json(&back), text, "{name}");
        }
    }

    #[test]
    fn moves_round_trip() {
        let moves = vec![PebblingMove::new(2, 1), PebblingMove::new(1, 0)];
        let text = serde_json::to_string(&moves_json(&moves)).unwrap();
        assert_eq!(text, "[[2,1],[1,0]]");
        assert_eq!(parse_moves(&text).unwrap(), moves);
    }

    #[test]
    fn rationals_are_canonical() {
        let text = certificate_to_json(&catalog::five_cycle());
        assert!(text.contains("\"4/1\""));
        let tampered = text.replace("\"coefficient\": \"1/1\"", "\"coefficient\": \"2/0\"");
        assert!(parse_certificate(&tampered).is_err());
    }
}
