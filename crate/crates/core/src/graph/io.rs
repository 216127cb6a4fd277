//! JSON forms of graphs and divisors. Rationals are `"p/q"` strings.
//!
//! Graph: `{"vertices": ["v1", ...], "edges": [{"id": "e1", "ends": ["v1", "w1"], "length": "5/1"}]}`
//!
//! Divisor: `[{"edge": "e3", "offset": "3/2", "coeff": 2}, {"vertex": "v1", "coeff": -1}]`

use serde::{Deserialize, Serialize};

use super::{Divisor, Edge, MetricGraph, Point};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub ends: [String; 2],
    #[serde(with = "rational::serde_pq")]
    pub length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<String>,
    pub coeff: i64,
}

impl GraphFile {
    pub fn from_graph(graph: &MetricGraph) -> Self {
        GraphFile {
            vertices: graph.vertices().to_vec(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    ends: [
                        graph.vertex_name(e.ends.0).to_string(),
                        graph.vertex_name(e.ends.1).to_string(),
                    ],
                    length: e.length,
                })
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<MetricGraph> {
        let index: std::collections::HashMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let lookup = |v: &String| {
                index
                    .get(v.as_str())
                    .copied()
                    .ok_or_else(|| Error::DanglingEdgeEndpoint {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    })
            };
            edges.push(Edge {
                id: e.id.clone(),
                ends: (lookup(&e.ends[0])?, lookup(&e.ends[1])?),
                length: e.length,
            });
        }
        MetricGraph::new(self.vertices, edges)
    }
}

pub fn graph_from_json(text: &str) -> Result<MetricGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    file.into_graph()
}

pub fn graph_to_json(graph: &MetricGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(graph)).expect("graph serializes")
}

pub fn point_entry(graph: &MetricGraph, p: &Point, coeff: i64) -> DivisorEntry {
    match p {
        Point::Vertex(v) => DivisorEntry {
            vertex: Some(graph.vertex_name(*v).to_string()),
            edge: None,
            offset: None,
            coeff,
        },
        Point::Edge { edge, offset } => DivisorEntry {
            vertex: None,
            edge: Some(graph.edge(*edge).id.clone()),
            offset: Some(rational::format(offset)),
            coeff,
        },
    }
}

pub fn divisor_entries(graph: &MetricGraph, d: &Divisor) -> Vec<DivisorEntry> {
    d.iter().map(|(p, c)| point_entry(graph, p, c)).collect()
}

pub fn point_from_entry(graph: &MetricGraph, entry: &DivisorEntry) -> Result<Point> {
    match (&entry.vertex, &entry.edge, &entry.offset) {
        (Some(v), None, None) => Ok(Point::Vertex(graph.vertex(v)?)),
        (None, Some(e), Some(off)) => {
            let e = graph.edge_by_id(e)?;
            graph.point_on_edge(e, rational::parse(off)?)
        }
        _ => Err(Error::Malformed(
            "divisor entry needs either \"vertex\" or \"edge\" with \"offset\"".into(),
        )),
    }
}

pub fn divisor_from_entries(graph: &MetricGraph, entries: &[DivisorEntry]) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for entry in entries {
        d.add_at(point_from_entry(graph, entry)?, entry.coeff);
    }
    Ok(d)
}

pub fn divisor_from_json(graph: &MetricGraph, text: &str) -> Result<Divisor> {
    let entries: Vec<DivisorEntry> = serde_json::from_str(text)?;
    divisor_from_entries(graph, &entries)
}

pub fn divisor_to_json(graph: &MetricGraph, d: &Divisor) -> String {
    serde_json::to_string_pretty(&divisor_entries(graph, d)).expect("divisor serializes")
}
