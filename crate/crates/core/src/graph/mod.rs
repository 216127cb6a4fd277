//! Metric graphs and the objects that live on them.

mod divisor;
mod generate;
pub mod io;
mod pl;
mod point;
mod subgraph;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use divisor::Divisor;
pub use generate::{
    chain_of_loops, degenerate_loop_of_loops, generate, generic_chain_of_loops_4, loop_of_loops,
    loop_of_loops_with_pairs, yu_graph, GraphFamily,
};
pub use pl::{div_of_pl, PlFunction};
pub use point::Point;
pub(crate) use subgraph::Gap;
pub use subgraph::{ClosedSubgraph, Ray};

/// Which end of an edge a vertex sits at: offset 0 or offset `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// `(tail, head)`; offsets along the edge are measured from the tail.
    pub ends: (usize, usize),
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    pub fn vertex_at(&self, end: End) -> usize {
        match end {
            End::Tail => self.ends.0,
            End::Head => self.ends.1,
        }
    }

    pub fn offset_of(&self, end: End) -> Rational {
        match end {
            End::Tail => Rational::zero(),
            End::Head => self.length,
        }
    }
}

/// A validated compact connected metric graph with rational edge lengths.
///
/// Multi-edges and loop edges are allowed. Values are immutable once built.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<(usize, End)>>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    genus: usize,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MetricGraph {}

impl MetricGraph {
    /// Validates a raw description: known endpoints, positive lengths,
    /// unique names and connectivity.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() || vertex_index.contains_key(&e.id) {
                return Err(Error::DuplicateName(e.id.clone()));
            }
            for v in [e.ends.0, e.ends.1] {
                if v >= vertices.len() {
                    return Err(Error::DanglingEdgeEndpoint {
                        edge: e.id.clone(),
                        vertex: format!("#{v}"),
                    });
                }
            }
            if !rational::is_positive(&e.length) {
                return Err(Error::NonpositiveLength {
                    edge: e.id.clone(),
                    length: rational::format(&e.length),
                });
            }
            incidence[e.ends.0].push((i, End::Tail));
            incidence[e.ends.1].push((i, End::Head));
        }
        let graph = MetricGraph {
            genus: edges.len() + 1 - vertices.len().min(edges.len() + 1),
            vertices,
            edges,
            incidence,
            vertex_index,
            edge_index,
        };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    /// Builds a graph from vertex names and `(id, tail, head, length)` tuples.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str, &str, Rational)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut out = Vec::with_capacity(edges.len());
        for (id, a, b, len) in edges {
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| Error::DanglingEdgeEndpoint {
                    edge: id.to_string(),
                    vertex: v.to_string(),
                })
            };
            out.push(Edge {
                id: id.to_string(),
                ends: (lookup(a)?, lookup(b)?),
                length: *len,
            });
        }
        MetricGraph::new(names, out)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, end) in &self.incidence[v] {
                let w = self.edges[e].vertex_at(opposite(end));
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number `#edges - #vertices + 1`.
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// The point at the named vertex.
    pub fn vp(&self, name: &str) -> Point {
        Point::Vertex(self.vertex(name).expect("unknown vertex name"))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edge-ends incident to `v`; a loop edge contributes both of its ends.
    pub fn incidence(&self, v: usize) -> &[(usize, End)] {
        &self.incidence[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn total_length(&self) -> Rational {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Least common multiple of the edge-length denominators.
    pub fn length_denominator(&self) -> i128 {
        rational::common_denominator(self.edges.iter().map(|e| &e.length))
    }

    /// Canonical point at `offset` along edge `e`: the endpoints collapse
    /// to their vertices.
    pub fn point_on_edge(&self, e: usize, offset: Rational) -> Result<Point> {
        let edge = &self.edges[e];
        if offset < Rational::zero() || offset > edge.length {
            return Err(Error::OffsetOutOfRange {
                edge: edge.id.clone(),
                offset: rational::format(&offset),
            });
        }
        Ok(if offset.is_zero() {
            Point::Vertex(edge.ends.0)
        } else if offset == edge.length {
            Point::Vertex(edge.ends.1)
        } else {
            Point::Edge { edge: e, offset }
        })
    }

    /// Point at `dist` from the named tail vertex along the named edge.
    pub fn point_at(&self, edge_id: &str, dist: Rational) -> Point {
        let e = self.edge_by_id(edge_id).expect("unknown edge id");
        self.point_on_edge(e, dist).expect("offset out of range")
    }

    /// Human-readable name: the vertex name, or `edge@offset`.
    pub fn point_name(&self, p: &Point) -> String {
        match p {
            Point::Vertex(v) => self.vertices[*v].clone(),
            Point::Edge { edge, offset } => {
                format!("{}@{}", self.edges[*edge].id, rational::format(offset))
            }
        }
    }

    /// The vertex whose name is lexicographically smallest.
    pub fn canonical_basepoint(&self) -> Point {
        let v = (0..self.vertices.len())
            .min_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]))
            .expect("graph has at least one vertex");
        Point::Vertex(v)
    }

    /// `K = sum_v (valence(v) - 2) v`, of degree `2g - 2`.
    pub fn canonical_divisor(&self) -> Divisor {
        Divisor::from_terms((0..self.vertices.len()).map(|v| (Point::Vertex(v), self.valence(v) as i64 - 2)))
    }

    /// The same combinatorial graph with every length multiplied by `factor`.
    pub fn scaled(&self, factor: Rational) -> Result<MetricGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                length: e.length * factor,
                ..e.clone()
            })
            .collect();
        MetricGraph::new(self.vertices.clone(), edges)
    }

    /// Points of `self` mapped onto a copy scaled by `factor`.
    pub fn scale_point(p: &Point, factor: Rational) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(*v),
            Point::Edge { edge, offset } => Point::Edge {
                edge: *edge,
                offset: offset * factor,
            },
        }
    }

    /// Indices of separating edges (bridges).
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut time = 0usize;
        // Iterative DFS; frames hold (vertex, edge used to enter, next incidence slot).
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(0, None, 0)];
        disc[0] = 0;
        low[0] = 0;
        while let Some(&mut (v, via, ref mut slot)) = stack.last_mut() {
            if *slot < self.incidence[v].len() {
                let (e, end) = self.incidence[v][*slot];
                *slot += 1;
                if Some(e) == via {
                    continue;
                }
                let w = self.edges[e].vertex_at(opposite(end));
                if disc[w] == usize::MAX {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(via.expect("non-root frame has an entry edge"));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Contracts every separating edge. Genus is unchanged, and the map sends
    /// points of bridges to the merged vertex.
    pub fn contract_separating_edges(&self) -> (MetricGraph, PointMap) {
        let bridges = self.bridges();
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &b in &bridges {
            let (x, y) = self.edges[b].ends;
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut vertex_map = vec![0usize; n];
        let mut names = Vec::with_capacity(groups.len());
        for (new, members) in groups.values().enumerate() {
            let name = members
                .iter()
                .map(|&v| self.vertices[v].clone())
                .min()
                .expect("nonempty group");
            names.push(name);
            for &v in members {
                vertex_map[v] = new;
            }
        }
        let mut edge_map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if bridges.binary_search(&i).is_ok() {
                continue;
            }
            edge_map[i] = Some(edges.len());
            edges.push(Edge {
                id: e.id.clone(),
                ends: (vertex_map[e.ends.0], vertex_map[e.ends.1]),
                length: e.length,
            });
        }
        let graph = MetricGraph::new(names, edges).expect("contraction of a valid graph is valid");
        (
            graph,
            PointMap {
                vertex_map,
                edge_map,
                bridge_tail: self.edges.iter().map(|e| e.ends.0).collect(),
            },
        )
    }
}

pub(crate) fn opposite(end: End) -> End {
    match end {
        End::Tail => End::Head,
        End::Head => End::Tail,
    }
}

/// Image of points under [`MetricGraph::contract_separating_edges`].
#[derive(Debug, Clone)]
pub struct PointMap {
    vertex_map: Vec<usize>,
    edge_map: Vec<Option<usize>>,
    bridge_tail: Vec<usize>,
}

impl PointMap {
    pub fn map(&self, p: &Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(self.vertex_map[*v]),
            Point::Edge { edge, offset } => match self.edge_map[*edge] {
                Some(e) => Point::Edge {
                    edge: e,
                    offset: *offset,
                },
                None => Point::Vertex(self.vertex_map[self.bridge_tail[*edge]]),
            },
        }
    }

    pub fn map_divisor(&self, d: &Divisor) -> Divisor {
        Divisor::from_terms(d.iter().map(|(p, c)| (self.map(p), c)))
    }
}
