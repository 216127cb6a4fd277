use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{MetricGraph, Point};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A closed subset of a metric graph: a set of vertices together with finitely
/// many closed rational intervals on edges.
///
/// Canonical form: per edge the intervals are sorted and pairwise disjoint,
/// an interval touching an edge end puts that end's vertex in the vertex set,
/// and degenerate intervals sit strictly inside edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSubgraph {
    vertices: BTreeSet<usize>,
    intervals: Vec<Vec<(Rational, Rational)>>,
}

/// A direction leaving a closed subgraph: a chip fired from `origin` travels
/// along `edge` starting at offset `start` in direction `dir` (+1 toward the
/// head, -1 toward the tail). `room` is how far it can go before reaching a
/// vertex or meeting the front coming from the other side of the gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub origin: Point,
    pub edge: usize,
    pub start: Rational,
    pub dir: i8,
    pub room: Rational,
    /// Offset where the gap in front of the ray ends.
    pub gap_end: Rational,
}

impl Ray {
    pub fn offset_at(&self, t: Rational) -> Rational {
        if self.dir > 0 {
            self.start + t
        } else {
            self.start - t
        }
    }

    /// Distance from the origin to `offset` on the ray's edge, if the offset
    /// lies strictly ahead within the gap.
    pub fn distance_to(&self, offset: &Rational) -> Option<Rational> {
        let d = if self.dir > 0 {
            offset - self.start
        } else {
            self.start - offset
        };
        let span = if self.dir > 0 {
            self.gap_end - self.start
        } else {
            self.start - self.gap_end
        };
        (d > Rational::zero() && d <= span).then_some(d)
    }
}

/// Maximal open subinterval of an edge not covered by the subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Gap {
    pub a: Rational,
    pub b: Rational,
    pub left_covered: bool,
    pub right_covered: bool,
}

impl ClosedSubgraph {
    pub fn empty(graph: &MetricGraph) -> Self {
        ClosedSubgraph {
            vertices: BTreeSet::new(),
            intervals: vec![Vec::new(); graph.edges().len()],
        }
    }

    pub fn whole(graph: &MetricGraph) -> Self {
        let all: Vec<usize> = (0..graph.edges().len()).collect();
        let mut s = ClosedSubgraph::from_edges(graph, &all);
        s.vertices.extend(0..graph.vertex_count());
        s
    }

    /// Builds and canonicalizes a closed subgraph from vertices and
    /// `(edge, a, b)` closed intervals with `0 <= a <= b <= length`.
    pub fn new(
        graph: &MetricGraph,
        vertices: impl IntoIterator<Item = usize>,
        intervals: impl IntoIterator<Item = (usize, Rational, Rational)>,
    ) -> Result<Self> {
        let mut s = ClosedSubgraph::empty(graph);
        for v in vertices {
            if v >= graph.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            s.vertices.insert(v);
        }
        for (e, a, b) in intervals {
            let edge = graph
                .edges()
                .get(e)
                .ok_or_else(|| Error::UnknownEdge(format!("#{e}")))?;
            if a < Rational::zero() || b > edge.length || a > b {
                return Err(Error::OffsetOutOfRange {
                    edge: edge.id.clone(),
                    offset: format!("[{}, {}]", rational::format(&a), rational::format(&b)),
                });
            }
            s.intervals[e].push((a, b));
        }
        s.canonicalize(graph);
        Ok(s)
    }

    /// Union of whole edges, endpoints included.
    pub fn from_edges(graph: &MetricGraph, edges: &[usize]) -> Self {
        ClosedSubgraph::new(
            graph,
            [],
            edges.iter().map(|&e| (e, Rational::zero(), graph.edge(e).length)),
        )
        .expect("whole edges are valid intervals")
    }

    pub fn from_edge_ids(graph: &MetricGraph, ids: &[&str]) -> Result<Self> {
        let edges = ids.iter().map(|id| graph.edge_by_id(id)).collect::<Result<Vec<_>>>()?;
        Ok(ClosedSubgraph::from_edges(graph, &edges))
    }

    /// Adds the interval `[a, b]` of edge `e`.
    pub fn with_interval(mut self, graph: &MetricGraph, e: usize, a: Rational, b: Rational) -> Result<Self> {
        let extra = ClosedSubgraph::new(graph, [], [(e, a, b)])?;
        self.vertices.extend(extra.vertices);
        self.intervals[e].extend(extra.intervals[e].iter().cloned());
        self.canonicalize(graph);
        Ok(self)
    }

    pub fn with_point(mut self, graph: &MetricGraph, p: &Point) -> Self {
        match p {
            Point::Vertex(v) => {
                self.vertices.insert(*v);
            }
            Point::Edge { edge, offset } => self.intervals[*edge].push((*offset, *offset)),
        }
        self.canonicalize(graph);
        self
    }

    fn canonicalize(&mut self, graph: &MetricGraph) {
        for (e, ivs) in self.intervals.iter_mut().enumerate() {
            let edge = graph.edge(e);
            ivs.sort();
            let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(ivs.len());
            for &(a, b) in ivs.iter() {
                match merged.last_mut() {
                    Some(last) if a <= last.1 => {
                        if b > last.1 {
                            last.1 = b;
                        }
                    }
                    _ => merged.push((a, b)),
                }
            }
            for &(a, b) in &merged {
                if a.is_zero() {
                    self.vertices.insert(edge.ends.0);
                }
                if b == edge.length {
                    self.vertices.insert(edge.ends.1);
                }
            }
            merged.retain(|&(a, b)| !(a == b && (a.is_zero() || a == edge.length)));
            *ivs = merged;
        }
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn intervals(&self, e: usize) -> &[(Rational, Rational)] {
        &self.intervals[e]
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.intervals.iter().all(Vec::is_empty)
    }

    pub fn contains(&self, graph: &MetricGraph, p: &Point) -> bool {
        match p {
            Point::Vertex(v) => self.vertices.contains(v),
            Point::Edge { edge, offset } => self
                .coverage(graph, *edge)
                .iter()
                .any(|(a, b)| a <= offset && offset <= b),
        }
    }

    /// Covered parts of edge `e`, with vertex membership included as
    /// degenerate intervals at the ends.
    pub fn coverage(&self, graph: &MetricGraph, e: usize) -> Vec<(Rational, Rational)> {
        let edge = graph.edge(e);
        let mut out = Vec::with_capacity(self.intervals[e].len() + 2);
        if self.vertices.contains(&edge.ends.0) {
            out.push((Rational::zero(), Rational::zero()));
        }
        for &(a, b) in &self.intervals[e] {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        if self.vertices.contains(&edge.ends.1) {
            match out.last_mut() {
                Some(last) if last.1 == edge.length => {}
                _ => out.push((edge.length, edge.length)),
            }
        }
        out
    }

    pub(crate) fn gaps(&self, graph: &MetricGraph, e: usize) -> Vec<Gap> {
        let len = graph.edge(e).length;
        let cov = self.coverage(graph, e);
        let mut gaps = Vec::new();
        let mut cursor = Rational::zero();
        let mut cursor_covered = false;
        for &(a, b) in &cov {
            if a > cursor {
                gaps.push(Gap {
                    a: cursor,
                    b: a,
                    left_covered: cursor_covered,
                    right_covered: true,
                });
            }
            cursor = b;
            cursor_covered = true;
        }
        if cursor < len {
            gaps.push(Gap {
                a: cursor,
                b: len,
                left_covered: cursor_covered,
                right_covered: false,
            });
        }
        gaps
    }

    /// Every direction leaving the subgraph, in edge order.
    pub fn rays(&self, graph: &MetricGraph) -> Vec<Ray> {
        let mut rays = Vec::new();
        for e in 0..graph.edges().len() {
            for gap in self.gaps(graph, e) {
                let width = gap.b - gap.a;
                let room = if gap.left_covered && gap.right_covered {
                    width / Rational::from_integer(2)
                } else {
                    width
                };
                let at = |x: Rational| graph.point_on_edge(e, x).expect("gap ends lie on the edge");
                if gap.left_covered {
                    rays.push(Ray {
                        origin: at(gap.a),
                        edge: e,
                        start: gap.a,
                        dir: 1,
                        room,
                        gap_end: gap.b,
                    });
                }
                if gap.right_covered {
                    rays.push(Ray {
                        origin: at(gap.b),
                        edge: e,
                        start: gap.b,
                        dir: -1,
                        room,
                        gap_end: gap.a,
                    });
                }
            }
        }
        rays
    }

    /// Boundary points with their out-degrees.
    pub fn boundary(&self, graph: &MetricGraph) -> BTreeMap<Point, usize> {
        let mut out = BTreeMap::new();
        for ray in self.rays(graph) {
            *out.entry(ray.origin).or_insert(0) += 1;
        }
        out
    }
}
