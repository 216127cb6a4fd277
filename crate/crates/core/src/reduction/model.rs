//! The augmented model: graph vertices plus extra marked points, cut into
//! segments that contain no marked point in their interior.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::graph::{End, MetricGraph, Point};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct Segment {
    pub edge: usize,
    pub a: Rational,
    pub b: Rational,
    /// Node indices at offsets `a` and `b`.
    pub ends: (usize, usize),
}

impl Segment {
    pub fn length(&self) -> Rational {
        self.b - self.a
    }

    /// Offset reached after travelling `t` into the segment from `end`.
    pub fn offset_from(&self, end: End, t: Rational) -> Rational {
        match end {
            End::Tail => self.a + t,
            End::Head => self.b - t,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Model {
    pub nodes: Vec<Point>,
    pub index: BTreeMap<Point, usize>,
    pub segments: Vec<Segment>,
    /// Segment ends at each node. A loop segment appears twice.
    pub adj: Vec<Vec<(usize, End)>>,
}

impl Model {
    pub fn new<'a>(graph: &MetricGraph, marked: impl IntoIterator<Item = &'a Point>) -> Model {
        let mut nodes: Vec<Point> = (0..graph.vertex_count()).map(Point::Vertex).collect();
        let mut per_edge: Vec<BTreeSet<Rational>> = vec![BTreeSet::new(); graph.edges().len()];
        for p in marked {
            if let Point::Edge { edge, offset } = p {
                per_edge[*edge].insert(*offset);
            }
        }
        let mut index: BTreeMap<Point, usize> = nodes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut segments = Vec::new();
        for (e, offsets) in per_edge.iter().enumerate() {
            let edge = graph.edge(e);
            let mut prev = (Rational::zero(), edge.ends.0);
            for &x in offsets {
                let p = Point::Edge { edge: e, offset: x };
                let id = nodes.len();
                nodes.push(p.clone());
                index.insert(p, id);
                segments.push(Segment {
                    edge: e,
                    a: prev.0,
                    b: x,
                    ends: (prev.1, id),
                });
                prev = (x, id);
            }
            segments.push(Segment {
                edge: e,
                a: prev.0,
                b: edge.length,
                ends: (prev.1, edge.ends.1),
            });
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (s, seg) in segments.iter().enumerate() {
            adj[seg.ends.0].push((s, End::Tail));
            adj[seg.ends.1].push((s, End::Head));
        }
        Model {
            nodes,
            index,
            segments,
            adj,
        }
    }

    pub fn other_end(&self, s: usize, end: End) -> usize {
        let seg = &self.segments[s];
        match end {
            End::Tail => seg.ends.1,
            End::Head => seg.ends.0,
        }
    }

    /// Runs the fire from `q`. A node other than `q` catches fire once the
    /// number of burnt directions reaching it exceeds its chip count.
    /// Returns the burnt flags and, per node, the number of burnt directions.
    pub fn burn(&self, chips: &[i64], q: usize) -> (Vec<bool>, Vec<usize>) {
        let n = self.nodes.len();
        let mut burnt = vec![false; n];
        let mut hits = vec![0usize; n];
        let mut queue = vec![q];
        burnt[q] = true;
        while let Some(y) = queue.pop() {
            for &(s, end) in &self.adj[y] {
                let x = self.other_end(s, end);
                if burnt[x] {
                    continue;
                }
                hits[x] += 1;
                if hits[x] as i64 > chips[x] {
                    burnt[x] = true;
                    queue.push(x);
                }
            }
        }
        (burnt, hits)
    }
}
