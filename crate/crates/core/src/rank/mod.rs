//! Baker–Norine rank through rank-determining sets.
//!
//! For a finite set `A` the `A`-rank of `D` is the largest `r` such that
//! `D - E` is equivalent to an effective divisor for every effective `E` of
//! degree `r` supported on `A`. When `A` is rank determining this is the
//! rank. The vertices together with the midpoint of every loop edge form
//! such a set.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ClosedSubgraph, Divisor, MetricGraph, Point};
use crate::rational::Rational;
use crate::reduction::{effective_representative, reduce};

/// Brill–Noether number `g - (r+1)(g-d+r)`.
pub fn bn_number(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    VertexClosure,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDeterminingSet {
    points: Vec<Point>,
    provenance: Provenance,
}

impl RankDeterminingSet {
    /// A caller-chosen finite set. Duplicates are dropped; the order is the
    /// point order.
    pub fn user_supplied(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let points: Vec<Point> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if points.is_empty() {
            return Err(Error::Malformed("rank-determining set is empty".into()));
        }
        Ok(RankDeterminingSet {
            points,
            provenance: Provenance::UserSupplied,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// All vertices, then the midpoint of each loop edge.
pub fn rank_determining_set(graph: &MetricGraph) -> RankDeterminingSet {
    let mut points: Vec<Point> = (0..graph.vertex_count()).map(Point::Vertex).collect();
    for (e, edge) in graph.edges().iter().enumerate() {
        if edge.is_loop() {
            let mid = edge.length / Rational::from_integer(2);
            points.push(graph.point_on_edge(e, mid).expect("midpoint lies on the edge"));
        }
    }
    RankDeterminingSet {
        points,
        provenance: Provenance::VertexClosure,
    }
}

/// Whether `c - E` is equivalent to an effective divisor for every
/// effective `E` of degree `depth` supported on `pts[start..]`.
///
/// `c` is effective. `c - a` has an effective representative exactly when
/// the `a`-reduced form of `c` has a chip at `a`; removing that chip leaves
/// an effective divisor to continue from.
fn all_pass(graph: &MetricGraph, c: &Divisor, pts: &[Point], start: usize, depth: usize) -> bool {
    if depth == 0 {
        return true;
    }
    let step = |i: usize| {
        let a = &pts[i];
        let mut red = reduce(graph, c, a).divisor;
        if red.coeff(a) < 1 {
            return false;
        }
        red.add_at(a.clone(), -1);
        all_pass(graph, &red, pts, i, depth - 1)
    };
    if start == 0 && depth > 1 {
        (0..pts.len()).into_par_iter().all(step)
    } else {
        (start..pts.len()).all(step)
    }
}

/// Whether `c - (e_1 + ... + e_k)` is equivalent to an effective divisor,
/// for `c` effective.
pub fn dominates(graph: &MetricGraph, c: &Divisor, e: &[Point]) -> bool {
    let mut cur = c.clone();
    for p in e {
        cur = reduce(graph, &cur, p).divisor;
        if cur.coeff(p) < 1 {
            return false;
        }
        cur.add_at(p.clone(), -1);
    }
    true
}

/// `A`-rank of `d`, testing `r = 0, 1, ...` until some `E` fails.
pub fn a_rank(graph: &MetricGraph, d: &Divisor, a: &RankDeterminingSet) -> i64 {
    let Some(eff) = effective_representative(graph, d) else {
        return -1;
    };
    let deg = d.degree();
    for r in 1..=deg {
        if !all_pass(graph, &eff, &a.points, 0, r as usize) {
            return r - 1;
        }
    }
    deg
}

/// Baker–Norine rank. Above degree `2g - 2` Riemann–Roch gives `deg - g`.
pub fn rank(graph: &MetricGraph, d: &Divisor) -> i64 {
    let g = graph.genus() as i64;
    if d.degree() > 2 * g - 2 {
        return d.degree() - g;
    }
    a_rank(graph, d, &rank_determining_set(graph))
}

/// `rank(d) >= r`, checking only degree `r`.
pub fn rank_at_least(graph: &MetricGraph, d: &Divisor, r: i64) -> bool {
    if r < 0 {
        return true;
    }
    let g = graph.genus() as i64;
    if d.degree() > 2 * g - 2 {
        return d.degree() - g >= r;
    }
    if r > d.degree() {
        return false;
    }
    match effective_representative(graph, d) {
        None => false,
        Some(eff) => all_pass(graph, &eff, &rank_determining_set(graph).points, 0, r as usize),
    }
}

/// `(a_rank, rank)` when they differ, showing that `a` is not rank determining.
pub fn non_rank_determining_witness(graph: &MetricGraph, a: &RankDeterminingSet, d: &Divisor) -> Option<(i64, i64)> {
    let ra = a_rank(graph, d, a);
    let r = rank(graph, d);
    (ra != r).then_some((ra, r))
}

/// An open subset of a graph: a closed subgraph with some of its points
/// removed. Every point where the closed subgraph meets the rest of the
/// graph must be among the removed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSetDescription {
    pub closure: ClosedSubgraph,
    pub boundary: Vec<Point>,
}

/// Whether `u` is connected and every connected component of its complement
/// contains a point with at least two directions into `u`.
pub fn is_special_open(graph: &MetricGraph, u: &OpenSetDescription) -> Result<bool> {
    for p in &u.boundary {
        if !u.closure.contains(graph, p) {
            return Err(Error::MalformedOpenSet(format!(
                "boundary point {} is outside the closure",
                graph.point_name(p)
            )));
        }
    }
    let mut marked: BTreeSet<Point> = u.boundary.iter().cloned().collect();
    for e in 0..graph.edges().len() {
        for (a, b) in u.closure.intervals(e) {
            marked.insert(graph.point_on_edge(e, *a)?);
            marked.insert(graph.point_on_edge(e, *b)?);
        }
    }
    let model = crate::reduction::Model::new(graph, marked.iter());
    let removed: BTreeSet<usize> = u.boundary.iter().map(|p| model.index[p]).collect();
    let node_in = |x: usize| !removed.contains(&x) && u.closure.contains(graph, &model.nodes[x]);
    let seg_in = |s: usize| {
        let seg = &model.segments[s];
        let mid = (seg.a + seg.b) / Rational::from_integer(2);
        u.closure.contains(
            graph,
            &graph.point_on_edge(seg.edge, mid).expect("midpoint lies on the edge"),
        )
    };
    let n = model.nodes.len();
    let m = model.segments.len();
    let inside_nodes: Vec<bool> = (0..n).map(node_in).collect();
    let inside_segs: Vec<bool> = (0..m).map(seg_in).collect();
    for (x, adj) in model.adj.iter().enumerate() {
        if inside_nodes[x] && adj.iter().any(|&(s, _)| !inside_segs[s]) {
            return Err(Error::MalformedOpenSet(format!(
                "{} touches the complement but is not a boundary point",
                graph.point_name(&model.nodes[x])
            )));
        }
    }
    // Union-find over nodes (0..n) and segments (n..n+m), joining pieces on
    // the same side.
    let mut uf = UnionFind::new(n + m);
    for (s, seg) in model.segments.iter().enumerate() {
        for x in [seg.ends.0, seg.ends.1] {
            if inside_segs[s] == inside_nodes[x] {
                uf.union(n + s, x);
            }
        }
    }
    let side = |i: usize| if i < n { inside_nodes[i] } else { inside_segs[i - n] };
    let inside_roots: BTreeSet<usize> = (0..n + m).filter(|&i| side(i)).map(|i| uf.find(i)).collect();
    if inside_roots.len() != 1 {
        return Err(Error::MalformedOpenSet(format!(
            "interior has {} connected components",
            inside_roots.len()
        )));
    }
    let mut good: BTreeSet<usize> = BTreeSet::new();
    let mut outside_roots: BTreeSet<usize> = BTreeSet::new();
    for x in (0..n).filter(|&x| !inside_nodes[x]) {
        let root = uf.find(x);
        outside_roots.insert(root);
        let into = model.adj[x].iter().filter(|&&(s, _)| inside_segs[s]).count();
        if into >= 2 {
            good.insert(root);
        }
    }
    for s in (0..m).filter(|&s| !inside_segs[s]) {
        outside_roots.insert(uf.find(n + s));
    }
    Ok(outside_roots.is_subset(&good))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
