//! Finite-graph divisor theory on subdivisions of a metric graph.
//!
//! This module shares nothing with the metric algorithms beyond the graph
//! type. It reduces divisors by chip-firing vertex sets on an ordinary
//! multigraph and computes ranks by enumerating every effective divisor of
//! the required degree, so it can serve as an independent check.

use std::collections::VecDeque;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Divisor, MetricGraph, Point};
use crate::rational::{self, Rational};

/// Default cap on the number of effective divisors [`finite_rank`] visits.
pub const DEFAULT_RANK_BUDGET: u128 = 20_000_000;

/// Integer coefficient per vertex of a [`FiniteGraph`].
pub type FiniteDivisor = Vec<i64>;

/// Connected multigraph with unit edges. Loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let g = FiniteGraph {
            adj,
            edge_count: edges.len(),
        };
        if g.distances(0).iter().any(|d| d.is_none()) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn genus(&self) -> usize {
        self.edge_count + 1 - self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `K_G = sum (valence(v) - 2) v`.
    pub fn canonical_divisor(&self) -> FiniteDivisor {
        (0..self.vertex_count()).map(|v| self.valence(v) as i64 - 2).collect()
    }

    fn distances(&self, q: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[q] = Some(0);
        let mut queue = VecDeque::from([q]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Fires every vertex of `set` `times` times.
    fn fire_set(&self, d: &mut [i64], set: &[bool], times: i64) {
        for (x, nbrs) in self.adj.iter().enumerate() {
            if !set[x] {
                continue;
            }
            for &y in nbrs {
                if !set[y] {
                    d[x] -= times;
                    d[y] += times;
                }
            }
        }
    }

    /// Dhar's burning algorithm from `q`; returns the unburnt vertex set.
    fn unburnt(&self, d: &[i64], q: usize) -> Vec<bool> {
        let n = self.adj.len();
        let mut burnt = vec![false; n];
        let mut hits = vec![0i64; n];
        burnt[q] = true;
        let mut stack = vec![q];
        while let Some(y) = stack.pop() {
            for &x in &self.adj[y] {
                if burnt[x] {
                    continue;
                }
                hits[x] += 1;
                if hits[x] > d[x] {
                    burnt[x] = true;
                    stack.push(x);
                }
            }
        }
        burnt.iter().map(|b| !b).collect()
    }
}

/// The unique `q`-reduced divisor equivalent to `d`.
pub fn finite_reduce(g: &FiniteGraph, d: &[i64], q: usize) -> FiniteDivisor {
    let mut d = d.to_vec();
    let dist: Vec<usize> = g.distances(q).into_iter().map(Option::unwrap).collect();
    let far = dist.iter().copied().max().unwrap_or(0);
    // Clear debts level by level, farthest first, by firing the ball just
    // inside the level. Later firings only touch nearer levels.
    for k in (1..=far).rev() {
        let mut times = 0i64;
        for x in (0..d.len()).filter(|&x| dist[x] == k && d[x] < 0) {
            let inward = g.adj[x].iter().filter(|&&y| dist[y] + 1 == k).count() as i64;
            times = times.max(Integer::div_ceil(&(-d[x]), &inward));
        }
        if times > 0 {
            let ball: Vec<bool> = dist.iter().map(|&dx| dx < k).collect();
            g.fire_set(&mut d, &ball, times);
        }
    }
    loop {
        let set = g.unburnt(&d, q);
        let mut times = i64::MAX;
        for (x, nbrs) in g.adj.iter().enumerate() {
            if !set[x] {
                continue;
            }
            let out = nbrs.iter().filter(|&&y| !set[y]).count() as i64;
            if out > 0 {
                times = times.min(d[x] / out);
            }
        }
        if times == i64::MAX {
            return d;
        }
        g.fire_set(&mut d, &set, times);
    }
}

fn has_effective_representative(g: &FiniteGraph, d: &[i64]) -> bool {
    d.iter().sum::<i64>() >= 0 && finite_reduce(g, d, 0)[0] >= 0
}

fn multisets(n: u128, r: u128) -> u128 {
    // C(n + r - 1, r), saturating.
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(n + i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Whether `d - E` is equivalent to an effective divisor for every
/// effective `E` of degree `depth` built from vertices `>= start`.
fn all_pass(g: &FiniteGraph, d: &[i64], start: usize, depth: usize) -> bool {
    if depth == 0 {
        return true;
    }
    (start..g.vertex_count()).all(|x| {
        let mut e = d.to_vec();
        e[x] -= 1;
        let reduced = finite_reduce(g, &e, 0);
        reduced[0] >= 0 && all_pass(g, &reduced, x, depth - 1)
    })
}

/// Baker–Norine rank by exhaustive enumeration of effective divisors `E`
/// over all vertices.
pub fn finite_rank(g: &FiniteGraph, d: &[i64], budget: u128) -> Result<i64> {
    if !has_effective_representative(g, d) {
        return Ok(-1);
    }
    let deg: i64 = d.iter().sum();
    let n = g.vertex_count() as u128;
    let mut spent: u128 = 0;
    let start = finite_reduce(g, d, 0);
    for r in 1..=deg {
        spent = spent.saturating_add(multisets(n, r as u128));
        if spent > budget {
            return Err(Error::ResourceBudgetExceeded { needed: spent, budget });
        }
        if !all_pass(g, &start, 0, r as usize) {
            return Ok(r - 1);
        }
    }
    Ok(deg)
}

/// A subdivision of a metric graph into unit edges, with the map between
/// lattice points and finite vertices.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub finite: FiniteGraph,
    /// Subdivision vertices per unit of original length.
    pub scale: i128,
    /// First interior vertex of each edge and the number of unit pieces.
    edge_base: Vec<(usize, i128)>,
    points: Vec<Point>,
}

impl Subdivision {
    /// Metric point of each finite vertex.
    pub fn point(&self, v: usize) -> &Point {
        &self.points[v]
    }

    pub fn vertex_of(&self, p: &Point) -> Result<usize> {
        match p {
            Point::Vertex(v) => Ok(*v),
            Point::Edge { edge, offset } => {
                let k = offset * Rational::from_integer(self.scale);
                if !k.is_integer() {
                    return Err(Error::IncompatibleDenominator(format!(
                        "offset {} is not a multiple of 1/{}",
                        rational::format(offset),
                        self.scale
                    )));
                }
                let (base, _) = self.edge_base[*edge];
                Ok(base + (k.to_integer() - 1) as usize)
            }
        }
    }

    pub fn map_divisor(&self, d: &Divisor) -> Result<FiniteDivisor> {
        let mut out = vec![0i64; self.finite.vertex_count()];
        for (p, c) in d.iter() {
            out[self.vertex_of(p)?] += c;
        }
        Ok(out)
    }

    pub fn lift(&self, d: &[i64]) -> Divisor {
        Divisor::from_terms(d.iter().enumerate().map(|(v, &c)| (self.points[v].clone(), c)))
    }
}

/// Scales lengths to integers by their common denominator `D` and cuts every
/// edge into unit pieces of original length `1/(D·q)`.
pub fn subdivide(graph: &MetricGraph, q: u64) -> Result<Subdivision> {
    if q == 0 {
        return Err(Error::IncompatibleDenominator("resolution must be positive".into()));
    }
    let scale = graph.length_denominator() * q as i128;
    let mut points: Vec<Point> = (0..graph.vertex_count()).map(Point::Vertex).collect();
    let mut edges = Vec::new();
    let mut edge_base = Vec::with_capacity(graph.edges().len());
    for (e, edge) in graph.edges().iter().enumerate() {
        let units = (edge.length * Rational::from_integer(scale)).to_integer();
        let base = points.len();
        edge_base.push((base, units));
        let mut prev = edge.ends.0;
        for k in 1..units {
            let v = points.len();
            points.push(Point::Edge {
                edge: e,
                offset: Rational::new(k, scale),
            });
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, edge.ends.1));
    }
    let finite = FiniteGraph::new(points.len(), &edges)?;
    Ok(Subdivision {
        finite,
        scale,
        edge_base,
        points,
    })
}

/// Smallest resolution whose lattice contains every point of the support.
pub fn resolution_for<'a>(graph: &MetricGraph, points: impl IntoIterator<Item = &'a Point>) -> u64 {
    let base = Rational::from_integer(graph.length_denominator());
    let scaled: Vec<Rational> = points
        .into_iter()
        .filter_map(|p| match p {
            Point::Edge { offset, .. } => Some(offset * base),
            Point::Vertex(_) => None,
        })
        .collect();
    rational::common_denominator(&scaled) as u64
}

/// Reduces `d` at `q` on the coarsest subdivision containing both.
pub fn reduce_on_subdivision(graph: &MetricGraph, d: &Divisor, q: &Point) -> Divisor {
    let res = resolution_for(graph, d.support().chain(std::iter::once(q)));
    let sub = subdivide(graph, res).expect("resolution is positive");
    let fd = sub.map_divisor(d).expect("support lies on the lattice");
    let qv = sub.vertex_of(q).expect("basepoint lies on the lattice");
    sub.lift(&finite_reduce(&sub.finite, &fd, qv))
}

/// Ranks of one divisor from the metric and the finite computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub metric_rank: i64,
    pub finite_rank: i64,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.metric_rank == self.finite_rank
    }
}

/// Compares the metric rank of `d` with the finite rank of its image on the
/// subdivision at resolution `q`.
pub fn cross_check(graph: &MetricGraph, d: &Divisor, q: u64, budget: u128) -> Result<CrossCheck> {
    let sub = subdivide(graph, q)?;
    let fd = sub.map_divisor(d)?;
    let finite_rank = finite_rank(&sub.finite, &fd, budget)?;
    Ok(CrossCheck {
        metric_rank: crate::rank::rank(graph, d),
        finite_rank,
    })
}

/// Cross-checks many divisors in parallel. Results keep the input order.
pub fn cross_check_all(graph: &MetricGraph, ds: &[Divisor], q: u64, budget: u128) -> Vec<Result<CrossCheck>> {
    ds.par_iter().map(|d| cross_check(graph, d, q, budget)).collect()
}
