//! Abel–Jacobi coordinates and Brill–Noether computations on grids.
//!
//! `Jac(Γ)` is modelled as `R^g / Z^g` in the basis of fundamental cycles
//! of a spanning tree: the point `p` maps to the coordinates `x` with
//! `M x = b`, where `M` is the length-weighted Gram matrix of the cycles
//! and `b` pairs the tree path from the basepoint to `p` with each cycle.

mod bn;
mod scan;
mod sweep;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::graph::{Divisor, MetricGraph, Point};
use crate::rational::{self, Rational};

pub use bn::{bn_rank, bn_rank_from_scan, verify_witness, w13_case_check, BnRankCertificate, CaseReport, Witness};
pub use scan::{linsys_enum, scan_wrd, scan_wrd_exhaustive, ScanClass, WrdScan, DEFAULT_LATTICE_BUDGET};
pub use sweep::{family_sweep, FamilySpec, SweepFamily, SweepRow};

/// A point of `R^g / Z^g`, coordinates in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint(Vec<Rational>);

impl TorusPoint {
    pub fn new(coords: impl IntoIterator<Item = Rational>) -> Self {
        TorusPoint(coords.into_iter().map(|x| rational::fract_mod1(&x)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `other - self` with each coordinate in `(-1/2, 1/2]`.
    pub fn difference(&self, other: &TorusPoint) -> Vec<Rational> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| rational::centered_mod1(&(b - a)))
            .collect()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(rational::format))
    }
}

/// Spanning tree, cycle basis and Gram matrix for the Abel–Jacobi map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianBasis {
    pub basepoint: usize,
    /// Whether each edge lies in the spanning tree.
    pub tree: Vec<bool>,
    /// Non-tree edges in edge-id order; cycle `i` closes up edge `cycle_edges[i]`.
    pub cycle_edges: Vec<usize>,
    /// `cycles[i][e]`: signed multiplicity of edge `e` in cycle `i`.
    pub cycles: Vec<Vec<i64>>,
    pub gram: Vec<Vec<Rational>>,
    gram_inv: Vec<Vec<Rational>>,
    /// Signed tree path from the basepoint to each vertex, per edge.
    paths: Vec<Vec<i64>>,
}

impl JacobianBasis {
    pub fn genus(&self) -> usize {
        self.cycle_edges.len()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.gram)
    }

    /// `sum_e path(e) c_i(e) L_e` for the chain `path`, plus `extra` on edge `e0`.
    fn pairing(&self, graph: &MetricGraph, path: &[i64], partial: Option<(usize, Rational)>) -> Vec<Rational> {
        self.cycles
            .iter()
            .map(|c| {
                let mut acc = Rational::zero();
                for (e, edge) in graph.edges().iter().enumerate() {
                    if path[e] != 0 && c[e] != 0 {
                        acc += edge.length * Rational::from_integer((path[e] * c[e]) as i128);
                    }
                }
                if let Some((e, s)) = partial {
                    acc += s * Rational::from_integer(c[e] as i128);
                }
                acc
            })
            .collect()
    }

    fn solve(&self, b: &[Rational]) -> Vec<Rational> {
        self.gram_inv
            .iter()
            .map(|row| row.iter().zip(b).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Unreduced coordinates of `p - basepoint`.
    pub fn lift(&self, graph: &MetricGraph, p: &Point) -> Vec<Rational> {
        let b = match p {
            Point::Vertex(v) => self.pairing(graph, &self.paths[*v], None),
            Point::Edge { edge, offset } => {
                let tail = graph.edge(*edge).ends.0;
                self.pairing(graph, &self.paths[tail], Some((*edge, *offset)))
            }
        };
        self.solve(&b)
    }

    /// Change of coordinates when a point moves a distance `h` toward the
    /// head of edge `e`.
    pub fn edge_step(&self, e: usize, h: Rational) -> Vec<Rational> {
        let b: Vec<Rational> = self
            .cycles
            .iter()
            .map(|c| h * Rational::from_integer(c[e] as i128))
            .collect();
        self.solve(&b)
    }
}

/// Spanning tree by edge id order, then fundamental cycles of the rest.
pub fn jacobian_basis(graph: &MetricGraph, basepoint: usize) -> JacobianBasis {
    let m = graph.edges().len();
    let n = graph.vertex_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| graph.edge(a).id.cmp(&graph.edge(b).id));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree = vec![false; m];
    let mut cycle_edges = Vec::new();
    for &e in &order {
        let (a, b) = graph.edge(e).ends;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            cycle_edges.push(e);
        } else {
            parent[ra] = rb;
            tree[e] = true;
        }
    }
    // Tree paths from the basepoint, as signed edge chains.
    let mut paths: Vec<Option<Vec<i64>>> = vec![None; n];
    paths[basepoint] = Some(vec![0; m]);
    let mut stack = vec![basepoint];
    while let Some(x) = stack.pop() {
        for &(e, end) in graph.incidence(x) {
            if !tree[e] {
                continue;
            }
            let edge = graph.edge(e);
            let (y, sign) = match end {
                crate::graph::End::Tail => (edge.ends.1, 1),
                crate::graph::End::Head => (edge.ends.0, -1),
            };
            if paths[y].is_none() {
                let mut p = paths[x].clone().unwrap();
                p[e] += sign;
                paths[y] = Some(p);
                stack.push(y);
            }
        }
    }
    let paths: Vec<Vec<i64>> = paths.into_iter().map(|p| p.expect("graph is connected")).collect();
    let cycles: Vec<Vec<i64>> = cycle_edges
        .iter()
        .map(|&e| {
            let (a, b) = graph.edge(e).ends;
            let mut c: Vec<i64> = (0..m).map(|i| paths[a][i] - paths[b][i]).collect();
            c[e] += 1;
            c
        })
        .collect();
    let gram: Vec<Vec<Rational>> = cycles
        .iter()
        .map(|ci| {
            cycles
                .iter()
                .map(|cj| {
                    graph
                        .edges()
                        .iter()
                        .enumerate()
                        .map(|(e, edge)| edge.length * Rational::from_integer((ci[e] * cj[e]) as i128))
                        .sum()
                })
                .collect()
        })
        .collect();
    let gram_inv = invert(&gram).expect("Gram matrix of a cycle basis is positive definite");
    JacobianBasis {
        basepoint,
        tree,
        cycle_edges,
        cycles,
        gram,
        gram_inv,
        paths,
    }
}

/// Basis at the canonical basepoint.
pub fn canonical_basis(graph: &MetricGraph) -> JacobianBasis {
    let Point::Vertex(v) = graph.canonical_basepoint() else {
        unreachable!("the canonical basepoint is a vertex")
    };
    jacobian_basis(graph, v)
}

/// `sum_p d(p) Φ_w(p)` reduced modulo the lattice.
pub fn abel_jacobi(graph: &MetricGraph, basis: &JacobianBasis, d: &Divisor) -> TorusPoint {
    let mut acc = vec![Rational::zero(); basis.genus()];
    for (p, c) in d.iter() {
        let k = Rational::from_integer(c as i128);
        for (a, x) in acc.iter_mut().zip(basis.lift(graph, p)) {
            *a += k * x;
        }
    }
    TorusPoint::new(acc)
}

/// Gauss–Jordan inverse; `None` if singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub(crate) fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    det
}

/// Dimension of the rational span of `vectors`.
pub(crate) fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col] / rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests;
