//! Grid scans of Brill–Noether loci and complete linear systems.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{abel_jacobi, canonical_basis, span_rank, TorusPoint};
use crate::error::{Error, Result};
use crate::graph::{io, Divisor, MetricGraph, Point};
use crate::lattice::{count_multisets, par_filter_map_multisets, Lattice};
use crate::rank::rank_at_least;
use crate::rational::Rational;
use crate::reduction::{class_key, effective_representative, ReducedForm};

/// Default cap on the number of lattice candidates a scan may visit.
pub const DEFAULT_LATTICE_BUDGET: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanClass {
    /// Reduced form at the canonical basepoint.
    pub key: ReducedForm,
    pub aj: TorusPoint,
}

/// Classes of degree `d` and rank at least `r` that have a representative
/// on the lattice at resolution `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrdScan {
    pub r: usize,
    pub d: i64,
    pub q: u64,
    pub classes: Vec<ScanClass>,
    /// Index pairs `(i, j)`, `i < j`, of classes with grid representatives
    /// one grid step apart.
    pub adjacency: Vec<(usize, usize)>,
    /// Largest local dimension over all classes; `-1` when there are none.
    pub dim_estimate: i64,
    /// Lattice divisors examined.
    pub candidates: u128,
}

impl WrdScan {
    pub fn to_json(&self, graph: &MetricGraph) -> Value {
        json!({
            "r": self.r,
            "d": self.d,
            "q": self.q,
            "classes": self.classes.iter().map(|c| json!({
                "reduced": io::divisor_entries(graph, &c.key.divisor),
                "aj": c.aj,
            })).collect::<Vec<_>>(),
            "adjacency": self.adjacency,
            "dim_estimate": self.dim_estimate,
            "candidates": self.candidates.to_string(),
        })
    }

    pub fn index_of(&self, key: &ReducedForm) -> Option<usize> {
        self.classes.iter().position(|c| &c.key == key)
    }
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::ResourceBudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

fn empty_scan(r: usize, d: i64, q: u64) -> WrdScan {
    WrdScan {
        r,
        d,
        q,
        classes: Vec::new(),
        adjacency: Vec::new(),
        dim_estimate: -1,
        candidates: 0,
    }
}

/// Scans `W^r_d` on the lattice at resolution `q`.
///
/// Every grid class of rank at least `r` has a reduced form at the
/// canonical basepoint `a` of the shape `r·a + F` with `F` effective and on
/// the lattice, so only those candidates are enumerated.
pub fn scan_wrd(graph: &MetricGraph, r: usize, d: i64, q: u64, budget: u128) -> Result<WrdScan> {
    if d < 0 || r as i64 > d {
        return Ok(empty_scan(r, d, q));
    }
    let lat = Lattice::new(graph, q);
    let k = (d - r as i64) as usize;
    let candidates = count_multisets(lat.len(), k);
    check_budget(candidates, budget)?;
    let a = graph.canonical_basepoint();
    let keys = par_filter_map_multisets(lat.len(), k, |idx| {
        let mut div = lat.divisor(idx);
        div.add_at(a.clone(), r as i64);
        Some(class_key(graph, &div))
    });
    Ok(finish(graph, r, d, &lat, keys, candidates))
}

/// [`scan_wrd`] over every effective degree-`d` lattice divisor.
pub fn scan_wrd_exhaustive(graph: &MetricGraph, r: usize, d: i64, q: u64, budget: u128) -> Result<WrdScan> {
    if d < 0 || r as i64 > d {
        return Ok(empty_scan(r, d, q));
    }
    let lat = Lattice::new(graph, q);
    let candidates = count_multisets(lat.len(), d as usize);
    check_budget(candidates, budget)?;
    let keys = par_filter_map_multisets(lat.len(), d as usize, |idx| Some(class_key(graph, &lat.divisor(idx))));
    Ok(finish(graph, r, d, &lat, keys, candidates))
}

fn finish(
    graph: &MetricGraph,
    r: usize,
    d: i64,
    lat: &Lattice,
    mut keys: Vec<ReducedForm>,
    candidates: u128,
) -> WrdScan {
    keys.par_sort();
    keys.dedup();
    let keys: Vec<ReducedForm> = keys
        .into_par_iter()
        .filter(|k| rank_at_least(graph, &k.divisor, r as i64))
        .collect();
    let basis = canonical_basis(graph);
    let classes: Vec<ScanClass> = keys
        .into_iter()
        .map(|key| {
            let aj = abel_jacobi(graph, &basis, &key.divisor);
            ScanClass { key, aj }
        })
        .collect();
    let index: HashMap<&ReducedForm, usize> = classes.iter().enumerate().map(|(i, c)| (&c.key, i)).collect();
    let h = lat.step();
    let steps: Vec<Vec<Rational>> = (0..graph.edges().len()).map(|e| basis.edge_step(e, h)).collect();

    // neighbours[i]: (edge, direction, j) for each grid move out of class i.
    let neighbours: Vec<Vec<(usize, i8, usize)>> = classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut out = Vec::new();
            for e in 0..graph.edges().len() {
                for dir in [1i8, -1] {
                    if let Some(j) = step_target(graph, lat, &c.key.divisor, e, dir, &index) {
                        if j != i {
                            out.push((e, dir, j));
                        }
                    }
                }
            }
            out
        })
        .collect();

    let mut adjacency: Vec<(usize, usize)> = neighbours
        .iter()
        .enumerate()
        .flat_map(|(i, ns)| ns.iter().map(move |&(_, _, j)| (i.min(j), i.max(j))))
        .collect();
    adjacency.sort_unstable();
    adjacency.dedup();

    let dim_estimate = neighbours
        .iter()
        .map(|ns| {
            let through: Vec<Vec<Rational>> = (0..graph.edges().len())
                .filter(|&e| {
                    ns.iter().any(|&(f, dir, _)| f == e && dir > 0) && ns.iter().any(|&(f, dir, _)| f == e && dir < 0)
                })
                .map(|e| steps[e].clone())
                .collect();
            let local = span_rank(&through) as i64;
            local.max(i64::from(!ns.is_empty()))
        })
        .max()
        .unwrap_or(-1);

    WrdScan {
        r,
        d,
        q: lat.q,
        classes,
        adjacency,
        dim_estimate,
        candidates,
    }
}

/// The class reached by moving one chip of some effective grid
/// representative of `[div]` one step along edge `e` (toward its head when
/// `dir > 0`), if that class is in `index`.
fn step_target(
    graph: &MetricGraph,
    lat: &Lattice,
    div: &Divisor,
    e: usize,
    dir: i8,
    index: &HashMap<&ReducedForm, usize>,
) -> Option<usize> {
    let h = lat.step();
    let units = (graph.edge(e).length * Rational::from_integer(lat.scale)).to_integer();
    let at = |k: i128| {
        graph
            .point_on_edge(e, h * Rational::from_integer(k))
            .expect("lattice point on edge")
    };
    let moves: Vec<(Point, Point)> = if dir > 0 {
        (0..units).map(|k| (at(k), at(k + 1))).collect()
    } else {
        (1..=units).map(|k| (at(k), at(k - 1))).collect()
    };
    // All moves along one edge shift the class by the same amount.
    let (p, p2) = &moves[0];
    let mut moved = div.clone();
    moved.add_at(p.clone(), -1);
    moved.add_at(p2.clone(), 1);
    let j = *index.get(&class_key(graph, &moved))?;
    let realizable = moves.iter().any(|(p, _)| {
        let mut rest = div.clone();
        rest.add_at(p.clone(), -1);
        effective_representative(graph, &rest).is_some()
    });
    realizable.then_some(j)
}

/// Every effective divisor on the lattice at resolution `q` that is
/// equivalent to `d`, in divisor order.
pub fn linsys_enum(graph: &MetricGraph, d: &Divisor, q: u64, budget: u128) -> Result<Vec<Divisor>> {
    let deg = d.degree();
    if deg < 0 {
        return Ok(Vec::new());
    }
    let lat = Lattice::new(graph, q);
    check_budget(count_multisets(lat.len(), deg as usize), budget)?;
    let key = class_key(graph, d);
    let mut out = par_filter_map_multisets(lat.len(), deg as usize, |idx| {
        let cand = lat.divisor(idx);
        (class_key(graph, &cand) == key).then_some(cand)
    });
    out.sort();
    Ok(out)
}
