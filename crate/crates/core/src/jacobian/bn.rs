//! Brill–Noether rank certificates and the case analysis for `v1 + w1 + w`.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::scan::{scan_wrd, WrdScan};
use crate::error::{Error, Result};
use crate::graph::{io, ClosedSubgraph, Divisor, MetricGraph, Point};
use crate::lattice::{count_multisets, for_each_multiset, par_find_first_multiset, par_find_first_subset, Lattice};
use crate::rank::{dominates, rank, rank_at_least};
use crate::rational::{self, Rational};
use crate::reduction::{dhar_burn, fire_subgraph};

/// An effective `E` of degree `r + ρ + 1` lying under no grid divisor of
/// degree `d` and rank at least `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub divisor: Divisor,
    /// Grid classes of `W^r_d` ruled out for `E`.
    pub classes_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnRankCertificate {
    pub r: usize,
    pub d: i64,
    pub q: u64,
    /// The Brill–Noether rank at resolution `q`.
    pub rho: i64,
    /// Number of grid divisors `E` of degree `r + ρ` checked, each lying
    /// under some rank-`r` grid divisor. Zero when `ρ = -1`.
    pub verified_count: u128,
    pub witness: Option<Witness>,
}

impl BnRankCertificate {
    pub fn to_json(&self, graph: &MetricGraph) -> Value {
        json!({
            "r": self.r,
            "d": self.d,
            "q": self.q,
            "rho": self.rho,
            "verified_at_resolution": {
                "q": self.q,
                "degree": self.r as i64 + self.rho,
                "count": self.verified_count.to_string(),
            },
            "falsified_with_witness": self.witness.as_ref().map(|w| json!({
                "divisor": io::divisor_entries(graph, &w.divisor),
                "display": w.divisor.display(graph),
                "classes_checked": w.classes_checked,
            })),
        })
    }
}

/// Largest `ρ` such that every grid `E` of degree `r + ρ` lies under a
/// grid divisor of degree `d` and rank at least `r`, searched upward.
///
/// At each level the grid divisors with distinct points are tried first in
/// lexicographic order, then all multisets in lexicographic order.
pub fn bn_rank(graph: &MetricGraph, r: usize, d: i64, q: u64, budget: u128) -> Result<BnRankCertificate> {
    let scan = scan_wrd(graph, r, d, q, budget)?;
    bn_rank_from_scan(graph, &scan, budget)
}

/// [`bn_rank`] reusing the classes of an existing scan.
pub fn bn_rank_from_scan(graph: &MetricGraph, scan: &WrdScan, budget: u128) -> Result<BnRankCertificate> {
    let lat = Lattice::new(graph, scan.q);
    let reps: Vec<&Divisor> = scan.classes.iter().map(|c| &c.key.divisor).collect();
    let mut cert = BnRankCertificate {
        r: scan.r,
        d: scan.d,
        q: scan.q,
        rho: -1,
        verified_count: 0,
        witness: None,
    };
    let mut level = scan.r;
    loop {
        let failing = if level as i64 > scan.d || reps.is_empty() {
            Some(vec![0; level])
        } else {
            let needed = count_multisets(lat.len(), level);
            if needed > budget {
                return Err(Error::ResourceBudgetExceeded { needed, budget });
            }
            let uncovered = |idx: &[usize]| {
                let e: Vec<Point> = idx.iter().map(|&i| lat.points()[i].clone()).collect();
                !reps.iter().any(|c| dominates(graph, c, &e))
            };
            // Divisors of distinct points first, so a witness names distinct
            // points whenever one exists; then everything else.
            let found = par_find_first_subset(lat.len(), level, uncovered)
                .or_else(|| par_find_first_multiset(lat.len(), level, uncovered));
            if found.is_none() {
                cert.verified_count = needed;
            }
            found
        };
        if let Some(idx) = failing {
            cert.rho = level as i64 - scan.r as i64 - 1;
            cert.witness = Some(Witness {
                divisor: lat.divisor(&idx),
                classes_checked: reps.len(),
            });
            if cert.rho < 0 {
                cert.verified_count = 0;
            }
            return Ok(cert);
        }
        level += 1;
    }
}

/// Re-checks a witness directly: no grid `F` of the complementary degree
/// makes `E + F` a divisor of rank at least `r`. Returns the number of `F`
/// examined.
pub fn verify_witness(graph: &MetricGraph, cert: &BnRankCertificate, budget: u128) -> Result<Option<u128>> {
    let Some(w) = &cert.witness else {
        return Ok(None);
    };
    let k = cert.d - w.divisor.degree();
    if k < 0 {
        return Ok(Some(0));
    }
    let lat = Lattice::new(graph, cert.q);
    let needed = count_multisets(lat.len(), k as usize);
    if needed > budget {
        return Err(Error::ResourceBudgetExceeded { needed, budget });
    }
    let firsts: Vec<usize> = (0..lat.len().max(1)).collect();
    let ok = if k == 0 {
        !rank_at_least(graph, &w.divisor, cert.r as i64)
    } else {
        firsts.par_iter().all(|&first| {
            for_each_multiset(lat.len(), k as usize - 1, first, &mut |rest| {
                let mut f = lat.divisor(rest);
                f.add_at(lat.points()[first].clone(), 1);
                !rank_at_least(graph, &(&w.divisor + &f), cert.r as i64)
            })
        })
    };
    Ok(ok.then_some(needed))
}

/// Outcome of the case analysis for `D = v1 + w1 + w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case: u8,
    /// The basepoint at which the (possibly fired) divisor is reduced and
    /// has no chip.
    pub basepoint: Point,
    /// The divisor checked at `basepoint`, equivalent to `D`.
    pub reduced: Divisor,
    /// Firing time used, if any.
    pub fired_for: Option<Rational>,
    pub rank: i64,
}

impl CaseReport {
    pub fn to_json(&self, graph: &MetricGraph) -> Value {
        json!({
            "case": self.case,
            "basepoint": graph.point_name(&self.basepoint),
            "reduced": io::divisor_entries(graph, &self.reduced),
            "fired_for": self.fired_for.map(|t| rational::format(&t)),
            "rank": self.rank,
        })
    }
}

fn bad_graph(reason: &str) -> Error {
    Error::BadFamilyParameters {
        family: "loop-of-loops".into(),
        reason: reason.into(),
    }
}

/// Shows `rank(v1 + w1 + w) = 0` on a genus-4 loop of loops whose first
/// single edge is longest.
///
/// * `w` on `[v1, w1]` or inside a doubled edge: `D` is `v2`-reduced with no
///   chip at `v2`.
/// * `w` on `[v2, w2]`: firing the loop between `w1` and `v2` together with
///   `[v2, w]` until `w` reaches `w2` gives a `v3`-reduced divisor with no
///   chip at `v3`.
/// * `w` on `[v3, w3]`: firing the loop between `w3` and `v1` together with
///   `[w, w3]` until `w` reaches `v3` gives a `v2`-reduced divisor with no
///   chip at `v2`.
pub fn w13_case_check(graph: &MetricGraph, w: &Point) -> Result<CaseReport> {
    let id = |s: &str| {
        graph
            .edge_by_id(s)
            .map_err(|_| bad_graph("not a genus-4 loop of loops"))
    };
    let (e1, e2, e3) = (id("v1w1")?, id("v2w2")?, id("v3w3")?);
    for s in ["w1v2a", "w1v2b", "w2v3a", "w2v3b", "w3v1a", "w3v1b"] {
        id(s)?;
    }
    if graph.genus() != 4 {
        return Err(bad_graph("not a genus-4 loop of loops"));
    }
    let len = |e: usize| graph.edge(e).length;
    if len(e1) < len(e2) || len(e1) < len(e3) {
        return Err(bad_graph("the first single edge must be longest"));
    }
    let v = |s: &str| graph.vp(s);
    let (case, offset) = match w {
        Point::Vertex(_) if [v("v1"), v("w1")].contains(w) => (1, None),
        Point::Vertex(_) if *w == v("v2") => (2, Some(Rational::from_integer(0))),
        Point::Vertex(_) if *w == v("w2") => (2, Some(len(e2))),
        Point::Vertex(_) if *w == v("v3") => (3, Some(Rational::from_integer(0))),
        Point::Vertex(_) if *w == v("w3") => (3, Some(len(e3))),
        Point::Edge { edge, offset } if *edge == e2 => (2, Some(*offset)),
        Point::Edge { edge, offset } if *edge == e3 => (3, Some(*offset)),
        Point::Edge { .. } => (1, None),
        Point::Vertex(_) => return Err(bad_graph("unexpected vertex")),
    };
    let d = &Divisor::from_points(&[v("v1"), v("w1")]) + &Divisor::point(w.clone());
    let (basepoint, fired, t) = match (case, offset) {
        (1, _) => (v("v2"), d.clone(), None),
        (2, Some(s)) => {
            let t = len(e2) - s;
            let fired = if t > Rational::from_integer(0) {
                let sub = ClosedSubgraph::from_edge_ids(graph, &["w1v2a", "w1v2b"])?.with_interval(
                    graph,
                    e2,
                    Rational::from_integer(0),
                    s,
                )?;
                fire_subgraph(graph, &d, &sub, t)?
            } else {
                d.clone()
            };
            (v("v3"), fired, Some(t))
        }
        (3, Some(s)) => {
            let fired = if s > Rational::from_integer(0) {
                let sub =
                    ClosedSubgraph::from_edge_ids(graph, &["w3v1a", "w3v1b"])?.with_interval(graph, e3, s, len(e3))?;
                fire_subgraph(graph, &d, &sub, s)?
            } else {
                d.clone()
            };
            (v("v2"), fired, Some(s))
        }
        _ => unreachable!(),
    };
    if fired.coeff(&basepoint) != 0 {
        return Err(Error::CaseMismatch(format!(
            "case {case}: divisor has a chip at {}",
            graph.point_name(&basepoint)
        )));
    }
    if !dhar_burn(graph, &fired, &basepoint)?.is_reduced() {
        return Err(Error::CaseMismatch(format!(
            "case {case}: divisor is not {}-reduced",
            graph.point_name(&basepoint)
        )));
    }
    let rk = rank(graph, &d);
    if rk != 0 {
        return Err(Error::CaseMismatch(format!("case {case}: rank is {rk}, expected 0")));
    }
    Ok(CaseReport {
        case,
        basepoint,
        reduced: fired,
        fired_for: t.filter(|t| *t > Rational::from_integer(0)),
        rank: rk,
    })
}
