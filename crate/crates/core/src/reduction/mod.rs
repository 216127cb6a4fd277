//! Dhar's burning algorithm, subgraph firing and reduced divisors.
//!
//! A divisor `D` is `q`-reduced when it is effective away from `q` and the
//! fire started at `q` burns the whole graph. Every class contains exactly
//! one `q`-reduced divisor, so [`reduce`] gives a canonical class key.

mod model;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{ClosedSubgraph, Divisor, Gap, MetricGraph, PlFunction, Point};
use crate::rational::{self, Rational};

pub(crate) use model::Model;

/// Iterations of the metric burn-and-fire loop before handing the divisor
/// to the finite-graph reduction.
pub const DEFAULT_STEP_BUDGET: usize = 200_000;

/// Outcome of one run of Dhar's burning algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnResult {
    /// The part of the graph the fire never reaches. Empty iff the divisor
    /// is reduced.
    pub unburnt: ClosedSubgraph,
    /// Boundary points of `unburnt` with their out-degree toward the burnt part.
    pub boundary: Vec<(Point, usize)>,
}

impl BurnResult {
    pub fn is_reduced(&self) -> bool {
        self.unburnt.is_empty()
    }
}

/// The unique `basepoint`-reduced divisor of a class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    pub divisor: Divisor,
    pub basepoint: Point,
}

fn node_chips(model: &Model, d: &Divisor) -> Vec<i64> {
    model.nodes.iter().map(|p| d.coeff(p)).collect()
}

fn marked<'a>(d: &'a Divisor, q: &'a Point) -> impl Iterator<Item = &'a Point> {
    d.support().chain(std::iter::once(q))
}

/// Burns from `q`. `d` must be effective away from `q`.
pub fn dhar_burn(graph: &MetricGraph, d: &Divisor, q: &Point) -> Result<BurnResult> {
    if !d.is_effective_away_from(q) {
        return Err(Error::NotEffectiveAwayFromBasepoint);
    }
    let model = Model::new(graph, marked(d, q));
    let chips = node_chips(&model, d);
    let (burnt, hits) = model.burn(&chips, model.index[q]);
    let mut vertices = Vec::new();
    let mut intervals = Vec::new();
    let mut boundary = Vec::new();
    for (i, p) in model.nodes.iter().enumerate() {
        if burnt[i] {
            continue;
        }
        match p {
            Point::Vertex(v) => vertices.push(*v),
            Point::Edge { edge, offset } => intervals.push((*edge, *offset, *offset)),
        }
        if hits[i] > 0 {
            boundary.push((p.clone(), hits[i]));
        }
    }
    for seg in &model.segments {
        if !burnt[seg.ends.0] && !burnt[seg.ends.1] {
            intervals.push((seg.edge, seg.a, seg.b));
        }
    }
    let unburnt = ClosedSubgraph::new(graph, vertices, intervals)?;
    Ok(BurnResult { unburnt, boundary })
}

fn event_limit(s: &ClosedSubgraph, graph: &MetricGraph, d: &Divisor) -> Rational {
    let mut limit: Option<Rational> = None;
    for ray in s.rays(graph) {
        let mut room = ray.room;
        for p in d.support() {
            if let Point::Edge { edge, offset } = p {
                if *edge == ray.edge {
                    if let Some(dist) = ray.distance_to(offset) {
                        room = room.min(dist);
                    }
                }
            }
        }
        limit = Some(limit.map_or(room, |l: Rational| l.min(room)));
    }
    limit.unwrap_or_else(Rational::zero)
}

/// Fires the closed subgraph `s` for time `t`: every boundary point sends
/// one chip a distance `t` along each direction leaving `s`.
///
/// `t` may not exceed the first event: a chip reaching a vertex, a point of
/// the support of `d`, or the chip coming from the other side of the same
/// gap. Arriving exactly at such a point is allowed.
pub fn fire_subgraph(graph: &MetricGraph, d: &Divisor, s: &ClosedSubgraph, t: Rational) -> Result<Divisor> {
    if !rational::is_positive(&t) {
        return Err(Error::NonpositiveFiringTime);
    }
    let rays = s.rays(graph);
    if rays.is_empty() {
        return Ok(d.clone());
    }
    let limit = event_limit(s, graph, d);
    if t > limit {
        return Err(Error::FiringTimeTooLarge {
            requested: rational::format(&t),
            limit: rational::format(&limit),
        });
    }
    for (p, out) in s.boundary(graph) {
        let chips = d.coeff(&p);
        if chips < out as i64 {
            return Err(Error::InsufficientChips {
                point: graph.point_name(&p),
                chips,
                outdegree: out,
            });
        }
    }
    let mut result = d.clone();
    for ray in rays {
        result.add_at(ray.origin.clone(), -1);
        result.add_at(graph.point_on_edge(ray.edge, ray.offset_at(t))?, 1);
    }
    Ok(result)
}

/// `f = -min(dist(., s), t)`, whose divisor is the change made by
/// [`fire_subgraph`]. Requires `t` no larger than the room of every ray.
pub fn firing_function(graph: &MetricGraph, s: &ClosedSubgraph, t: Rational) -> Result<PlFunction> {
    if !rational::is_positive(&t) {
        return Err(Error::NonpositiveFiringTime);
    }
    if let Some(room) = s.rays(graph).iter().map(|r| r.room).min() {
        if t > room {
            return Err(Error::FiringTimeTooLarge {
                requested: rational::format(&t),
                limit: rational::format(&room),
            });
        }
    }
    let zero = Rational::zero();
    let mut pieces = Vec::with_capacity(graph.edges().len());
    for e in 0..graph.edges().len() {
        let len = graph.edge(e).length;
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        let mut push = |x: Rational, y: Rational| {
            if pts.last().is_none_or(|&(px, _)| px != x) {
                pts.push((x, y));
            }
        };
        let mut gaps = s.gaps(graph, e).into_iter().peekable();
        for (a, b) in s.coverage(graph, e) {
            while let Some(gap) = gaps.next_if(|g| g.b <= a) {
                gap_points(&gap, t, &mut push);
            }
            push(a, zero);
            push(b, zero);
        }
        for gap in gaps {
            gap_points(&gap, t, &mut push);
        }
        if pts.last().is_none_or(|&(x, _)| x != len) {
            pts.push((len, -t));
        }
        pieces.push(pts);
    }
    Ok(PlFunction::from_breakpoints(pieces))
}

fn gap_points(gap: &Gap, t: Rational, push: &mut impl FnMut(Rational, Rational)) {
    let zero = Rational::zero();
    if gap.left_covered {
        push(gap.a, zero);
        push(gap.a + t, -t);
    } else {
        push(gap.a, -t);
    }
    if gap.right_covered {
        push(gap.b - t, -t);
        push(gap.b, zero);
    } else {
        push(gap.b, -t);
    }
}

/// Runs the metric burn-and-fire loop on a divisor effective away from `q`.
/// Returns `None` if the loop does not finish within `budget` steps.
fn reduce_effective(graph: &MetricGraph, d: &Divisor, q: &Point, budget: usize) -> Option<Divisor> {
    let mut d = d.clone();
    for _ in 0..budget {
        let model = Model::new(graph, marked(&d, q));
        let chips = node_chips(&model, &d);
        let (burnt, _) = model.burn(&chips, model.index[q]);
        if burnt.iter().all(|&b| b) {
            return Some(d);
        }
        // Directions from unburnt nodes into burnt segments. The far end of
        // such a segment is burnt, so no two moving chips share a segment.
        let mut moves = Vec::new();
        for (x, ends) in model.adj.iter().enumerate() {
            if burnt[x] {
                continue;
            }
            for &(s, end) in ends {
                if burnt[model.other_end(s, end)] {
                    moves.push((x, s, end));
                }
            }
        }
        let t = moves
            .iter()
            .map(|&(_, s, _)| model.segments[s].length())
            .min()
            .expect("an unburnt node next to a burnt one exists");
        for (x, s, end) in moves {
            let seg = &model.segments[s];
            d.add_at(model.nodes[x].clone(), -1);
            let p = graph
                .point_on_edge(seg.edge, seg.offset_from(end, t))
                .expect("firing stays inside the segment");
            d.add_at(p, 1);
        }
    }
    None
}

/// Replaces negative coefficients away from `q` by an equivalent effective
/// part, moving the debt onto `q`.
///
/// For a point `p` the `p`-reduced form `R` of `(g+1)q` has degree above the
/// genus, so its coefficient at `p` is at least one. Adding
/// `c·(R - (g+1)q)` therefore clears a debt of `c` at `p` and leaves the
/// class unchanged.
fn settle_debts(graph: &MetricGraph, d: &Divisor, q: &Point, budget: usize) -> Option<Divisor> {
    let debts: Vec<(Point, i64)> = d
        .iter()
        .filter(|(p, c)| *p != q && *c < 0)
        .map(|(p, c)| (p.clone(), -c))
        .collect();
    let g1 = graph.genus() as i64 + 1;
    let mut out = d.clone();
    for (p, c) in debts {
        let big = Divisor::from_terms([(q.clone(), g1)]);
        let r = reduce_effective(graph, &big, &p, budget)?;
        debug_assert!(r.coeff(&p) >= 1);
        out += &r.scaled_by(c);
        out.add_at(q.clone(), -c * g1);
    }
    Some(out)
}

/// The `q`-reduced divisor equivalent to `d`.
pub fn reduce(graph: &MetricGraph, d: &Divisor, q: &Point) -> ReducedForm {
    reduce_with_budget(graph, d, q, DEFAULT_STEP_BUDGET)
}

/// [`reduce`] with an explicit step budget for the metric loop. When the
/// budget runs out the divisor is reduced on a subdivision of the graph.
pub fn reduce_with_budget(graph: &MetricGraph, d: &Divisor, q: &Point, budget: usize) -> ReducedForm {
    let metric = settle_debts(graph, d, q, budget).and_then(|e| reduce_effective(graph, &e, q, budget));
    let divisor = match metric {
        Some(r) => r,
        None => crate::oracle::reduce_on_subdivision(graph, d, q),
    };
    ReducedForm {
        divisor,
        basepoint: q.clone(),
    }
}

/// Class key at the canonical basepoint.
pub fn class_key(graph: &MetricGraph, d: &Divisor) -> ReducedForm {
    reduce(graph, d, &graph.canonical_basepoint())
}

/// Linear equivalence, decided by comparing reduced forms.
pub fn is_equivalent(graph: &MetricGraph, d1: &Divisor, d2: &Divisor) -> bool {
    d1.degree() == d2.degree() && class_key(graph, d1) == class_key(graph, d2)
}

/// An effective divisor equivalent to `d`, if there is one.
pub fn effective_representative(graph: &MetricGraph, d: &Divisor) -> Option<Divisor> {
    if d.degree() < 0 {
        return None;
    }
    let q = graph.canonical_basepoint();
    let r = reduce(graph, d, &q);
    (r.divisor.coeff(&q) >= 0).then_some(r.divisor)
}

/// Whether `d` is `q`-reduced.
pub fn is_reduced(graph: &MetricGraph, d: &Divisor, q: &Point) -> bool {
    dhar_burn(graph, d, q).is_ok_and(|b| b.is_reduced())
}
