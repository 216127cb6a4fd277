use num_traits::Zero;

use super::{Divisor, End, MetricGraph};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Continuous piecewise-linear function given edge by edge.
///
/// Each edge carries its breakpoints `(offset, value)` in increasing offset
/// order, from offset 0 to the edge length. Slopes between consecutive
/// breakpoints must be integers and values must agree at shared vertices;
/// [`div_of_pl`] checks both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    pieces: Vec<Vec<(Rational, Rational)>>,
}

impl PlFunction {
    pub fn from_breakpoints(pieces: Vec<Vec<(Rational, Rational)>>) -> Self {
        PlFunction { pieces }
    }

    pub fn constant(graph: &MetricGraph, c: Rational) -> Self {
        PlFunction {
            pieces: graph
                .edges()
                .iter()
                .map(|e| vec![(Rational::zero(), c), (e.length, c)])
                .collect(),
        }
    }

    pub fn breakpoints(&self, e: usize) -> &[(Rational, Rational)] {
        &self.pieces[e]
    }

    /// Value at `offset` on edge `e`, by linear interpolation.
    pub fn value_at(&self, e: usize, offset: Rational) -> Rational {
        let bp = &self.pieces[e];
        for w in bp.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if offset >= x0 && offset <= x1 {
                return y0 + (y1 - y0) * (offset - x0) / (x1 - x0);
            }
        }
        bp.last().map(|b| b.1).unwrap_or_else(Rational::zero)
    }

    /// Pointwise sum; breakpoints are merged.
    pub fn add(&self, other: &PlFunction) -> PlFunction {
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(e, bp)| {
                let mut xs: Vec<Rational> = bp.iter().chain(other.pieces[e].iter()).map(|&(x, _)| x).collect();
                xs.sort();
                xs.dedup();
                xs.into_iter()
                    .map(|x| (x, self.value_at(e, x) + other.value_at(e, x)))
                    .collect()
            })
            .collect();
        PlFunction { pieces }
    }

    pub fn add_constant(&self, c: Rational) -> PlFunction {
        PlFunction {
            pieces: self
                .pieces
                .iter()
                .map(|bp| bp.iter().map(|&(x, y)| (x, y + c)).collect())
                .collect(),
        }
    }

    fn slopes(&self, graph: &MetricGraph, e: usize) -> Result<Vec<i64>> {
        let edge = graph.edge(e);
        let bp = &self.pieces[e];
        let bad = |why: &str| Error::InconsistentFunction(format!("edge {}: {why}", edge.id));
        if bp.len() < 2 {
            return Err(bad("needs at least two breakpoints"));
        }
        if !bp[0].0.is_zero() || bp[bp.len() - 1].0 != edge.length {
            return Err(bad("breakpoints must start at 0 and end at the edge length"));
        }
        bp.windows(2)
            .map(|w| {
                let dx = w[1].0 - w[0].0;
                if dx <= Rational::zero() {
                    return Err(bad("offsets must increase strictly"));
                }
                let s = (w[1].1 - w[0].1) / dx;
                if !s.is_integer() {
                    return Err(Error::NonIntegerSlope {
                        edge: edge.id.clone(),
                        slope: rational::format(&s),
                    });
                }
                Ok(rational::to_i64(s.to_integer()))
            })
            .collect()
    }
}

/// `div(f) = sum_x ord_x(f) x`, where `ord_x(f)` is the sum of the slopes of
/// `f` along every direction leaving `x`.
pub fn div_of_pl(graph: &MetricGraph, f: &PlFunction) -> Result<Divisor> {
    if f.pieces.len() != graph.edges().len() {
        return Err(Error::InconsistentFunction(format!(
            "function has {} edges, graph has {}",
            f.pieces.len(),
            graph.edges().len()
        )));
    }
    let mut vertex_value: Vec<Option<Rational>> = vec![None; graph.vertex_count()];
    let mut d = Divisor::zero();
    for (e, edge) in graph.edges().iter().enumerate() {
        let slopes = f.slopes(graph, e)?;
        let bp = &f.pieces[e];
        for (end, value) in [(End::Tail, bp[0].1), (End::Head, bp[bp.len() - 1].1)] {
            let v = edge.vertex_at(end);
            match vertex_value[v] {
                Some(existing) if existing != value => {
                    return Err(Error::InconsistentFunction(format!(
                        "values disagree at vertex {}",
                        graph.vertex_name(v)
                    )))
                }
                _ => vertex_value[v] = Some(value),
            }
        }
        d.add_at(super::Point::Vertex(edge.ends.0), slopes[0]);
        d.add_at(super::Point::Vertex(edge.ends.1), -slopes[slopes.len() - 1]);
        for (i, w) in slopes.windows(2).enumerate() {
            let ord = w[1] - w[0];
            if ord != 0 {
                d.add_at(graph.point_on_edge(e, bp[i + 1].0)?, ord);
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Divisor, MetricGraph, Point};
    use crate::rational::{frac, int};

    #[test]
    fn constant_has_zero_divisor() {
        let g = crate::graph::yu_graph();
        let f = PlFunction::constant(&g, frac(7, 3));
        assert!(div_of_pl(&g, &f).unwrap().is_zero());
    }

    #[test]
    fn tent_on_circle() {
        // circumference 2, base at the vertex, peak at the antipode
        let g = MetricGraph::from_named(&["v"], &[("c", "v", "v", int(2))]).unwrap();
        let f = PlFunction::from_breakpoints(vec![vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(0))]]);
        let d = div_of_pl(&g, &f).unwrap();
        let peak = g.point_on_edge(0, int(1)).unwrap();
        assert_eq!(d, Divisor::from_terms([(Point::Vertex(0), 2), (peak, -2)]));
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn rejects_fractional_slope() {
        let g = MetricGraph::from_named(&["a", "b"], &[("e", "a", "b", int(2))]).unwrap();
        let f = PlFunction::from_breakpoints(vec![vec![(int(0), int(0)), (int(2), int(1))]]);
        assert_eq!(div_of_pl(&g, &f).unwrap_err().name(), "NonIntegerSlope");
    }

    #[test]
    fn rejects_vertex_mismatch() {
        let g = MetricGraph::from_named(&["a", "b"], &[("e", "a", "b", int(1)), ("f", "a", "b", int(1))]).unwrap();
        let f = PlFunction::from_breakpoints(vec![
            vec![(int(0), int(0)), (int(1), int(1))],
            vec![(int(0), int(0)), (int(1), int(2))],
        ]);
        assert_eq!(div_of_pl(&g, &f).unwrap_err().name(), "InconsistentFunction");
    }
}
