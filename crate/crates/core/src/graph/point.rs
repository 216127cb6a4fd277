use crate::rational::Rational;

/// A point of a metric graph in canonical form.
///
/// Interior points carry an offset strictly between 0 and the edge length,
/// measured from the edge's tail. Edge endpoints are always represented by
/// their vertex, so structural equality is point equality. Build interior
/// points through [`super::MetricGraph::point_on_edge`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Vertex(usize),
    Edge { edge: usize, offset: Rational },
}

impl Point {
    pub fn is_vertex(&self) -> bool {
        matches!(self, Point::Vertex(_))
    }

    pub fn as_vertex(&self) -> Option<usize> {
        match self {
            Point::Vertex(v) => Some(*v),
            Point::Edge { .. } => None,
        }
    }
}
