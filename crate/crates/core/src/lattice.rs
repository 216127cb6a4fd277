//! Grid points of a metric graph and multisets over them.
//!
//! Lengths are first scaled to integers by their common denominator `D`;
//! the lattice at resolution `q` is then every point at an offset that is a
//! multiple of `1/(D·q)` in the original units.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::graph::{Divisor, MetricGraph, PlFunction, Point};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub q: u64,
    /// Lattice steps per unit of original length, `D·q`.
    pub scale: i128,
    points: Vec<Point>,
}

impl Lattice {
    pub fn new(graph: &MetricGraph, q: u64) -> Lattice {
        assert!(q >= 1, "lattice resolution must be positive");
        let scale = graph.length_denominator() * q as i128;
        let mut points: Vec<Point> = (0..graph.vertex_count()).map(Point::Vertex).collect();
        for (e, edge) in graph.edges().iter().enumerate() {
            let units = (edge.length * Rational::from_integer(scale)).to_integer();
            for k in 1..units {
                points.push(Point::Edge {
                    edge: e,
                    offset: Rational::new(k, scale),
                });
            }
        }
        points.sort();
        Lattice { q, scale, points }
    }

    /// All lattice points in point order: vertices first, then edge points
    /// by edge and offset.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Length of one grid step.
    pub fn step(&self) -> Rational {
        Rational::new(1, self.scale)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Vertex(_) => true,
            Point::Edge { offset, .. } => (offset * Rational::from_integer(self.scale)).is_integer(),
        }
    }

    pub fn divisor(&self, idx: &[usize]) -> Divisor {
        Divisor::from_points(idx.iter().map(|&i| &self.points[i]))
    }

    /// A uniformly chosen multiset of `degree` lattice points.
    pub fn random_effective<R: Rng>(&self, degree: usize, rng: &mut R) -> Divisor {
        let idx: Vec<usize> = (0..degree).map(|_| rng.gen_range(0..self.points.len())).collect();
        self.divisor(&idx)
    }

    /// A random lattice divisor of the given degree, possibly with negative
    /// coefficients: `degree + m` points added and `m` removed, `m <= extra`.
    pub fn random_divisor<R: Rng>(&self, degree: i64, extra: usize, rng: &mut R) -> Divisor {
        let m = rng.gen_range(0..=extra) as i64;
        let m = m.max(-degree);
        let pos = self.random_effective((degree + m) as usize, rng);
        let neg = self.random_effective(m as usize, rng);
        &pos - &neg
    }

    /// A random piecewise-linear function with integer slopes in
    /// `[-max_slope, max_slope]` (the last step of each edge takes whatever
    /// slope closes it up) and breakpoints on the lattice.
    pub fn random_pl<R: Rng>(&self, graph: &MetricGraph, max_slope: i64, rng: &mut R) -> PlFunction {
        let h = self.step();
        let heights: Vec<i64> = (0..graph.vertex_count()).map(|_| rng.gen_range(-4..=4)).collect();
        let mut pieces = Vec::with_capacity(graph.edges().len());
        for edge in graph.edges() {
            let units = (edge.length * Rational::from_integer(self.scale)).to_integer() as usize;
            let (a, b) = (heights[edge.ends.0], heights[edge.ends.1]);
            let mut level = a;
            let mut pts = vec![(Rational::zero(), h * Rational::from_integer(a as i128))];
            for k in 1..=units {
                let slope = if k == units {
                    b - level
                } else {
                    rng.gen_range(-max_slope..=max_slope)
                };
                level += slope;
                pts.push((
                    h * Rational::from_integer(k as i128),
                    h * Rational::from_integer(level as i128),
                ));
            }
            pieces.push(pts);
        }
        PlFunction::from_breakpoints(pieces)
    }
}

/// Number of multisets of size `k` from `n` items, saturating at `u128::MAX`.
pub fn count_multisets(n: usize, k: usize) -> u128 {
    let (n, k) = (n as u128, k as u128);
    if n == 0 {
        return u128::from(k == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n + i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on every non-decreasing index sequence of length `k` over
/// `start..n`, in lexicographic order, until `f` returns `false`.
/// Returns `false` if stopped early.
pub fn for_each_multiset(n: usize, k: usize, start: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    walk(n, k, start, 0, &mut Vec::with_capacity(k), f)
}

/// As [`for_each_multiset`], but strictly increasing sequences only.
pub fn for_each_subset(n: usize, k: usize, start: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    walk(n, k, start, 1, &mut Vec::with_capacity(k), f)
}

fn walk(
    n: usize,
    k: usize,
    start: usize,
    gap: usize,
    buf: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if buf.len() == k {
        return f(buf);
    }
    for i in start..n {
        buf.push(i);
        let more = walk(n, k, i + gap, gap, buf, f);
        buf.pop();
        if !more {
            return false;
        }
    }
    true
}

/// Applies `f` to every multiset of size `k` over `0..n` in parallel and
/// keeps the `Some` results in lexicographic order.
pub fn par_filter_map_multisets<T, F>(n: usize, k: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[usize]) -> Option<T> + Sync,
{
    if k == 0 {
        return f(&[]).into_iter().collect();
    }
    (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            for_each_multiset(n, k - 1, first, &mut |rest| {
                let mut idx = Vec::with_capacity(k);
                idx.push(first);
                idx.extend_from_slice(rest);
                if let Some(t) = f(&idx) {
                    out.push(t);
                }
                true
            });
            out
        })
        .collect()
}

/// The lexicographically first multiset of size `k` over `0..n` satisfying
/// `pred`, searched in parallel.
pub fn par_find_first_multiset<F>(n: usize, k: usize, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    par_find_first(n, k, 0, pred)
}

/// As [`par_find_first_multiset`], over sets of `k` distinct indices.
pub fn par_find_first_subset<F>(n: usize, k: usize, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    par_find_first(n, k, 1, pred)
}

fn par_find_first<F>(n: usize, k: usize, gap: usize, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    if k == 0 {
        return pred(&[]).then(Vec::new);
    }
    (0..n).into_par_iter().find_map_first(|first| {
        let mut found = None;
        walk(n, k - 1, first + gap, gap, &mut Vec::with_capacity(k), &mut |rest| {
            let mut idx = Vec::with_capacity(k);
            idx.push(first);
            idx.extend_from_slice(rest);
            if pred(&idx) {
                found = Some(idx);
                false
            } else {
                true
            }
        });
        found
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{div_of_pl, loop_of_loops};
    use crate::rational::{frac, int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lattice_sizes() {
        let g = loop_of_loops(4, &[int(5), int(4), int(3)]).unwrap();
        assert_eq!(Lattice::new(&g, 1).len(), 6 + 4 + 3 + 2);
        assert_eq!(Lattice::new(&g, 4).len(), 69);
        let h = loop_of_loops(4, &[frac(5, 4), int(1), frac(3, 4)]).unwrap();
        let lat = Lattice::new(&h, 4);
        assert_eq!(lat.scale, 16);
        assert!(lat.contains(&h.point_at("v1w1", frac(1, 16))));
    }

    #[test]
    fn multiset_enumeration_order_and_count() {
        let mut seen = Vec::new();
        for_each_multiset(3, 2, 0, &mut |m| {
            seen.push(m.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]
        );
        assert_eq!(count_multisets(3, 2), 6);
        assert_eq!(count_multisets(0, 0), 1);
        let all = par_filter_map_multisets(5, 3, |m| Some(m.to_vec()));
        assert_eq!(all.len() as u128, count_multisets(5, 3));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(par_find_first_multiset(5, 3, |m| m[1] == 3), Some(vec![0, 3, 3]));
        assert_eq!(par_find_first_multiset(5, 3, |_| false), None);
        assert_eq!(par_find_first_subset(5, 3, |m| m[1] == 3), Some(vec![0, 3, 4]));
        let mut sets = 0;
        for_each_subset(5, 3, 0, &mut |_| {
            sets += 1;
            true
        });
        assert_eq!(sets, 10);
    }

    #[test]
    fn random_pl_functions_are_valid() {
        let g = loop_of_loops(4, &[int(5), int(4), int(3)]).unwrap();
        let lat = Lattice::new(&g, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = lat.random_pl(&g, 3, &mut rng);
            let d = div_of_pl(&g, &f).unwrap();
            assert_eq!(d.degree(), 0);
            assert!(d.support().all(|p| lat.contains(p)));
        }
        let d = lat.random_divisor(-2, 3, &mut rng);
        assert_eq!(d.degree(), -2);
    }
}
