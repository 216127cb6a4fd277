use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::{MetricGraph, Point};

/// Finite integer combination of points. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: Point) -> Self {
        Divisor::from_terms([(p, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in terms {
            d.add_at(p, c);
        }
        d
    }

    /// Sum of the given points, each with coefficient one.
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        Divisor::from_terms(points.into_iter().map(|p| (p.clone(), 1)))
    }

    pub fn add_at(&mut self, p: Point, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Effective except possibly at `q`.
    pub fn is_effective_away_from(&self, q: &Point) -> bool {
        self.coeffs.iter().all(|(p, &c)| c >= 0 || p == q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> + '_ {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> + '_ {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Points repeated by multiplicity; only meaningful for effective divisors.
    pub fn chips(&self) -> Vec<Point> {
        self.coeffs
            .iter()
            .flat_map(|(p, &c)| std::iter::repeat_n(p.clone(), c.max(0) as usize))
            .collect()
    }

    pub fn scaled_by(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.iter().map(|(p, c)| (p.clone(), c * k)))
    }

    /// `v1 + 2·w1 - e@3/2` style rendering.
    pub fn display(&self, graph: &MetricGraph) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.iter().enumerate() {
            let name = graph.point_name(p);
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                let _ = write!(out, "{mag}·");
            }
            out.push_str(&name);
        }
        out
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        for (p, c) in rhs.iter() {
            self.add_at(p.clone(), c);
        }
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        for (p, c) in rhs.iter() {
            self.add_at(p.clone(), -c);
        }
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(mut self, rhs: Divisor) -> Divisor {
        self += &rhs;
        self
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(mut self, rhs: Divisor) -> Divisor {
        self -= &rhs;
        self
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        self.scaled_by(-1)
    }
}
