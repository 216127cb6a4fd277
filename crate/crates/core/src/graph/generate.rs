//! The named graph families: loops of loops, the degenerate loop of loops,
//! Yu's genus-3 graph and chains of loops.

use super::MetricGraph;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    /// Loop of loops of genus `singles.len() + 1`. `pairs[i]` is the length of
    /// both edges joining `w_i` to `v_{i+1}` (cyclically); defaults to 1.
    LoopOfLoops {
        singles: Vec<Rational>,
        pairs: Option<Vec<Rational>>,
    },
    /// Three vertices, each pair joined by two edges of the given length.
    DegenerateLoopOfLoops {
        pairs: [Rational; 3],
    },
    Yu,
    /// Chain of `arcs.len()` loops; loop `i` has arcs of the two given
    /// lengths between `v_i` and `w_i`, and a bridge joins `w_i` to `v_{i+1}`.
    ChainOfLoops {
        arcs: Vec<(Rational, Rational)>,
        bridges: Vec<Rational>,
    },
}

pub fn generate(family: &GraphFamily) -> Result<MetricGraph> {
    match family {
        GraphFamily::LoopOfLoops { singles, pairs } => {
            let g = singles.len() + 1;
            match pairs {
                Some(p) => loop_of_loops_with_pairs(g, singles, p),
                None => loop_of_loops(g, singles),
            }
        }
        GraphFamily::DegenerateLoopOfLoops { pairs } => degenerate_loop_of_loops(pairs),
        GraphFamily::Yu => Ok(yu_graph()),
        GraphFamily::ChainOfLoops { arcs, bridges } => chain_of_loops(arcs, bridges),
    }
}

/// Loop of loops of genus `g` with single edges `[v_i, w_i]` of the given
/// lengths and unit paired edges.
pub fn loop_of_loops(g: usize, singles: &[Rational]) -> Result<MetricGraph> {
    let pairs = vec![int(1); g.saturating_sub(1)];
    loop_of_loops_with_pairs(g, singles, &pairs)
}

pub fn loop_of_loops_with_pairs(g: usize, singles: &[Rational], pairs: &[Rational]) -> Result<MetricGraph> {
    if g < 3 {
        return Err(Error::BadGenus(g));
    }
    let n = g - 1;
    if singles.len() != n || pairs.len() != n {
        return Err(Error::BadFamilyParameters {
            family: "loop_of_loops".into(),
            reason: format!("genus {g} needs {n} single lengths and {n} pair lengths"),
        });
    }
    let mut names = Vec::with_capacity(2 * n);
    for i in 1..=n {
        names.push(format!("v{i}"));
        names.push(format!("w{i}"));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 1..=n {
        let next = if i == n { 1 } else { i + 1 };
        edges.push((format!("v{i}w{i}"), format!("v{i}"), format!("w{i}"), singles[i - 1]));
        for tag in ["a", "b"] {
            edges.push((
                format!("w{i}v{next}{tag}"),
                format!("w{i}"),
                format!("v{next}"),
                pairs[i - 1],
            ));
        }
    }
    build(&names, &edges)
}

pub fn degenerate_loop_of_loops(pairs: &[Rational; 3]) -> Result<MetricGraph> {
    let names = ["v1", "v2", "v3"].map(String::from);
    let mut edges = Vec::new();
    for (i, (a, b)) in [("v1", "v2"), ("v2", "v3"), ("v3", "v1")].into_iter().enumerate() {
        for tag in ["a", "b"] {
            edges.push((format!("{a}{b}{tag}"), a.to_string(), b.to_string(), pairs[i]));
        }
    }
    build(&names, &edges)
}

/// Genus 3: single edges `[v0, v1]`, `[w0, w1]` and doubled edges
/// `v_i`–`w_i`, all of length 1.
pub fn yu_graph() -> MetricGraph {
    let names = ["v0", "v1", "w0", "w1"].map(String::from);
    let mut edges = vec![
        ("v0v1".to_string(), "v0".to_string(), "v1".to_string(), int(1)),
        ("w0w1".to_string(), "w0".to_string(), "w1".to_string(), int(1)),
    ];
    for i in 0..2 {
        for tag in ["a", "b"] {
            edges.push((format!("v{i}w{i}{tag}"), format!("v{i}"), format!("w{i}"), int(1)));
        }
    }
    build(&names, &edges).expect("Yu graph is valid")
}

pub fn chain_of_loops(arcs: &[(Rational, Rational)], bridges: &[Rational]) -> Result<MetricGraph> {
    let g = arcs.len();
    if g == 0 || bridges.len() + 1 != g {
        return Err(Error::BadFamilyParameters {
            family: "chain_of_loops".into(),
            reason: format!("{g} loops need {} bridge lengths", g.saturating_sub(1)),
        });
    }
    let mut names = Vec::with_capacity(2 * g);
    let mut edges = Vec::new();
    for (i, (top, bottom)) in arcs.iter().enumerate() {
        let i = i + 1;
        names.push(format!("v{i}"));
        names.push(format!("w{i}"));
        edges.push((format!("v{i}w{i}t"), format!("v{i}"), format!("w{i}"), *top));
        edges.push((format!("v{i}w{i}b"), format!("v{i}"), format!("w{i}"), *bottom));
        if i < g {
            edges.push((
                format!("w{i}v{}", i + 1),
                format!("w{i}"),
                format!("v{}", i + 1),
                bridges[i - 1],
            ));
        }
    }
    build(&names, &edges)
}

/// Genus-4 chain of loops with arc ratios 3:4, 2:5, 4:3, 5:2 and unit
/// bridges. None of the ratios is `p/q` with `p + q <= 6`, so the chain is
/// Brill–Noether general.
pub fn generic_chain_of_loops_4() -> MetricGraph {
    chain_of_loops(
        &[(int(3), int(4)), (int(2), int(5)), (int(4), int(3)), (int(5), int(2))],
        &[int(1), int(1), int(1)],
    )
    .expect("valid chain")
}

fn build(names: &[String], edges: &[(String, String, String, Rational)]) -> Result<MetricGraph> {
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str, Rational)> = edges
        .iter()
        .map(|(id, a, b, l)| (id.as_str(), a.as_str(), b.as_str(), *l))
        .collect();
    MetricGraph::from_named(&vs, &es)
}
