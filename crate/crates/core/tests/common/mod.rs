#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tbn_core::graph::{
    degenerate_loop_of_loops, generic_chain_of_loops_4, loop_of_loops, yu_graph, Divisor, MetricGraph,
};
use tbn_core::rational::int;

pub fn lol(a: i64, b: i64, c: i64) -> MetricGraph {
    loop_of_loops(4, &[int(a), int(b), int(c)]).unwrap()
}

pub fn gamma0() -> MetricGraph {
    degenerate_loop_of_loops(&[int(1), int(1), int(1)]).unwrap()
}

/// The four graphs the randomized checks run on.
pub fn generators() -> Vec<(&'static str, MetricGraph)> {
    vec![
        ("loop-of-loops(5,4,3)", lol(5, 4, 3)),
        ("gamma0", gamma0()),
        ("chain-of-loops-4", generic_chain_of_loops_4()),
        ("yu", yu_graph()),
    ]
}

pub fn pts(g: &MetricGraph, names: &[&str]) -> Divisor {
    Divisor::from_terms(names.iter().map(|n| (g.vp(n), 1)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
