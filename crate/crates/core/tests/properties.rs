mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tbn_core::graph::{div_of_pl, ClosedSubgraph, Divisor, MetricGraph, Point};
use tbn_core::jacobian::{abel_jacobi, bn_rank, canonical_basis, scan_wrd, verify_witness, DEFAULT_LATTICE_BUDGET};
use tbn_core::lattice::{for_each_multiset, Lattice};
use tbn_core::oracle::{self, finite_rank, FiniteGraph, DEFAULT_RANK_BUDGET};
use tbn_core::rank::{a_rank, rank, RankDeterminingSet};
use tbn_core::rational::{frac, int};
use tbn_core::reduction::{
    class_key, effective_representative, fire_subgraph, firing_function, is_equivalent, is_reduced, reduce,
};
use tbn_core::Error;

use common::{generators, lol, rng};

fn pick_graph(r: &mut ChaCha8Rng) -> (&'static str, MetricGraph) {
    let mut gs = generators();
    let i = r.gen_range(0..gs.len());
    gs.swap_remove(i)
}

fn random_point(lat: &Lattice, r: &mut ChaCha8Rng) -> Point {
    lat.points()[r.gen_range(0..lat.len())].clone()
}

fn small_lol(r: &mut ChaCha8Rng) -> MetricGraph {
    let mut l: Vec<i64> = (0..3).map(|_| r.gen_range(1..=3)).collect();
    l.sort_unstable_by(|a, b| b.cmp(a));
    lol(l[0], l[1], l[2])
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn reduction_is_a_class_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let genus = g.genus() as i64;
        let d = lat.random_divisor(r.gen_range(-2..=2 * genus), 3, &mut r);
        let f = lat.random_pl(&g, 3, &mut r);
        let moved = &d + &div_of_pl(&g, &f).unwrap();
        let q = random_point(&lat, &mut r);
        let red = reduce(&g, &d, &q);
        prop_assert_eq!(&red, &reduce(&g, &moved, &q));
        prop_assert_eq!(red.divisor.degree(), d.degree());
        prop_assert!(is_reduced(&g, &red.divisor, &q));
        prop_assert_eq!(&reduce(&g, &red.divisor, &q), &red);
    }

    #[test]
    fn class_key_matches_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let deg = r.gen_range(0..=3);
        let d1 = lat.random_divisor(deg, 1, &mut r);
        let d2 = if r.gen_bool(0.5) {
            &d1 + &div_of_pl(&g, &lat.random_pl(&g, 2, &mut r)).unwrap()
        } else {
            lat.random_divisor(deg, 1, &mut r)
        };
        prop_assert_eq!(class_key(&g, &d1) == class_key(&g, &d2), is_equivalent(&g, &d1, &d2));
    }

    #[test]
    fn basepoints_are_coherent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let d = lat.random_divisor(r.gen_range(-1..=4), 2, &mut r);
        let (q1, q2) = (random_point(&lat, &mut r), random_point(&lat, &mut r));
        let via = reduce(&g, &reduce(&g, &d, &q1).divisor, &q2);
        prop_assert_eq!(via, reduce(&g, &d, &q2));
    }

    #[test]
    fn firing_moves_within_the_class(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let mut edges: Vec<usize> = (0..g.edges().len()).collect();
        edges.shuffle(&mut r);
        edges.truncate(r.gen_range(1..g.edges().len()));
        let s = ClosedSubgraph::from_edges(&g, &edges);
        let boundary = s.boundary(&g);
        prop_assume!(!boundary.is_empty());
        let mut d = Divisor::from_terms(boundary.iter().map(|(p, &k)| (p.clone(), k as i64)));
        d = &d + &lat.random_effective(r.gen_range(0..3), &mut r);
        let room = s.rays(&g).iter().map(|ray| ray.room).min().unwrap();
        let t = room * frac(r.gen_range(1..=4), 4);
        match fire_subgraph(&g, &d, &s, t) {
            Ok(fired) => {
                let f = firing_function(&g, &s, t).unwrap();
                prop_assert_eq!(&(&d + &div_of_pl(&g, &f).unwrap()), &fired);
                prop_assert!(fired.is_effective());
                prop_assert!(is_equivalent(&g, &d, &fired));
            }
            Err(Error::FiringTimeTooLarge { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn rank_bounds_and_monotonicity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let d = lat.random_divisor(r.gen_range(-2..=5), 2, &mut r);
        let rd = rank(&g, &d);
        prop_assert!(rd >= -1 && rd <= d.degree().max(-1));
        if d.is_effective() {
            prop_assert!(rd >= 0);
        }
        let bigger = &d + &Divisor::point(random_point(&lat, &mut r));
        let rb = rank(&g, &bigger);
        prop_assert!(rb == rd || rb == rd + 1);
    }

    #[test]
    fn a_rank_bounds_rank(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let d = lat.random_divisor(r.gen_range(0..=4), 1, &mut r);
        let mut a: Vec<Point> = lat.points().to_vec();
        a.shuffle(&mut r);
        a.truncate(r.gen_range(1..=4));
        let a = RankDeterminingSet::user_supplied(a).unwrap();
        prop_assert!(a_rank(&g, &d, &a) >= rank(&g, &d));
    }

    #[test]
    fn rank_is_scale_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let d = lat.random_divisor(r.gen_range(-1..=4), 2, &mut r);
        let factor = [frac(1, 2), int(2), frac(3, 2)][r.gen_range(0..3)];
        let h = g.scaled(factor).unwrap();
        let moved = Divisor::from_terms(d.iter().map(|(p, c)| (MetricGraph::scale_point(p, factor), c)));
        prop_assert_eq!(rank(&g, &d), rank(&h, &moved));
    }

    #[test]
    fn abel_jacobi_detects_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let basis = canonical_basis(&g);
        let deg = r.gen_range(0..=3);
        let d1 = lat.random_divisor(deg, 1, &mut r);
        let d2 = if r.gen_bool(0.5) {
            &d1 + &div_of_pl(&g, &lat.random_pl(&g, 2, &mut r)).unwrap()
        } else {
            lat.random_divisor(deg, 1, &mut r)
        };
        let same = abel_jacobi(&g, &basis, &d1) == abel_jacobi(&g, &basis, &d2);
        prop_assert_eq!(same, is_equivalent(&g, &d1, &d2));
    }

    #[test]
    fn high_degree_classes_are_effective(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 2);
        let genus = g.genus() as i64;
        let d = lat.random_divisor(r.gen_range(genus..=genus + 2), 3, &mut r);
        let e = effective_representative(&g, &d);
        prop_assert!(e.is_some());
        let e = e.unwrap();
        prop_assert!(e.is_effective() && is_equivalent(&g, &d, &e));
    }

    #[test]
    fn finite_riemann_roch(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
        for _ in 0..r.gen_range(0..=3) {
            let a = r.gen_range(0..n);
            let b = (a + r.gen_range(1..n)) % n;
            edges.push((a, b));
        }
        let g = FiniteGraph::new(n, &edges).unwrap();
        let d: Vec<i64> = (0..n).map(|_| r.gen_range(-1..=2)).collect();
        let k = g.canonical_divisor();
        let kd: Vec<i64> = k.iter().zip(&d).map(|(a, b)| a - b).collect();
        let deg: i64 = d.iter().sum();
        let lhs = finite_rank(&g, &d, DEFAULT_RANK_BUDGET).unwrap() - finite_rank(&g, &kd, DEFAULT_RANK_BUDGET).unwrap();
        prop_assert_eq!(lhs, deg - g.genus() as i64 + 1);
    }

    #[test]
    fn finite_rank_survives_subdivision(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, g) = pick_graph(&mut r);
        let lat = Lattice::new(&g, 1);
        let d = lat.random_divisor(r.gen_range(-1..=3), 1, &mut r);
        let coarse = oracle::subdivide(&g, 1).unwrap();
        let fine = oracle::subdivide(&g, 2).unwrap();
        let rc = finite_rank(&coarse.finite, &coarse.map_divisor(&d).unwrap(), DEFAULT_RANK_BUDGET).unwrap();
        let rf = finite_rank(&fine.finite, &fine.map_divisor(&d).unwrap(), DEFAULT_RANK_BUDGET).unwrap();
        prop_assert_eq!(rc, rf);
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn rank_is_preserved_by_contracting_bridges(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = tbn_core::graph::generic_chain_of_loops_4();
        let (h, map) = g.contract_separating_edges();
        prop_assert_eq!(h.genus(), g.genus());
        let lat = Lattice::new(&g, 1);
        let d = lat.random_divisor(r.gen_range(0..=4), 1, &mut r);
        prop_assert_eq!(rank(&g, &d), rank(&h, &map.map_divisor(&d)));
    }

    #[test]
    fn scans_refine_with_the_lattice(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_lol(&mut r);
        let coarse = scan_wrd(&g, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
        let fine = scan_wrd(&g, 1, 3, 2, DEFAULT_LATTICE_BUDGET).unwrap();
        prop_assert!(fine.classes.len() >= coarse.classes.len());
        for c in &coarse.classes {
            prop_assert!(fine.index_of(&c.key).is_some());
        }
    }

    #[test]
    fn scan_classes_pass_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_lol(&mut r);
        let scan = scan_wrd(&g, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
        for c in &scan.classes {
            let q = oracle::resolution_for(&g, c.key.divisor.support());
            let sub = oracle::subdivide(&g, q).unwrap();
            let fd = sub.map_divisor(&c.key.divisor).unwrap();
            prop_assert!(finite_rank(&sub.finite, &fd, DEFAULT_RANK_BUDGET).unwrap() >= 1);
        }
        // Independent count: every degree-3 divisor on the unit subdivision.
        let sub = oracle::subdivide(&g, 1).unwrap();
        let n = sub.finite.vertex_count();
        let mut keys = BTreeSet::new();
        for_each_multiset(n, 3, 0, &mut |idx| {
            let mut d = vec![0i64; n];
            for &i in idx {
                d[i] += 1;
            }
            if finite_rank(&sub.finite, &d, DEFAULT_RANK_BUDGET).unwrap() >= 1 {
                keys.insert(oracle::finite_reduce(&sub.finite, &d, 0));
            }
            true
        });
        prop_assert_eq!(keys.len(), scan.classes.len());
    }

    #[test]
    fn bn_witnesses_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_lol(&mut r);
        let cert = bn_rank(&g, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
        prop_assert!(verify_witness(&g, &cert, DEFAULT_LATTICE_BUDGET).unwrap().is_some());
    }
}

#[test]
fn scan_is_exhaustive_on_a_small_graph() {
    let g = lol(2, 1, 1);
    let smart = scan_wrd(&g, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
    let full = tbn_core::jacobian::scan_wrd_exhaustive(&g, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
    let keys = |s: &tbn_core::jacobian::WrdScan| s.classes.iter().map(|c| c.key.clone()).collect::<BTreeSet<_>>();
    assert_eq!(keys(&smart), keys(&full));
}
