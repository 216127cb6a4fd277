use super::*;
use crate::graph::{degenerate_loop_of_loops, loop_of_loops, yu_graph, ClosedSubgraph};
use crate::lattice::Lattice;
use crate::rational::{frac, int};
use crate::reduction::{class_key, fire_subgraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lol(a: i64, b: i64, c: i64) -> MetricGraph {
    loop_of_loops(4, &[int(a), int(b), int(c)]).unwrap()
}

fn pts(g: &MetricGraph, names: &[&str]) -> Divisor {
    Divisor::from_terms(names.iter().map(|n| (g.vp(n), 1)))
}

#[test]
fn circle_tree_and_yu_bases() {
    let c = MetricGraph::from_named(&["v"], &[("e", "v", "v", frac(7, 2))]).unwrap();
    let b = jacobian_basis(&c, 0);
    assert_eq!(b.gram, vec![vec![frac(7, 2)]]);
    let t = MetricGraph::from_named(&["a", "b", "c"], &[("x", "a", "b", int(1)), ("y", "b", "c", int(2))]).unwrap();
    let b = jacobian_basis(&t, 0);
    assert_eq!(b.genus(), 0);
    assert!(abel_jacobi(&t, &b, &pts(&t, &["c"])).is_zero());
    let y = yu_graph();
    let b = canonical_basis(&y);
    assert_eq!(b.genus(), 3);
    assert!(b.determinant() > Rational::zero());
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(b.gram[i][j], b.gram[j][i]);
        }
    }
}

#[test]
fn circle_coordinates_are_arc_length_fractions() {
    let c = MetricGraph::from_named(&["v"], &[("e", "v", "v", int(4))]).unwrap();
    let b = jacobian_basis(&c, 0);
    let p = c.point_at("e", int(1));
    assert_eq!(abel_jacobi(&c, &b, &Divisor::point(p)).coords(), &[frac(1, 4)]);
    let two = Divisor::from_points(&[c.point_at("e", int(1)), c.point_at("e", int(3))]);
    assert!(abel_jacobi(&c, &b, &two).is_zero());
}

#[test]
fn abel_jacobi_sees_classes() {
    let g = lol(1, 1, 2);
    let b = canonical_basis(&g);
    assert!(abel_jacobi(&g, &b, &pts(&g, &["v1"])).is_zero());
    let d = pts(&g, &["v1", "w2", "v3"]);
    let s = ClosedSubgraph::from_edge_ids(&g, &["w2v3a", "w2v3b", "v3w3", "w3v1a", "w3v1b"]).unwrap();
    let fired = fire_subgraph(&g, &d, &s, int(1)).unwrap();
    assert_eq!(abel_jacobi(&g, &b, &d), abel_jacobi(&g, &b, &fired));
    let g = lol(5, 4, 3);
    let b = canonical_basis(&g);
    assert_ne!(
        abel_jacobi(&g, &b, &pts(&g, &["v1"])),
        abel_jacobi(&g, &b, &pts(&g, &["w1"]))
    );
}

#[test]
fn torus_points_reduce_mod_one() {
    let p = TorusPoint::new([frac(5, 4), frac(-1, 3), int(2)]);
    assert_eq!(p.coords(), &[frac(1, 4), frac(2, 3), int(0)]);
    let q = TorusPoint::new([frac(1, 8), frac(1, 3), int(0)]);
    assert_eq!(p.difference(&q), vec![frac(-1, 8), frac(-1, 3), int(0)]);
    assert_eq!(p.to_string(), "(1/4, 2/3, 0/1)");
}

#[test]
fn linear_algebra_helpers() {
    let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
    assert_eq!(invert(&m).unwrap(), vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
    assert_eq!(determinant(&m), int(1));
    assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    assert_eq!(span_rank(&[vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
    assert_eq!(span_rank(&[vec![int(1), int(0)], vec![int(0), frac(1, 3)]]), 2);
    assert_eq!(span_rank(&[]), 0);
}

#[test]
fn gamma0_has_a_single_rank_one_class() {
    let g = degenerate_loop_of_loops(&[int(1), int(1), int(1)]).unwrap();
    let scan = scan_wrd(&g, 1, 3, 4, DEFAULT_LATTICE_BUDGET).unwrap();
    assert_eq!(scan.classes.len(), 1);
    assert_eq!(scan.classes[0].key, class_key(&g, &pts(&g, &["v1", "v2", "v3"])));
    assert_eq!(scan.dim_estimate, 0);
    let cert = bn_rank_from_scan(&g, &scan, DEFAULT_LATTICE_BUDGET).unwrap();
    assert_eq!(cert.rho, 0);
    assert_eq!(cert.witness.as_ref().unwrap().divisor.degree(), 2);
    assert_eq!(verify_witness(&g, &cert, DEFAULT_LATTICE_BUDGET).unwrap(), Some(21));
}

#[test]
fn reduced_and_exhaustive_scans_agree() {
    let g = lol(2, 1, 1);
    for (r, d) in [(1, 3), (0, 2), (1, 2)] {
        let fast = scan_wrd(&g, r, d, 1, DEFAULT_LATTICE_BUDGET).unwrap();
        let slow = scan_wrd_exhaustive(&g, r, d, 1, DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(fast.classes, slow.classes);
        assert_eq!(fast.adjacency, slow.adjacency);
        assert_eq!(fast.dim_estimate, slow.dim_estimate);
    }
}

#[test]
fn degree_genus_classes_tile_the_grid() {
    let g = lol(2, 1, 1);
    let scan = scan_wrd(&g, 0, 4, 1, DEFAULT_LATTICE_BUDGET).unwrap();
    let lat = Lattice::new(&g, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let d = lat.random_divisor(4, 3, &mut rng);
        assert!(scan.index_of(&class_key(&g, &d)).is_some());
    }
    let ajs: std::collections::BTreeSet<_> = scan.classes.iter().map(|c| c.aj.clone()).collect();
    assert_eq!(ajs.len(), scan.classes.len());
}

#[test]
fn scan_budget_and_empty_cases() {
    let g = lol(5, 4, 3);
    let err = scan_wrd(&g, 1, 3, 4, 10).unwrap_err();
    assert_eq!(err.name(), "ResourceBudgetExceeded");
    let empty = scan_wrd(&g, 1, -1, 4, DEFAULT_LATTICE_BUDGET).unwrap();
    assert!(empty.classes.is_empty());
    assert_eq!(empty.dim_estimate, -1);
    let cert = bn_rank(&g, 1, -1, 4, DEFAULT_LATTICE_BUDGET).unwrap();
    assert_eq!(cert.rho, -1);
    let cert = bn_rank(&g, 2, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
    assert_eq!(cert.rho, -1);
}

#[test]
fn linear_systems() {
    let y = yu_graph();
    assert_eq!(
        linsys_enum(&y, &Divisor::zero(), 8, DEFAULT_LATTICE_BUDGET).unwrap(),
        vec![Divisor::zero()]
    );
    let d0 = pts(&y, &["v0", "w1"]);
    assert_eq!(linsys_enum(&y, &d0, 8, DEFAULT_LATTICE_BUDGET).unwrap(), vec![d0]);
    let neg = Divisor::from_terms([(y.vp("v0"), -1)]);
    assert!(linsys_enum(&y, &neg, 8, DEFAULT_LATTICE_BUDGET).unwrap().is_empty());
}

#[test]
fn three_cases_on_a_sample_of_points() {
    let g = lol(5, 4, 3);
    let cases = [
        (g.point_at("w1v2a", frac(1, 2)), 1, "v2"),
        (g.vp("v1"), 1, "v2"),
        (g.point_at("v2w2", int(2)), 2, "v3"),
        (g.vp("w2"), 2, "v3"),
        (g.vp("v2"), 2, "v3"),
        (g.point_at("v3w3", frac(3, 2)), 3, "v2"),
        (g.vp("v3"), 3, "v2"),
    ];
    for (w, case, base) in cases {
        let report = w13_case_check(&g, &w).unwrap();
        assert_eq!(report.case, case);
        assert_eq!(report.basepoint, g.vp(base));
        assert_eq!(report.rank, 0);
    }
    let report = w13_case_check(&g, &g.point_at("v2w2", int(2))).unwrap();
    let expected = Divisor::from_points(&[g.vp("v1"), g.point_at("v1w1", int(3)), g.vp("w2")]);
    assert_eq!(report.reduced, expected);
}

#[test]
fn case_check_rejects_wrong_graphs() {
    let g = lol(3, 4, 5);
    let w = g.point_at("v2w2", int(1));
    assert_eq!(w13_case_check(&g, &w).unwrap_err().name(), "BadFamilyParameters");
    let y = yu_graph();
    assert_eq!(
        w13_case_check(&y, &y.vp("v0")).unwrap_err().name(),
        "BadFamilyParameters"
    );
}

#[test]
fn sweep_families() {
    let g = lol(2, 1, 1);
    let spec = FamilySpec {
        family: SweepFamily::Constant(g),
        ts: vec![int(1), int(2)],
    };
    let rows = family_sweep(&spec, 1, 3, 1, DEFAULT_LATTICE_BUDGET).unwrap();
    assert_eq!(
        (rows[0].classes, rows[0].dim_estimate, rows[0].rho),
        (rows[1].classes, rows[1].dim_estimate, rows[1].rho)
    );
    let scaled = FamilySpec::lol4_scaled(vec![int(0)]);
    assert_eq!(scaled.instantiate(int(0)).unwrap().vertex_count(), 3);
    assert_eq!(scaled.instantiate(int(-1)).unwrap_err().name(), "BadFamilyParameters");
    let g5 = FamilySpec {
        family: SweepFamily::ScaledLoopOfLoops {
            singles: vec![int(1); 4],
        },
        ts: vec![int(0)],
    };
    assert_eq!(g5.instantiate(int(0)).unwrap_err().name(), "BadFamilyParameters");
    assert_eq!(g5.instantiate(int(1)).unwrap().genus(), 5);
}
