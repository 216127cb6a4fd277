//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All comparisons are exact; the only
//! tolerances are the wall-clock limits stated per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use tbn_core::graph::{div_of_pl, loop_of_loops, yu_graph, ClosedSubgraph, Divisor, Point};
use tbn_core::jacobian::{
    bn_rank_from_scan, family_sweep, linsys_enum, scan_wrd, verify_witness, w13_case_check, FamilySpec,
    DEFAULT_LATTICE_BUDGET,
};
use tbn_core::lattice::{for_each_multiset, Lattice};
use tbn_core::oracle::{self, finite_rank, DEFAULT_RANK_BUDGET};
use tbn_core::rank::{a_rank, is_special_open, rank, OpenSetDescription, RankDeterminingSet};
use tbn_core::rational::{frac, int, Rational};
use tbn_core::reduction::{class_key, effective_representative, reduce};

use common::{gamma0, generators, lol, pts, rng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Adjacency pairs form one simple path through all `n` classes.
fn is_simple_path(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 || edges.len() != n - 1 {
        return false;
    }
    let mut deg = vec![0; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    deg.iter().all(|&d| d <= 2)
}

fn ac1_interval_in_w13() -> Outcome {
    let start = Instant::now();
    let g = lol(5, 4, 3);
    let mut dims = Vec::new();
    let mut counts = Vec::new();
    for q in [4u64, 8] {
        let scan = scan_wrd(&g, 1, 3, q, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
        let n = scan.classes.len();
        ensure(n >= 5, || format!("q={q}: only {n} classes"))?;
        let ajs: BTreeSet<_> = scan.classes.iter().map(|c| c.aj.clone()).collect();
        ensure(ajs.len() == n, || format!("q={q}: Abel-Jacobi images collide"))?;
        ensure(is_simple_path(n, &scan.adjacency), || {
            format!("q={q}: adjacency {:?} is not a path", scan.adjacency)
        })?;
        // v1 + w3 + w for w on [v2, w2] at distance >= l1 - l3 = 2 from v2.
        let lat = Lattice::new(&g, q);
        let mut hits = 0;
        for k in 0..=(2 * lat.scale) {
            let w = g.point_at("v2w2", int(2) + lat.step() * Rational::from_integer(k));
            let d = &pts(&g, &["v1", "w3"]) + &Divisor::point(w);
            ensure(rank(&g, &d) == 1, || format!("rank({}) != 1", d.display(&g)))?;
            ensure(scan.index_of(&class_key(&g, &d)).is_some(), || {
                format!("{} missing", d.display(&g))
            })?;
            hits += 1;
        }
        ensure(scan.dim_estimate == 1, || {
            format!("q={q}: dim estimate {}", scan.dim_estimate)
        })?;
        dims.push(scan.dim_estimate);
        counts.push(format!("{n} classes at q={q} ({hits} of the form v1+w3+w)"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{}; dim {:?}; {:.1?}", counts.join(", "), dims, elapsed))
}

fn ac2_semicontinuity_failure() -> Outcome {
    let spec = FamilySpec::lol4_scaled(vec![int(1), frac(1, 2), frac(1, 4), int(0)]);
    let rows = family_sweep(&spec, 1, 3, 4, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
    for row in &rows[..3] {
        ensure(row.dim_estimate == 1, || {
            format!("t={}: dim {}", row.t, row.dim_estimate)
        })?;
    }
    let last = &rows[3];
    ensure(last.classes == 1 && last.dim_estimate == 0, || format!("t=0: {last:?}"))?;
    let g0 = gamma0();
    let scan = scan_wrd(&g0, 1, 3, 4, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
    let d = pts(&g0, &["v1", "v2", "v3"]);
    ensure(scan.classes[0].key == class_key(&g0, &d), || {
        "the class is not [v1+v2+v3]".into()
    })?;
    ensure(rank(&g0, &d) == 1, || "rank(v1+v2+v3) != 1".into())?;
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("t={} classes={} dim={}", r.t, r.classes, r.dim_estimate))
        .collect();
    Ok(summary.join("; "))
}

fn random_offset<R: Rng>(rng: &mut R, len: i64, open: bool) -> Rational {
    let den = rng.gen_range(if open { 2 } else { 1 }..=12);
    let num = if open {
        rng.gen_range(1..len * den)
    } else {
        rng.gen_range(0..=len * den)
    };
    frac(num, den)
}

fn ac3_bn_rank_zero() -> Outcome {
    let g = lol(5, 4, 3);
    let scan = scan_wrd(&g, 1, 3, 4, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
    let cert = bn_rank_from_scan(&g, &scan, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
    ensure(cert.rho == 0, || format!("rho = {}", cert.rho))?;
    let witness = cert.witness.as_ref().ok_or("no witness")?;
    ensure(witness.divisor == pts(&g, &["v1", "w1"]), || {
        format!("witness {}", witness.divisor.display(&g))
    })?;
    let checked = verify_witness(&g, &cert, DEFAULT_LATTICE_BUDGET)
        .map_err(|e| e.to_string())?
        .ok_or("witness does not re-verify")?;
    let mut rng = rng(13);
    let singles = ["w1v2a", "w1v2b", "w2v3a", "w2v3b", "w3v1a", "w3v1b"];
    let mut per_case = [0; 3];
    for case in 1..=3u8 {
        for _ in 0..20 {
            let (w, base) = match case {
                1 => {
                    let k = rng.gen_range(0..=singles.len());
                    if k == singles.len() {
                        (g.point_at("v1w1", random_offset(&mut rng, 5, false)), "v2")
                    } else {
                        (g.point_at(singles[k], random_offset(&mut rng, 1, true)), "v2")
                    }
                }
                2 => (g.point_at("v2w2", random_offset(&mut rng, 4, false)), "v3"),
                _ => (g.point_at("v3w3", random_offset(&mut rng, 3, false)), "v2"),
            };
            let report = w13_case_check(&g, &w).map_err(|e| format!("w = {}: {e}", g.point_name(&w)))?;
            ensure(
                report.case == case && report.basepoint == g.vp(base) && report.rank == 0,
                || format!("w = {}: {:?}", g.point_name(&w), report),
            )?;
            per_case[case as usize - 1] += 1;
        }
    }
    Ok(format!(
        "rho=0, witness v1+w1 ({checked} complements re-checked); case checks {per_case:?} all rank 0"
    ))
}

fn ac4_small_loop_example() -> Outcome {
    let g = lol(1, 1, 2);
    let d = pts(&g, &["v1", "w2", "v3"]);
    ensure(rank(&g, &d) == 0, || "rank(v1+w2+v3) != 0".into())?;
    let partial = RankDeterminingSet::user_supplied(["v1", "w1", "v2", "w2", "v3"].iter().map(|n| g.vp(n)))
        .map_err(|e| e.to_string())?;
    ensure(a_rank(&g, &d, &partial) == 1, || "A'-rank != 1".into())?;
    let r = reduce(&g, &d, &g.vp("w3"));
    let expected = &pts(&g, &["v1", "v2"]) + &Divisor::point(g.point_at("v3w3", int(1)));
    ensure(r.divisor == expected, || {
        format!("w3-reduced form {}", r.divisor.display(&g))
    })?;
    for genus in 4..=6 {
        let singles: Vec<Rational> = (0..genus - 1).map(|i| int(i as i64 + 1)).collect();
        let h = loop_of_loops(genus, &singles).map_err(|e| e.to_string())?;
        let last = format!("w{}", genus - 1);
        let closure = ClosedSubgraph::from_edge_ids(&h, &["v1w1", &format!("{last}v1a"), &format!("{last}v1b")])
            .map_err(|e| e.to_string())?;
        let u = OpenSetDescription {
            closure,
            boundary: vec![h.vp("w1"), h.vp(&last)],
        };
        ensure(is_special_open(&h, &u).map_err(|e| e.to_string())?, || {
            format!("g={genus}: not special")
        })?;
    }
    Ok("rank 0, A'-rank 1, w3-reduced form v1+v2+mid[v3,w3], special for g=4,5,6".into())
}

fn ac5_yu_linear_series() -> Outcome {
    let y = yu_graph();
    let q = 8;
    let mut sizes = Vec::new();
    for t in [int(0), frac(1, 4), frac(1, 2)] {
        let d = Divisor::from_points(&[y.vp("v0"), y.point_at("w0w1", int(1) - t)]);
        let got = linsys_enum(&y, &d, q, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
        let steps = (t * Rational::from_integer(q as i128)).to_integer();
        let mut expected: Vec<Divisor> = (0..=steps)
            .map(|k| {
                let lambda = Rational::new(k, q as i128);
                Divisor::from_points(&[y.point_at("v0v1", lambda), y.point_at("w0w1", int(1) - (t - lambda))])
            })
            .collect();
        expected.sort();
        ensure(got == expected, || format!("t={t}: got {} divisors", got.len()))?;
        sizes.push(format!("t={t}: {}", got.len()));
    }
    Ok(sizes.join(", "))
}

fn ac6_riemann_roch() -> Outcome {
    let mut rng = rng(6);
    let mut checked = 0;
    for (name, g) in generators() {
        let lat = Lattice::new(&g, 2);
        let genus = g.genus() as i64;
        let k = g.canonical_divisor();
        for _ in 0..50 {
            let deg = rng.gen_range(-3..=2 * genus);
            let d = lat.random_divisor(deg, 2, &mut rng);
            let lhs = rank(&g, &d) - rank(&g, &(&k - &d));
            ensure(lhs == deg - genus + 1, || {
                format!("{name}: {} gives {lhs}", d.display(&g))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} divisors, 0 failures"))
}

fn ac7_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(7);
    let mut checked = 0;
    for (name, g) in generators() {
        let lat = Lattice::new(&g, 2);
        let genus = g.genus() as i64;
        let ds: Vec<Divisor> = (0..100)
            .map(|_| {
                let deg = rng.gen_range(-2..=2 * genus - 2);
                lat.random_divisor(deg, 2, &mut rng)
            })
            .collect();
        for (d, res) in ds.iter().zip(oracle::cross_check_all(&g, &ds, 2, DEFAULT_RANK_BUDGET)) {
            let c = res.map_err(|e| format!("{name}: {e}"))?;
            ensure(c.agrees(), || format!("{name}: {} gives {c:?}", d.display(&g)))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} divisors, 0 failures, {elapsed:.1?}"))
}

fn ac8_reduced_uniqueness() -> Outcome {
    let mut rng = rng(8);
    let mut checked = 0;
    for (name, g) in generators() {
        let lat = Lattice::new(&g, 2);
        let genus = g.genus() as i64;
        for _ in 0..25 {
            let d = lat.random_divisor(rng.gen_range(-2..=2 * genus), 3, &mut rng);
            let f = lat.random_pl(&g, 3, &mut rng);
            let moved = &d + &div_of_pl(&g, &f).map_err(|e| e.to_string())?;
            let q: Point = lat.points()[rng.gen_range(0..lat.len())].clone();
            let a = reduce(&g, &d, &q);
            let b = reduce(&g, &moved, &q);
            ensure(a == b, || {
                format!("{name}: {} vs {}", a.divisor.display(&g), b.divisor.display(&g))
            })?;
            ensure(reduce(&g, &a.divisor, &q) == a, || format!("{name}: not idempotent"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs identical, idempotent"))
}

fn ac9_generic_chain() -> Outcome {
    let g = tbn_core::graph::generic_chain_of_loops_4();
    let scan = scan_wrd(&g, 1, 3, 4, DEFAULT_LATTICE_BUDGET).map_err(|e| e.to_string())?;
    ensure(scan.classes.len() == 2, || format!("{} classes", scan.classes.len()))?;
    ensure(scan.adjacency.is_empty() && scan.dim_estimate == 0, || {
        "classes are not isolated".into()
    })?;
    // Independent count on the unit subdivision.
    let sub = oracle::subdivide(&g, 1).map_err(|e| e.to_string())?;
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
    ensure(keys.len() == 2, || format!("oracle finds {} classes", keys.len()))?;
    for k in &keys {
        let lifted = class_key(&g, &sub.lift(k));
        ensure(scan.index_of(&lifted).is_some(), || {
            "oracle class missing from scan".into()
        })?;
    }
    Ok("2 isolated classes, dim 0; oracle count on the unit subdivision agrees".into())
}

fn ac10_effective_locus() -> Outcome {
    let g = lol(5, 4, 3);
    let lat = Lattice::new(&g, 2);
    let mut rng = rng(10);
    for _ in 0..100 {
        let d = lat.random_divisor(4, 3, &mut rng);
        ensure(effective_representative(&g, &d).is_some(), || {
            format!("{} not effective", d.display(&g))
        })?;
    }
    let mut missing = 0;
    for _ in 0..100 {
        let d = lat.random_divisor(3, 3, &mut rng);
        if effective_representative(&g, &d).is_none() {
            let sub = oracle::subdivide(&g, 2).map_err(|e| e.to_string())?;
            let fd = sub.map_divisor(&d).map_err(|e| e.to_string())?;
            ensure(oracle::finite_reduce(&sub.finite, &fd, 0)[0] < 0, || {
                "oracle disagrees".into()
            })?;
            missing += 1;
        }
    }
    ensure(missing > 0, || "every degree-3 class was effective".into())?;
    Ok(format!(
        "100/100 degree-4 classes effective; {missing}/100 degree-3 classes not"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC-1  W^1_3 interval on loop of loops (5,4,3)", ac1_interval_in_w13),
        (
            "AC-2  dim W^1_3 jumps down at t=0 in the scaled family",
            ac2_semicontinuity_failure,
        ),
        (
            "AC-3  Brill-Noether rank 0 with witness v1+w1; case checks",
            ac3_bn_rank_zero,
        ),
        (
            "AC-4  rank-determining counterexample on (1,1,2); special open sets",
            ac4_small_loop_example,
        ),
        ("AC-5  complete linear series on the Yu graph", ac5_yu_linear_series),
        ("AC-6  Riemann-Roch on random lattice divisors", ac6_riemann_roch),
        ("AC-7  metric rank equals finite-graph rank", ac7_oracle_equivalence),
        ("AC-8  reduced divisors are class keys", ac8_reduced_uniqueness),
        ("AC-9  generic chain of loops has 2 isolated classes", ac9_generic_chain),
        (
            "AC-10 degree-4 classes effective, some degree-3 not",
            ac10_effective_locus,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.1?}]", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
