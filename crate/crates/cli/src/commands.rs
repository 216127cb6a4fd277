use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tbn_core::graph::io::{self, divisor_entries};
use tbn_core::graph::{generate, generic_chain_of_loops_4, Divisor, GraphFamily, MetricGraph, Point};
use tbn_core::jacobian::{
    abel_jacobi, bn_rank, canonical_basis, family_sweep, linsys_enum, scan_wrd, verify_witness, w13_case_check,
    FamilySpec, SweepFamily, DEFAULT_LATTICE_BUDGET,
};
use tbn_core::lattice::Lattice;
use tbn_core::oracle::{self, DEFAULT_RANK_BUDGET};
use tbn_core::rank::{a_rank, rank, rank_determining_set, RankDeterminingSet};
use tbn_core::rational::{self, Rational};
use tbn_core::reduction::{is_equivalent, reduce};

use crate::args::{Command, Common, Family, Format, SweepKind};

/// Why a command did not produce a result.
#[derive(Debug)]
pub enum Failure {
    /// Bad flag combination, detected after parsing. Exit code 2.
    Usage(String),
    /// Error from the library or from reading inputs. Exit code 1.
    Domain { name: String, message: String },
}

impl From<tbn_core::Error> for Failure {
    fn from(e: tbn_core::Error) -> Self {
        Failure::Domain {
            name: e.name().into(),
            message: e.to_string(),
        }
    }
}

pub struct Outcome {
    pub result: Value,
    /// Replaces the JSON report on the output when set.
    pub table: Option<String>,
    /// A file the command produces besides its report.
    pub artifact: Option<String>,
}

impl Outcome {
    fn json(result: Value) -> Self {
        Outcome {
            result,
            table: None,
            artifact: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Domain {
        name: "Io".into(),
        message: format!("{}: {e}", path.display()),
    })
}

fn load_graph(path: &Path) -> Result<MetricGraph, Failure> {
    Ok(io::graph_from_json(&read(path)?)?)
}

fn load_divisor(graph: &MetricGraph, path: &Path) -> Result<Divisor, Failure> {
    Ok(io::divisor_from_json(graph, &read(path)?)?)
}

fn rationals(xs: &[String]) -> Result<Vec<Rational>, Failure> {
    Ok(xs.iter().map(|s| rational::parse(s)).collect::<tbn_core::Result<_>>()?)
}

/// A vertex name or `edge@offset`.
pub fn parse_point(graph: &MetricGraph, s: &str) -> Result<Point, Failure> {
    match s.split_once('@') {
        Some((edge, offset)) => {
            let e = graph.edge_by_id(edge)?;
            Ok(graph.point_on_edge(e, rational::parse(offset)?)?)
        }
        None => Ok(Point::Vertex(graph.vertex(s)?)),
    }
}

fn divisor_json(graph: &MetricGraph, d: &Divisor) -> Value {
    json!({ "entries": divisor_entries(graph, d), "display": d.display(graph) })
}

fn build_graph(
    kind: Family,
    g: Option<usize>,
    lengths: &[String],
    pairs: &[String],
    arcs: &[String],
    bridges: &[String],
) -> Result<MetricGraph, Failure> {
    let pairs = rationals(pairs)?;
    let family = match kind {
        Family::GenericChainOfLoops => return Ok(generic_chain_of_loops_4()),
        Family::Yu => GraphFamily::Yu,
        Family::LoopOfLoops => {
            let singles = rationals(lengths)?;
            if let Some(g) = g {
                if g != singles.len() + 1 {
                    return Err(Failure::Usage(format!(
                        "--g {g} needs {} single-edge lengths",
                        g.saturating_sub(1)
                    )));
                }
            }
            GraphFamily::LoopOfLoops {
                singles,
                pairs: (!pairs.is_empty()).then_some(pairs),
            }
        }
        Family::DegenerateLoopOfLoops => {
            let pairs: [Rational; 3] = pairs
                .try_into()
                .map_err(|_| Failure::Usage("--pairs needs exactly three lengths".into()))?;
            GraphFamily::DegenerateLoopOfLoops { pairs }
        }
        Family::ChainOfLoops => {
            let arcs = arcs
                .iter()
                .map(|a| {
                    let (x, y) = a
                        .split_once(':')
                        .ok_or_else(|| Failure::Usage(format!("arc {a:?} is not of the form a:b")))?;
                    Ok((rational::parse(x)?, rational::parse(y)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            GraphFamily::ChainOfLoops {
                arcs,
                bridges: rationals(bridges)?,
            }
        }
    };
    Ok(generate(&family)?)
}

/// Echo of the resolved inputs, recorded in the report.
pub fn inputs(cmd: &Command, common: &Common) -> Value {
    let mut v = serde_json::to_value(cmd).expect("command serializes");
    let args = v
        .as_object_mut()
        .and_then(|m| m.values_mut().next())
        .expect("externally tagged");
    args["seed"] = json!(common.seed);
    args["budget"] = json!(common.budget.map(|b| b.to_string()));
    args.take()
}

fn budget(common: &Common, default: u128) -> u128 {
    common.budget.unwrap_or(default)
}

pub fn execute(cmd: &Command, common: &Common) -> Result<Outcome, Failure> {
    if common.format == Format::Tsv && !matches!(cmd, Command::Sweep { .. }) {
        return Err(Failure::Usage("--format tsv is only available for sweep".into()));
    }
    let lattice_budget = budget(common, DEFAULT_LATTICE_BUDGET);
    let rank_budget = budget(common, DEFAULT_RANK_BUDGET);
    match cmd {
        Command::Gen {
            family: kind,
            g,
            lengths,
            pairs,
            arcs,
            bridges,
        } => {
            let graph = build_graph(*kind, *g, lengths, pairs, arcs, bridges)?;
            let text = io::graph_to_json(&graph);
            Ok(Outcome {
                result: json!({
                    "genus": graph.genus(),
                    "vertices": graph.vertex_count(),
                    "edges": graph.edges().len(),
                }),
                table: None,
                artifact: Some(text),
            })
        }
        Command::Genus { graph } => {
            let g = load_graph(&graph.graph)?;
            Ok(Outcome::json(json!({ "genus": g.genus() })))
        }
        Command::Canonical { graph } => {
            let g = load_graph(&graph.graph)?;
            Ok(Outcome::json(
                json!({ "canonical": divisor_json(&g, &g.canonical_divisor()) }),
            ))
        }
        Command::Reduce {
            graph,
            divisor,
            basepoint,
        } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, divisor)?;
            let q = match basepoint {
                Some(s) => parse_point(&g, s)?,
                None => g.canonical_basepoint(),
            };
            let red = reduce(&g, &d, &q);
            Ok(Outcome::json(json!({
                "basepoint": g.point_name(&q),
                "reduced": divisor_json(&g, &red.divisor),
            })))
        }
        Command::Equiv { graph, d1, d2 } => {
            let g = load_graph(&graph.graph)?;
            let a = load_divisor(&g, d1)?;
            let b = load_divisor(&g, d2)?;
            Ok(Outcome::json(json!({ "equivalent": is_equivalent(&g, &a, &b) })))
        }
        Command::Rank {
            graph,
            divisor,
            oracle: use_oracle,
            q,
        } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, divisor)?;
            if *use_oracle {
                let q = q.unwrap_or_else(|| oracle::resolution_for(&g, d.support()));
                let check = oracle::cross_check(&g, &d, q, rank_budget)?;
                Ok(Outcome::json(json!({
                    "rank": check.metric_rank,
                    "oracle": { "q": q, "finite_rank": check.finite_rank, "agrees": check.agrees() },
                })))
            } else {
                Ok(Outcome::json(json!({ "rank": rank(&g, &d) })))
            }
        }
        Command::Arank { graph, divisor, set } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, divisor)?;
            let a = if set.is_empty() {
                rank_determining_set(&g)
            } else {
                let points = set.iter().map(|s| parse_point(&g, s)).collect::<Result<Vec<_>, _>>()?;
                RankDeterminingSet::user_supplied(points)?
            };
            Ok(Outcome::json(json!({
                "a_rank": a_rank(&g, &d, &a),
                "set": a.points().iter().map(|p| g.point_name(p)).collect::<Vec<_>>(),
                "provenance": format!("{:?}", a.provenance()),
            })))
        }
        Command::Linsys { graph, divisor, q } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, divisor)?;
            let members = linsys_enum(&g, &d, *q, lattice_budget)?;
            Ok(Outcome::json(json!({
                "q": q,
                "count": members.len(),
                "divisors": members.iter().map(|m| divisor_json(&g, m)).collect::<Vec<_>>(),
            })))
        }
        Command::ScanWrd { graph, rdq } => {
            let g = load_graph(&graph.graph)?;
            let scan = scan_wrd(&g, rdq.r, rdq.d, rdq.q, lattice_budget)?;
            Ok(Outcome::json(scan.to_json(&g)))
        }
        Command::BnRank { graph, rdq, verify } => {
            let g = load_graph(&graph.graph)?;
            let cert = bn_rank(&g, rdq.r, rdq.d, rdq.q, lattice_budget)?;
            let mut result = cert.to_json(&g);
            if *verify {
                let checked = verify_witness(&g, &cert, lattice_budget)?;
                result["witness_verified"] = json!(checked.map(|n| n.to_string()));
            }
            Ok(Outcome::json(result))
        }
        Command::Sweep {
            family: kind,
            graph,
            ts,
            rdq,
        } => {
            let ts = rationals(ts)?;
            let spec = match kind {
                SweepKind::Lol4Scaled => FamilySpec::lol4_scaled(ts),
                SweepKind::Constant => {
                    let path = graph
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("--family constant needs --graph".into()))?;
                    FamilySpec {
                        family: SweepFamily::Constant(load_graph(path)?),
                        ts,
                    }
                }
            };
            let rows = family_sweep(&spec, rdq.r, rdq.d, rdq.q, lattice_budget)?;
            let mut table = String::from("t\tclasses\tdim_estimate\trho\n");
            for row in &rows {
                table += &format!(
                    "{}\t{}\t{}\t{}\n",
                    rational::format(&row.t),
                    row.classes,
                    row.dim_estimate,
                    row.rho
                );
            }
            Ok(Outcome {
                result: json!({ "r": rdq.r, "d": rdq.d, "q": rdq.q, "rows": rows }),
                table: (common.format == Format::Tsv).then_some(table),
                artifact: None,
            })
        }
        Command::CrossCheck {
            graph,
            count,
            min_degree,
            max_degree,
            q,
        } => {
            let g = load_graph(&graph.graph)?;
            let genus = g.genus() as i64;
            let lo = min_degree.unwrap_or(-1);
            let hi = max_degree.unwrap_or(2 * genus - 2);
            if lo > hi {
                return Err(Failure::Usage(format!("empty degree range {lo}..={hi}")));
            }
            let lat = Lattice::new(&g, *q);
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let ds: Vec<Divisor> = (0..*count)
                .map(|_| {
                    let deg = rng.gen_range(lo..=hi);
                    lat.random_divisor(deg, 2, &mut rng)
                })
                .collect();
            let mut rows = Vec::with_capacity(ds.len());
            let mut failures = 0;
            for (d, res) in ds.iter().zip(oracle::cross_check_all(&g, &ds, *q, rank_budget)) {
                let c = res?;
                failures += usize::from(!c.agrees());
                rows.push(json!({
                    "divisor": d.display(&g),
                    "metric_rank": c.metric_rank,
                    "finite_rank": c.finite_rank,
                    "agrees": c.agrees(),
                }));
            }
            Ok(Outcome::json(
                json!({ "q": q, "checked": rows.len(), "failures": failures, "rows": rows }),
            ))
        }
        Command::W13Case { graph, point } => {
            let g = load_graph(&graph.graph)?;
            let w = parse_point(&g, point)?;
            Ok(Outcome::json(w13_case_check(&g, &w)?.to_json(&g)))
        }
        Command::Aj { graph, divisor } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, divisor)?;
            let basis = canonical_basis(&g);
            Ok(Outcome::json(json!({
                "basepoint": g.vertex_name(basis.basepoint),
                "aj": abel_jacobi(&g, &basis, &d),
            })))
        }
    }
}
