//! Brill–Noether invariants along a one-parameter family of graphs.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::bn::bn_rank_from_scan;
use super::scan::scan_wrd;
use crate::error::{Error, Result};
use crate::graph::{degenerate_loop_of_loops, loop_of_loops, MetricGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepFamily {
    /// Loop of loops with single edges `t·singles` and unit doubled edges.
    /// At `t = 0` (genus 4 only) the single edges are contracted.
    ScaledLoopOfLoops { singles: Vec<Rational> },
    /// The same graph for every `t`.
    Constant(MetricGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: SweepFamily,
    pub ts: Vec<Rational>,
}

impl FamilySpec {
    /// Single edges `t·(5, 4, 3)`, unit doubled edges.
    pub fn lol4_scaled(ts: Vec<Rational>) -> Self {
        FamilySpec {
            family: SweepFamily::ScaledLoopOfLoops {
                singles: [5, 4, 3].map(Rational::from_integer).to_vec(),
            },
            ts,
        }
    }

    pub fn genus(&self) -> usize {
        match &self.family {
            SweepFamily::ScaledLoopOfLoops { singles } => singles.len() + 1,
            SweepFamily::Constant(g) => g.genus(),
        }
    }

    pub fn instantiate(&self, t: Rational) -> Result<MetricGraph> {
        let bad = |reason: String| Error::BadFamilyParameters {
            family: "sweep".into(),
            reason,
        };
        let graph = match &self.family {
            SweepFamily::Constant(g) => g.clone(),
            SweepFamily::ScaledLoopOfLoops { singles } => {
                if t < Rational::zero() {
                    return Err(bad(format!("negative parameter {}", rational::format(&t))));
                }
                if t.is_zero() {
                    if singles.len() != 3 {
                        return Err(bad("t = 0 is only available in genus 4".into()));
                    }
                    degenerate_loop_of_loops(&[Rational::from_integer(1); 3])?
                } else {
                    let scaled: Vec<Rational> = singles.iter().map(|l| l * t).collect();
                    loop_of_loops(singles.len() + 1, &scaled)?
                }
            }
        };
        if graph.genus() != self.genus() {
            return Err(bad(format!(
                "instance at t = {} has genus {}",
                rational::format(&t),
                graph.genus()
            )));
        }
        Ok(graph)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    #[serde(with = "rational::serde_pq")]
    pub t: Rational,
    pub classes: usize,
    pub dim_estimate: i64,
    pub rho: i64,
}

/// One row per `t`, in the order given.
pub fn family_sweep(spec: &FamilySpec, r: usize, d: i64, q: u64, budget: u128) -> Result<Vec<SweepRow>> {
    spec.ts
        .par_iter()
        .map(|&t| {
            let graph = spec.instantiate(t)?;
            let scan = scan_wrd(&graph, r, d, q, budget)?;
            let cert = bn_rank_from_scan(&graph, &scan, budget)?;
            Ok(SweepRow {
                t,
                classes: scan.classes.len(),
                dim_estimate: scan.dim_estimate,
                rho: cert.rho,
            })
        })
        .collect()
}
