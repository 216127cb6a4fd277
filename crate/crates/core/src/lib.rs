//! Exact divisor theory on compact metric graphs.
//!
//! Graphs carry rational edge lengths, divisors are supported on rational
//! points, and every algorithm here is exact. The crate covers:
//!
//! * [`graph`]: metric graphs, points, divisors, piecewise-linear functions,
//!   closed subgraphs and the named graph families.
//! * [`reduction`]: Dhar's burning algorithm, subgraph firing and
//!   `q`-reduced divisors (the canonical key of a divisor class).
//! * [`rank`]: Baker–Norine rank through rank-determining sets.
//! * [`jacobian`]: Abel–Jacobi coordinates, lattice scans of Brill–Noether
//!   loci, Brill–Noether rank certificates and family sweeps.
//! * [`lattice`]: points at a fixed resolution and enumeration of lattice
//!   divisors.
//! * [`oracle`]: an independent finite-graph implementation used to
//!   cross-check the metric algorithms.

pub mod error;
pub mod graph;
pub mod jacobian;
pub mod lattice;
pub mod oracle;
pub mod rank;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use graph::{ClosedSubgraph, Divisor, Edge, GraphFamily, MetricGraph, PlFunction, Point};
pub use rational::Rational;
pub use reduction::ReducedForm;
