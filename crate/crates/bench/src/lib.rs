//! Shared fixtures for the criterion benchmarks.

use domgreedy::{GenSpec, Graph};

/// Instances the solver benchmarks run on, named by their generator spec.
pub const SOLVER_FIXTURES: &[&str] =
    &["gnp:200:0.05:1", "gnp:1000:0.01:2", "grid:30:30", "random_tree:2000:3", "d_degenerate:1000:3:4"];

/// Small instances within reach of the exact oracle.
pub const EXACT_FIXTURES: &[&str] = &["grid:5:5", "gnp:30:0.15:5", "random_tree:30:6"];

pub fn fixture(spec: &str) -> Graph {
    spec.parse::<GenSpec>().and_then(|s| s.graph()).unwrap_or_else(|e| panic!("bad fixture `{spec}`: {e}"))
}
