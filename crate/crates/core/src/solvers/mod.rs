//! Greedy dominating-set solvers.
//!
//! * [`solve_classical`]: pick the vertex dominating the most undominated
//!   targets, one per round.
//! * [`solve_fixed_i`]: the modified rule. Each round picks `v_1` like the
//!   classical rule, then keeps picking `v_{s+1}` maximising `|N[v] ∩ B_s|`
//!   where `B_s` is the part of `N[v_1] ∩ A` still adjacent to every earlier
//!   pick, stopping after `i - 1` picks or when `B_s` is exhausted.
//! * [`solve_auto`]: the same chain without a cap; it continues only while the
//!   next B-set has at least `s + 1` elements, and reports the largest
//!   `K_{ℓ,ℓ}` it passed through as a witness.
//! * [`solve_hybrid`]: extends every prefix `D_0 = ∅, D_1, …` of a modified
//!   run with the classical rule and keeps the smallest result.
//!
//! Ties are broken towards the lowest vertex id everywhere, so every run is
//! deterministic.

mod engine;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use engine::{classical_rounds, modified_round, Continuation, Coverage};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("parameter i must be at least 2, got {0}")]
    InvalidI(usize),
    #[error("fixed-i mode requires the parameter i")]
    MissingI,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertices picked in one round together with the sizes of their B-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub chosen: Vec<Vertex>,
    pub b_sizes: Vec<usize>,
    pub newly_dominated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTrace {
    pub rounds: Vec<Round>,
    pub initial_targets: VertexSet,
    pub final_set: VertexSet,
}

impl GreedyTrace {
    fn new(rounds: Vec<Round>, initial_targets: VertexSet) -> Self {
        let final_set = rounds.iter().flat_map(|r| r.chosen.iter().copied()).collect();
        GreedyTrace { rounds, initial_targets, final_set }
    }

    /// `D_0, D_1, …`: the partial dominating sets after each round.
    pub fn prefixes(&self) -> impl Iterator<Item = VertexSet> + '_ {
        (0..=self.rounds.len()).map(|p| self.rounds[..p].iter().flat_map(|r| r.chosen.iter().copied()).collect())
    }
}

/// Two disjoint vertex sets with every cross pair adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    pub left: VertexSet,
    pub right: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Classical,
    Fixed,
    Auto,
    Hybrid,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Classical => "classical",
            Algorithm::Fixed => "fixed",
            Algorithm::Auto => "auto",
            Algorithm::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters shared by the modified solvers. `i = None` selects auto mode.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverParams {
    pub i: Option<usize>,
    pub targets: Option<VertexSet>,
}

impl SolverParams {
    pub fn fixed(i: usize) -> Self {
        SolverParams { i: Some(i), targets: None }
    }

    pub fn auto() -> Self {
        SolverParams::default()
    }

    pub fn with_targets(mut self, targets: VertexSet) -> Self {
        self.targets = Some(targets);
        self
    }

    fn resolve_targets(&self, g: &Graph) -> Result<VertexSet, SolverError> {
        match &self.targets {
            Some(t) => {
                g.check_set(t)?;
                Ok(t.clone())
            }
            None => Ok(VertexSet::full(g.n())),
        }
    }

    fn validated_i(&self) -> Result<Option<usize>, SolverError> {
        match self.i {
            Some(i) if i < 2 => Err(SolverError::InvalidI(i)),
            other => Ok(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub dominating_set: VertexSet,
    pub trace: GreedyTrace,
    pub algorithm: Algorithm,
    pub i: Option<usize>,
    pub t_detected: Option<usize>,
    pub witness: Option<BicliqueWitness>,
    /// Hybrid only: index `p` of the prefix `D_p` whose extension won.
    pub hybrid_prefix: Option<usize>,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.dominating_set.len()
    }

    pub fn to_document(&self) -> SolveDocument {
        SolveDocument {
            algorithm: self.algorithm,
            i: self.i,
            dominating_set: self.dominating_set.clone(),
            size: self.size(),
            t_detected: self.t_detected,
            witness: self.witness.clone(),
            hybrid_prefix: self.hybrid_prefix,
            rounds: self.trace.rounds.clone(),
        }
    }
}

/// JSON shape of a [`SolveResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub dominating_set: VertexSet,
    pub size: usize,
    pub t_detected: Option<usize>,
    pub witness: Option<BicliqueWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hybrid_prefix: Option<usize>,
    pub rounds: Vec<Round>,
}

pub fn solve_classical(g: &Graph, targets: &VertexSet) -> Result<SolveResult, SolverError> {
    g.check_set(targets)?;
    let mut coverage = Coverage::new(g, targets);
    let rounds = classical_rounds(g, &mut coverage);
    Ok(finish(Algorithm::Classical, None, GreedyTrace::new(rounds, targets.clone()), None))
}

pub fn solve_fixed_i(g: &Graph, params: &SolverParams) -> Result<SolveResult, SolverError> {
    let i = params.validated_i()?.ok_or(SolverError::MissingI)?;
    let targets = params.resolve_targets(g)?;
    let run = modified_run(g, &targets, Continuation::Fixed { i });
    Ok(finish(Algorithm::Fixed, Some(i), GreedyTrace::new(run.rounds, targets), None))
}

pub fn solve_auto(g: &Graph, targets: &VertexSet) -> Result<SolveResult, SolverError> {
    g.check_set(targets)?;
    let run = modified_run(g, targets, Continuation::Auto);
    let auto = run.auto.clone();
    let mut result = finish(Algorithm::Auto, None, GreedyTrace::new(run.rounds, targets.clone()), None);
    result.t_detected = Some(auto.t_detected);
    result.witness = auto.witness;
    Ok(result)
}

pub fn solve_hybrid(g: &Graph, params: &SolverParams) -> Result<SolveResult, SolverError> {
    let i = params.validated_i()?;
    let targets = params.resolve_targets(g)?;
    let rule = match i {
        Some(i) => Continuation::Fixed { i },
        None => Continuation::Auto,
    };
    let base = modified_run(g, &targets, rule);

    let mut coverage = Coverage::new(g, &targets);
    let mut best: Option<(usize, usize, Vec<Round>)> = None;
    let mut prefix_len = 0;
    for p in 0..=base.rounds.len() {
        if p > 0 {
            let round = &base.rounds[p - 1];
            for &v in &round.chosen {
                coverage.dominate(g, v);
            }
            prefix_len += round.chosen.len();
        }
        let mut residual = coverage.clone();
        let extension = classical_rounds(g, &mut residual);
        let size = prefix_len + extension.iter().map(|r| r.chosen.len()).sum::<usize>();
        if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
            best = Some((size, p, extension));
        }
    }
    let (_, p, extension) = best.expect("prefix D_0 always exists");
    let mut rounds = base.rounds[..p].to_vec();
    rounds.extend(extension);

    let mut result = finish(Algorithm::Hybrid, i, GreedyTrace::new(rounds, targets), Some(p));
    if i.is_none() {
        result.t_detected = Some(base.auto.t_detected);
        result.witness = base.auto.witness;
    }
    Ok(result)
}

/// True iff `left` and `right` are disjoint and every cross pair is an edge.
pub fn verify_witness(g: &Graph, w: &BicliqueWitness) -> bool {
    if g.check_set(&w.left).is_err() || g.check_set(&w.right).is_err() {
        return false;
    }
    w.left.is_disjoint(&w.right) && w.left.iter().all(|u| w.right.iter().all(|v| g.has_edge(u, v)))
}

/// Algorithm selector used by the CLI and the benchmark harness.
///
/// Textual forms: `classical`, `fixed:<i>`, `auto`, `hybrid` (auto base run)
/// and `hybrid:<i>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgoSpec {
    Classical,
    Fixed(usize),
    Auto,
    Hybrid(Option<usize>),
}

impl AlgoSpec {
    pub fn algorithm(self) -> Algorithm {
        match self {
            AlgoSpec::Classical => Algorithm::Classical,
            AlgoSpec::Fixed(_) => Algorithm::Fixed,
            AlgoSpec::Auto => Algorithm::Auto,
            AlgoSpec::Hybrid(_) => Algorithm::Hybrid,
        }
    }

    pub fn i(self) -> Option<usize> {
        match self {
            AlgoSpec::Fixed(i) | AlgoSpec::Hybrid(Some(i)) => Some(i),
            _ => None,
        }
    }

    pub fn solve(self, g: &Graph, targets: Option<&VertexSet>) -> Result<SolveResult, SolverError> {
        let full;
        let targets = match targets {
            Some(t) => t,
            None => {
                full = VertexSet::full(g.n());
                &full
            }
        };
        match self {
            AlgoSpec::Classical => solve_classical(g, targets),
            AlgoSpec::Auto => solve_auto(g, targets),
            AlgoSpec::Fixed(i) => solve_fixed_i(g, &SolverParams::fixed(i).with_targets(targets.clone())),
            AlgoSpec::Hybrid(i) => solve_hybrid(g, &SolverParams { i, targets: Some(targets.clone()) }),
        }
    }
}

impl fmt::Display for AlgoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgoSpec::Classical => f.write_str("classical"),
            AlgoSpec::Fixed(i) => write!(f, "fixed:{i}"),
            AlgoSpec::Auto => f.write_str("auto"),
            AlgoSpec::Hybrid(None) => f.write_str("hybrid"),
            AlgoSpec::Hybrid(Some(i)) => write!(f, "hybrid:{i}"),
        }
    }
}

impl FromStr for AlgoSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let i = arg
            .map(|a| match a.parse::<usize>() {
                Ok(i) if i >= 2 => Ok(i),
                _ => Err(format!("invalid i in `{s}` (need an integer ≥ 2)")),
            })
            .transpose()?;
        match (name, i) {
            ("classical", None) => Ok(AlgoSpec::Classical),
            ("auto", None) => Ok(AlgoSpec::Auto),
            ("fixed", Some(i)) => Ok(AlgoSpec::Fixed(i)),
            ("fixed", None) => Err("`fixed` needs a parameter, e.g. `fixed:2`".into()),
            ("hybrid", i) => Ok(AlgoSpec::Hybrid(i)),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
struct AutoSummary {
    t_detected: usize,
    witness: Option<BicliqueWitness>,
}

struct ModifiedRun {
    rounds: Vec<Round>,
    auto: AutoSummary,
}

fn modified_run(g: &Graph, targets: &VertexSet, rule: Continuation) -> ModifiedRun {
    let mut coverage = Coverage::new(g, targets);
    let mut scratch = Vec::new();
    let mut rounds = Vec::new();
    // (ℓ certified as K_{ℓ,ℓ}, witness)
    let mut best: (usize, Option<BicliqueWitness>) = (0, None);
    while !coverage.is_empty() {
        let out = modified_round(g, &mut coverage, rule, &mut scratch);
        let ell = out.round.chosen.len();
        // For ℓ ≥ 2 the auto continuation test already guarantees |B_ℓ| ≥ ℓ.
        let certified = if out.last_b.len() >= ell { ell } else { ell - 1 };
        if rule == Continuation::Auto && certified > best.0 {
            let left = VertexSet::from_unsorted(out.round.chosen[..certified].to_vec());
            let right = VertexSet::from_sorted(out.last_b[..certified].to_vec());
            best = (certified, Some(BicliqueWitness { left, right }));
        }
        rounds.push(out.round);
    }
    ModifiedRun { rounds, auto: AutoSummary { t_detected: best.0 + 1, witness: best.1 } }
}

fn finish(algorithm: Algorithm, i: Option<usize>, trace: GreedyTrace, hybrid_prefix: Option<usize>) -> SolveResult {
    SolveResult {
        dominating_set: trace.final_set.clone(),
        trace,
        algorithm,
        i,
        t_detected: None,
        witness: None,
        hybrid_prefix,
    }
}
