//! Ground truth for small instances.
//!
//! [`exact_min_dominating_set`] is a branch and bound that always branches on
//! the undominated target with the fewest possible dominators, seeded with the
//! classical greedy solution as upper bound. [`has_biclique`] grows vertex
//! subsets while intersecting their open neighbourhoods.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::solvers::{solve_classical, BicliqueWitness};

pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 20_000_000;
pub const DEFAULT_BICLIQUE_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("search exceeded the limit of {limit} {what}")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("biclique side {requested} exceeds the configured cap {cap}")]
    BicliqueTooLarge { requested: usize, cap: usize },
    #[error("biclique sides must be at least 1, got ({a}, {b})")]
    EmptySide { a: usize, b: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub opt_size: usize,
    pub witness_set: VertexSet,
    pub node_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal(OracleResult),
    /// No dominating set of size at most `budget` exists.
    ExceedsBudget {
        budget: usize,
        node_count: u64,
    },
}

impl OracleOutcome {
    pub fn optimal(self) -> Option<OracleResult> {
        match self {
            OracleOutcome::Optimal(r) => Some(r),
            OracleOutcome::ExceedsBudget { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    pub budget: Option<usize>,
    pub node_limit: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { budget: None, node_limit: DEFAULT_NODE_LIMIT }
    }
}

pub fn exact_min_dominating_set(
    g: &Graph,
    targets: &VertexSet,
    budget: Option<usize>,
) -> Result<OracleOutcome, OracleError> {
    exact_min_dominating_set_with(g, targets, ExactOptions { budget, ..ExactOptions::default() })
}

pub fn exact_min_dominating_set_with(
    g: &Graph,
    targets: &VertexSet,
    opts: ExactOptions,
) -> Result<OracleOutcome, OracleError> {
    let greedy = solve_classical(g, targets).map_err(|e| match e {
        crate::solvers::SolverError::Graph(e) => OracleError::Graph(e),
        other => unreachable!("classical greedy has no parameters: {other}"),
    })?;

    let mut search = BranchAndBound::new(g, targets, opts.node_limit);
    match opts.budget {
        Some(b) if greedy.size() > b => search.bound = b + 1,
        _ => {
            search.bound = greedy.size();
            search.best = Some(greedy.dominating_set.into_vec());
        }
    }
    search.run()?;

    Ok(match search.best {
        Some(best) => OracleOutcome::Optimal(OracleResult {
            opt_size: best.len(),
            witness_set: VertexSet::from_unsorted(best),
            node_count: search.nodes,
        }),
        None => OracleOutcome::ExceedsBudget {
            budget: opts.budget.expect("no incumbent only happens under a budget"),
            node_count: search.nodes,
        },
    })
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    is_target: Vec<bool>,
    /// number of chosen vertices in `N[u]`
    cover: Vec<u32>,
    undominated: usize,
    chosen: Vec<Vertex>,
    best: Option<Vec<Vertex>>,
    /// solutions must be strictly smaller than this
    bound: usize,
    nodes: u64,
    node_limit: u64,
    gain: Vec<usize>,
}

impl<'a> BranchAndBound<'a> {
    fn new(g: &'a Graph, targets: &VertexSet, node_limit: u64) -> Self {
        let mut is_target = vec![false; g.n()];
        for t in targets.iter() {
            is_target[t] = true;
        }
        BranchAndBound {
            g,
            is_target,
            cover: vec![0; g.n()],
            undominated: targets.len(),
            chosen: Vec::new(),
            best: None,
            bound: usize::MAX,
            nodes: 0,
            node_limit,
            gain: vec![0; g.n()],
        }
    }

    fn add(&mut self, v: Vertex) {
        self.chosen.push(v);
        for u in self.g.closed_iter(v) {
            if self.cover[u] == 0 && self.is_target[u] {
                self.undominated -= 1;
            }
            self.cover[u] += 1;
        }
    }

    fn remove(&mut self, v: Vertex) {
        self.chosen.pop();
        for u in self.g.closed_iter(v) {
            self.cover[u] -= 1;
            if self.cover[u] == 0 && self.is_target[u] {
                self.undominated += 1;
            }
        }
    }

    fn run(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(OracleError::ResourceLimit { what: "search nodes", limit: self.node_limit });
        }
        if self.undominated == 0 {
            if self.chosen.len() < self.bound {
                self.bound = self.chosen.len();
                self.best = Some(self.chosen.clone());
            }
            return Ok(());
        }
        if self.chosen.len() + 1 >= self.bound {
            return Ok(());
        }

        // Undominated-target counts per vertex, plus the branching target.
        self.gain.iter_mut().for_each(|x| *x = 0);
        let mut pivot: Option<(Vertex, usize)> = None;
        for t in self.g.vertices() {
            if !self.is_target[t] || self.cover[t] > 0 {
                continue;
            }
            for w in self.g.closed_iter(t) {
                self.gain[w] += 1;
            }
            let options = self.g.degree(t) + 1;
            if pivot.is_none_or(|(_, o)| options < o) {
                pivot = Some((t, options));
            }
        }
        let max_gain = *self.gain.iter().max().expect("an undominated target exists");
        let lower = self.undominated.div_ceil(max_gain);
        if self.chosen.len() + lower >= self.bound {
            return Ok(());
        }

        let (t, _) = pivot.expect("an undominated target exists");
        let mut branches: Vec<(usize, Vertex)> = self.g.closed_iter(t).map(|v| (self.gain[v], v)).collect();
        branches.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, v) in branches {
            self.add(v);
            let r = self.run();
            self.remove(v);
            r?;
            if self.chosen.len() + 1 >= self.bound {
                break;
            }
        }
        Ok(())
    }
}

/// Every dominating set of `targets` of minimum cardinality, in
/// lexicographic order.
pub fn enumerate_min_dominating_sets(g: &Graph, targets: &VertexSet) -> Result<Vec<VertexSet>, OracleError> {
    enumerate_min_dominating_sets_with(g, targets, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_min_dominating_sets_with(
    g: &Graph,
    targets: &VertexSet,
    limit: u64,
) -> Result<Vec<VertexSet>, OracleError> {
    let k =
        exact_min_dominating_set(g, targets, None)?.optimal().expect("unbudgeted search is always optimal").opt_size;
    if binomial(g.n() as u64, k as u64).is_none_or(|c| c > limit) {
        return Err(OracleError::ResourceLimit { what: "candidate subsets", limit });
    }
    let mut out = Vec::new();
    for combo in g.vertices().combinations(k) {
        let d = VertexSet::from_sorted(combo);
        if g.is_dominating(&d, targets)? {
            out.push(d);
        }
    }
    Ok(out)
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n.saturating_sub(k));
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Searches for `K_{a,b}` as a (not necessarily induced) subgraph, with
/// `|left| = a` and `|right| = b`. Sides larger than
/// [`DEFAULT_BICLIQUE_CAP`] are refused.
pub fn has_biclique(g: &Graph, a: usize, b: usize) -> Result<Option<BicliqueWitness>, OracleError> {
    has_biclique_capped(g, a, b, DEFAULT_BICLIQUE_CAP)
}

pub fn has_biclique_capped(g: &Graph, a: usize, b: usize, cap: usize) -> Result<Option<BicliqueWitness>, OracleError> {
    if a == 0 || b == 0 {
        return Err(OracleError::EmptySide { a, b });
    }
    // K_{a,b} and K_{b,a} are the same graph; enumerate the smaller side.
    let (small, large) = (a.min(b), a.max(b));
    if small > cap {
        return Err(OracleError::BicliqueTooLarge { requested: small, cap });
    }
    let mut subset = Vec::with_capacity(small);
    let all: Vec<Vertex> = g.vertices().collect();
    let found = extend_subset(g, small, large, &mut subset, &all, 0);
    Ok(found.map(|(s, common)| {
        let s = VertexSet::from_sorted(s);
        let common = VertexSet::from_sorted(common[..large].to_vec());
        if a <= b {
            BicliqueWitness { left: s, right: common }
        } else {
            BicliqueWitness { left: common, right: s }
        }
    }))
}

/// Depth-first over increasing subsets; `common` is the intersection of the
/// open neighbourhoods of `subset` (all vertices when the subset is empty).
fn extend_subset(
    g: &Graph,
    size: usize,
    need: usize,
    subset: &mut Vec<Vertex>,
    common: &[Vertex],
    start: Vertex,
) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if subset.len() == size {
        return Some((subset.clone(), common.to_vec()));
    }
    for v in start..g.n() {
        if g.degree(v) < need {
            continue;
        }
        let next: Vec<Vertex> =
            if subset.is_empty() { g.neighbors(v).to_vec() } else { intersect_sorted(common, g.neighbors(v)) };
        if next.len() < need {
            continue;
        }
        subset.push(v);
        let found = extend_subset(g, size, need, subset, &next, v + 1);
        subset.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `H_n = Σ_{i=1}^{n} 1/i`, with `H_0 = 0`. Accumulates in floating point;
/// the error stays below 1e-12 for every `n` this crate deals with.
pub fn harmonic(n: usize) -> f64 {
    // summing small terms first keeps the rounding error down
    (1..=n).rev().map(|i| 1.0 / i as f64).sum()
}
