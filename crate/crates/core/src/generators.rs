//! Seeded instance generators.
//!
//! Every generator draws from [`SplitMix64`] in a fixed order, so output is
//! identical across platforms and across implementations that follow the
//! same draw order:
//!
//! * real draws take the top 53 bits of the next word, divided by 2^53;
//! * bounded integer draws in `[0, k)` take the high 64 bits of the
//!   128-bit product `next_u64() * k`;
//! * sampling without replacement is a partial Fisher–Yates shuffle of the
//!   candidate list, one bounded draw per position.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::reduction::{reduce_set_cover, Element, SetCoverInstance};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no set was accepted within {0} proposals")]
    ProposalCapExhausted(usize),
}

/// The splitmix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// `k` distinct items of `pool`, in draw order. Reorders `pool`.
    pub fn sample<T: Copy>(&mut self, pool: &mut [T], k: usize) -> Vec<T> {
        let k = k.min(pool.len());
        for j in 0..k {
            let r = j + self.below((pool.len() - j) as u64) as usize;
            pool.swap(j, r);
        }
        pool[..k].to_vec()
    }
}

/// Erdős–Rényi `G(n, p)`: pairs `{u, v}` with `u < v` are visited in
/// lexicographic order and each draws one real.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("generated edges are valid"))
}

/// `w × h` grid; cell `(r, c)` is vertex `r * w + c`.
pub fn gen_grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                edges.push((v, v + 1));
            }
            if r + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::from_edges(w * h, edges).expect("generated edges are valid")
}

/// Random attachment tree: vertex `v ≥ 1` attaches to a uniform vertex of `[0, v)`.
pub fn gen_random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.below(v as u64) as usize, v)).collect();
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

#[derive(Clone, Debug)]
pub struct DegenerateGraph {
    pub graph: Graph,
    /// Removing vertices in this order, each has at most `d` neighbours left.
    pub elimination_order: Vec<Vertex>,
}

/// Vertex `v` picks `min(d, v)` distinct earlier vertices as neighbours.
pub fn gen_d_degenerate(n: usize, d: usize, seed: u64) -> DegenerateGraph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    let mut pool: Vec<Vertex> = Vec::with_capacity(n);
    for v in 0..n {
        for u in rng.sample(&mut pool, d) {
            edges.push((u, v));
        }
        pool.push(v);
    }
    let graph = Graph::from_edges(n, edges).expect("generated edges are valid");
    DegenerateGraph { graph, elimination_order: (0..n).rev().collect() }
}

/// Rejection-sampled intersection-one family over the universe
/// `0..universe_size`.
///
/// Each proposal draws a size uniformly from `[1, max_set_size]` (clamped to
/// the universe) and then that many distinct elements. A proposal is accepted
/// when it differs from every accepted set and shares at most one element
/// with each. After `set_count` acceptances, or `proposal_cap(set_count)`
/// proposals, every uncovered element is added as a singleton in ascending
/// order.
pub fn gen_intersection_one(
    universe_size: usize,
    set_count: usize,
    max_set_size: usize,
    seed: u64,
) -> Result<SetCoverInstance, GenError> {
    if universe_size == 0 || set_count == 0 || max_set_size == 0 {
        return Err(GenError::InvalidParameter(
            "universe size, set count and maximum set size must be at least 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let max_size = max_set_size.min(universe_size);
    let cap = proposal_cap(set_count);
    let mut accepted: Vec<Vec<Element>> = Vec::new();
    let mut proposals = 0;
    while accepted.len() < set_count && proposals < cap {
        proposals += 1;
        let size = 1 + rng.below(max_size as u64) as usize;
        let mut pool: Vec<Element> = (0..universe_size as Element).collect();
        let mut set = rng.sample(&mut pool, size);
        set.sort_unstable();
        let compatible = accepted.iter().all(|other| other != &set && overlap(other, &set) <= 1);
        if compatible {
            accepted.push(set);
        }
    }
    if accepted.is_empty() {
        return Err(GenError::ProposalCapExhausted(cap));
    }
    let mut covered = vec![false; universe_size];
    for e in accepted.iter().flatten() {
        covered[*e as usize] = true;
    }
    for (e, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        accepted.push(vec![e as Element]);
    }
    let universe = (0..universe_size as Element).collect();
    Ok(SetCoverInstance::new(universe, accepted).expect("generated family is well formed"))
}

pub fn proposal_cap(set_count: usize) -> usize {
    100 * set_count + 100
}

fn overlap(a: &[Element], b: &[Element]) -> usize {
    a.iter().filter(|e| b.binary_search(e).is_ok()).count()
}

/// A generator invocation in textual form, e.g. `gnp:20:0.2:7`.
///
/// | model                  | fields                                   |
/// |------------------------|------------------------------------------|
/// | `gnp`                  | `n:p:seed`                               |
/// | `grid`                 | `w:h`                                    |
/// | `random_tree`          | `n:seed`                                 |
/// | `d_degenerate`         | `n:d:seed`                               |
/// | `intersection_one_sc`  | `universe:sets:max_set_size:seed`        |
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Gnp { n: usize, p: f64, seed: u64 },
    Grid { w: usize, h: usize },
    RandomTree { n: usize, seed: u64 },
    DDegenerate { n: usize, d: usize, seed: u64 },
    IntersectionOne { universe: usize, sets: usize, max_set_size: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub enum Generated {
    Graph(Graph),
    SetCover(SetCoverInstance),
}

impl GenSpec {
    pub fn generate(&self) -> Result<Generated, GenError> {
        Ok(match *self {
            GenSpec::Gnp { n, p, seed } => Generated::Graph(gen_gnp(n, p, seed)?),
            GenSpec::Grid { w, h } => Generated::Graph(gen_grid(w, h)),
            GenSpec::RandomTree { n, seed } => Generated::Graph(gen_random_tree(n, seed)),
            GenSpec::DDegenerate { n, d, seed } => Generated::Graph(gen_d_degenerate(n, d, seed).graph),
            GenSpec::IntersectionOne { universe, sets, max_set_size, seed } => {
                Generated::SetCover(gen_intersection_one(universe, sets, max_set_size, seed)?)
            }
        })
    }

    /// The generated graph; set-cover models yield their reduced graph.
    pub fn graph(&self) -> Result<Graph, GenError> {
        Ok(match self.generate()? {
            Generated::Graph(g) => g,
            Generated::SetCover(sc) => reduce_set_cover(&sc).expect("generated families have intersection one").graph,
        })
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Gnp { n, p, seed } => write!(f, "gnp:{n}:{p}:{seed}"),
            GenSpec::Grid { w, h } => write!(f, "grid:{w}:{h}"),
            GenSpec::RandomTree { n, seed } => write!(f, "random_tree:{n}:{seed}"),
            GenSpec::DDegenerate { n, d, seed } => write!(f, "d_degenerate:{n}:{d}:{seed}"),
            GenSpec::IntersectionOne { universe, sets, max_set_size, seed } => {
                write!(f, "intersection_one_sc:{universe}:{sets}:{max_set_size}:{seed}")
            }
        }
    }
}

impl FromStr for GenSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| GenError::InvalidParameter(format!("`{s}`: {msg}"));
        let mut parts = s.trim().split(':');
        let model = parts.next().unwrap_or_default();
        let fields: Vec<&str> = parts.collect();
        let int = |k: usize| -> Result<usize, GenError> {
            fields[k].parse().map_err(|_| bad(&format!("field {} is not an integer", k + 1)))
        };
        let seed = |k: usize| -> Result<u64, GenError> {
            fields[k].parse().map_err(|_| bad("seed is not an unsigned 64-bit integer"))
        };
        let arity = |want: usize| {
            if fields.len() == want {
                Ok(())
            } else {
                Err(bad(&format!("expected {want} fields after the model name")))
            }
        };
        let spec = match model {
            "gnp" => {
                arity(3)?;
                let p: f64 = fields[1].parse().map_err(|_| bad("p is not a number"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(GenError::InvalidProbability(p));
                }
                GenSpec::Gnp { n: int(0)?, p, seed: seed(2)? }
            }
            "grid" => {
                arity(2)?;
                GenSpec::Grid { w: int(0)?, h: int(1)? }
            }
            "random_tree" => {
                arity(2)?;
                GenSpec::RandomTree { n: int(0)?, seed: seed(1)? }
            }
            "d_degenerate" => {
                arity(3)?;
                GenSpec::DDegenerate { n: int(0)?, d: int(1)?, seed: seed(2)? }
            }
            "intersection_one_sc" => {
                arity(4)?;
                GenSpec::IntersectionOne { universe: int(0)?, sets: int(1)?, max_set_size: int(2)?, seed: seed(3)? }
            }
            _ => return Err(bad("unknown model")),
        };
        Ok(spec)
    }
}
