use crate::graph::{Graph, Vertex, VertexSet};

use super::Round;

/// Residual target set `A` together with `|N[v] ∩ A|` for every vertex.
#[derive(Clone, Debug)]
pub(crate) struct Coverage {
    in_target: Vec<bool>,
    gain: Vec<usize>,
    remaining: usize,
}

impl Coverage {
    pub(crate) fn new(g: &Graph, targets: &VertexSet) -> Self {
        let mut in_target = vec![false; g.n()];
        let mut gain = vec![0; g.n()];
        for t in targets.iter() {
            in_target[t] = true;
            for w in g.closed_iter(t) {
                gain[w] += 1;
            }
        }
        Coverage { in_target, gain, remaining: targets.len() }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    pub(crate) fn contains(&self, v: Vertex) -> bool {
        self.in_target[v]
    }

    /// Removes `N[v]` from the residual targets, returning how many left.
    pub(crate) fn dominate(&mut self, g: &Graph, v: Vertex) -> usize {
        let mut removed = 0;
        for u in g.closed_iter(v) {
            if self.in_target[u] {
                self.in_target[u] = false;
                self.remaining -= 1;
                removed += 1;
                for w in g.closed_iter(u) {
                    self.gain[w] -= 1;
                }
            }
        }
        removed
    }

    /// Vertex maximising `|N[v] ∩ A|`, lowest id on ties. `None` once `A` is empty.
    pub(crate) fn best(&self) -> Option<Vertex> {
        if self.is_empty() {
            return None;
        }
        let mut best = 0;
        for (v, &gain) in self.gain.iter().enumerate() {
            if gain > self.gain[best] {
                best = v;
            }
        }
        Some(best)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Continuation {
    /// Stop at `i - 1` vertices or when no vertex touches the current B-set.
    Fixed { i: usize },
    /// Continue only while the next B-set has at least `s + 1` elements.
    Auto,
}

#[derive(Debug)]
pub(crate) struct RoundOutcome {
    pub round: Round,
    /// The last B-set of the chain, `B_ℓ`.
    pub last_b: Vec<Vertex>,
}

/// One round of the modified greedy rule. `coverage` must be non-empty.
pub(crate) fn modified_round(
    g: &Graph,
    coverage: &mut Coverage,
    rule: Continuation,
    scratch: &mut Vec<usize>,
) -> RoundOutcome {
    let v1 = coverage.best().expect("round started with no targets left");
    let mut chosen = vec![v1];
    let mut b: Vec<Vertex> = g.closed_iter(v1).filter(|&u| u != v1 && coverage.contains(u)).collect();
    b.sort_unstable();
    let mut b_sizes = vec![b.len()];

    scratch.clear();
    scratch.resize(g.n(), 0);
    loop {
        let s = chosen.len();
        if let Continuation::Fixed { i } = rule {
            if s >= i - 1 {
                break;
            }
        }
        if b.is_empty() {
            break;
        }
        // |N[w] ∩ B_s| for every w, accumulated from the B side.
        for &u in &b {
            for w in g.closed_iter(u) {
                scratch[w] += 1;
            }
        }
        let mut next: Option<(Vertex, usize)> = None;
        for (w, &count) in scratch.iter().enumerate() {
            if count > 0 && !chosen.contains(&w) && next.is_none_or(|(_, c)| count > c) {
                next = Some((w, count));
            }
        }
        for &u in &b {
            for w in g.closed_iter(u) {
                scratch[w] = 0;
            }
        }
        let Some((v, _)) = next else { break };
        let next_b: Vec<Vertex> = b.iter().copied().filter(|&u| g.has_edge(v, u)).collect();
        if rule == Continuation::Auto && next_b.len() < s + 1 {
            break;
        }
        chosen.push(v);
        b_sizes.push(next_b.len());
        b = next_b;
    }

    let newly_dominated = chosen.iter().map(|&v| coverage.dominate(g, v)).sum();
    RoundOutcome { round: Round { chosen, b_sizes, newly_dominated }, last_b: b }
}

/// Classical greedy until `coverage` is empty, one vertex per round.
pub(crate) fn classical_rounds(g: &Graph, coverage: &mut Coverage) -> Vec<Round> {
    let mut rounds = Vec::new();
    while let Some(v) = coverage.best() {
        let b1 = g.closed_iter(v).filter(|&u| u != v && coverage.contains(u)).count();
        let newly_dominated = coverage.dominate(g, v);
        rounds.push(Round { chosen: vec![v], b_sizes: vec![b1], newly_dominated });
    }
    rounds
}
