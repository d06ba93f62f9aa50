//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the solver or oracle code paths it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use domgreedy::reduction::SetCoverInstance;
use domgreedy::{
    gen_d_degenerate, gen_gnp, gen_grid, gen_random_tree, AlgoSpec, Algorithm, Graph, SolveResult, VertexSet,
};

/// Closed neighbourhoods as bitmasks; graphs here have at most 64 vertices.
pub fn closed_masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64);
    g.vertices().map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &u| m | (1u64 << u))).collect()
}

pub fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | (1u64 << v))
}

pub fn set_of_mask(mask: u64) -> VertexSet {
    VertexSet::from_unsorted((0..64).filter(|&v| mask >> v & 1 == 1).collect())
}

/// Size of a smallest dominating set of `targets`, by trying every subset
/// of `V` in order of increasing size.
pub fn brute_min_dominating(g: &Graph, targets: &VertexSet) -> usize {
    brute_all_min_dominating(g, targets).0
}

/// `(γ, every dominating set of size γ)`, sets ordered lexicographically.
pub fn brute_all_min_dominating(g: &Graph, targets: &VertexSet) -> (usize, Vec<VertexSet>) {
    let n = g.n();
    assert!(n <= 22, "brute force is exponential");
    let masks = closed_masks(g);
    let want = mask_of(targets);
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for subset in 0u64..(1u64 << n) {
        let covered = (0..n).filter(|&v| subset >> v & 1 == 1).fold(0u64, |m, v| m | masks[v]);
        if covered & want == want {
            by_size[subset.count_ones() as usize].push(subset);
        }
    }
    let k = by_size.iter().position(|s| !s.is_empty()).expect("V dominates everything");
    let mut sets: Vec<VertexSet> = by_size[k].iter().map(|&m| set_of_mask(m)).collect();
    sets.sort();
    (k, sets)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Whether `K_{a,b}` occurs as a subgraph, checking every disjoint pair of
/// an `a`-subset and a `b`-subset.
pub fn brute_has_biclique(g: &Graph, a: usize, b: usize) -> bool {
    let n = g.n();
    let lefts = combinations(n, a);
    let rights = combinations(n, b);
    lefts.iter().any(|l| {
        rights
            .iter()
            .any(|r| l.iter().all(|u| !r.contains(u)) && l.iter().all(|&u| r.iter().all(|&v| g.has_edge(u, v))))
    })
}

/// Minimum set cover by enumerating every subfamily.
pub fn brute_min_set_cover(sc: &SetCoverInstance) -> usize {
    let f = sc.sets().len();
    assert!(f <= 20);
    let universe: BTreeSet<u32> = sc.universe().iter().copied().collect();
    (0u32..(1 << f))
        .filter(|&mask| {
            let covered: BTreeSet<u32> =
                (0..f).filter(|&i| mask >> i & 1 == 1).flat_map(|i| sc.sets()[i].iter().copied()).collect();
            covered == universe
        })
        .map(u32::count_ones)
        .min()
        .expect("the full family covers the universe") as usize
}

/// Degeneracy by repeatedly deleting a vertex of minimum remaining degree.
pub fn peel_degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| deg[v]).unwrap();
        best = best.max(deg[v]);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

fn closed(g: &Graph, v: usize) -> BTreeSet<usize> {
    g.closed_neighborhood(v).unwrap().iter().collect()
}

/// Replays a solver trace from scratch with plain sets and checks every
/// recorded quantity and every selection rule.
pub fn check_trace(g: &Graph, res: &SolveResult, targets: &VertexSet) -> Result<(), String> {
    let mut residual: BTreeSet<usize> = targets.iter().collect();
    if res.trace.initial_targets != *targets {
        return Err("initial targets differ".into());
    }
    let hybrid_split = res.hybrid_prefix.unwrap_or(usize::MAX);
    let mut union = BTreeSet::new();
    for (idx, round) in res.trace.rounds.iter().enumerate() {
        // rounds after the hybrid prefix are classical extension rounds
        let mode = match res.algorithm {
            Algorithm::Hybrid if idx >= hybrid_split => Algorithm::Classical,
            Algorithm::Hybrid if res.i.is_some() => Algorithm::Fixed,
            Algorithm::Hybrid => Algorithm::Auto,
            other => other,
        };
        let ell = round.chosen.len();
        if ell == 0 || round.b_sizes.len() != ell {
            return Err(format!("round {idx}: malformed"));
        }
        let distinct: BTreeSet<_> = round.chosen.iter().collect();
        if distinct.len() != ell {
            return Err(format!("round {idx}: duplicate picks"));
        }
        let cover = |v: usize, set: &BTreeSet<usize>| closed(g, v).intersection(set).count();

        let v1 = round.chosen[0];
        let best1 = g.vertices().map(|u| cover(u, &residual)).max().unwrap();
        if cover(v1, &residual) != best1 || g.vertices().take(v1).any(|u| cover(u, &residual) == best1) {
            return Err(format!("round {idx}: v_1 = {v1} is not the lowest maximiser"));
        }
        let mut b: BTreeSet<usize> = closed(g, v1).intersection(&residual).copied().collect();
        b.remove(&v1);
        if b.len() != round.b_sizes[0] {
            return Err(format!("round {idx}: |B_1| mismatch"));
        }
        match mode {
            Algorithm::Classical if ell != 1 => return Err(format!("round {idx}: classical round with {ell} picks")),
            Algorithm::Fixed if ell > res.i.unwrap() - 1 => return Err(format!("round {idx}: cap exceeded")),
            _ => {}
        }
        for s in 1..=ell {
            let picked = &round.chosen[..s];
            let candidates: Vec<(usize, usize)> = g
                .vertices()
                .filter(|u| !picked.contains(u))
                .map(|u| (u, cover(u, &b)))
                .filter(|&(_, c)| c > 0)
                .collect();
            let best = candidates.iter().map(|&(_, c)| c).max();
            let lowest_best = candidates.iter().find(|&&(_, c)| Some(c) == best).map(|&(u, _)| u);
            if s == ell {
                // the round must have stopped for the documented reason
                let stopped = match mode {
                    Algorithm::Classical => true,
                    Algorithm::Fixed => ell == res.i.unwrap() - 1 || lowest_best.is_none(),
                    Algorithm::Auto => match lowest_best {
                        None => true,
                        Some(u) => g.neighbors(u).iter().filter(|w| b.contains(w)).count() < s + 1,
                    },
                    Algorithm::Hybrid => unreachable!(),
                };
                if !stopped {
                    return Err(format!("round {idx}: stopped early at ℓ = {ell}"));
                }
                break;
            }
            let v = round.chosen[s];
            if Some(v) != lowest_best {
                return Err(format!("round {idx}: v_{} = {v} is not the lowest maximiser", s + 1));
            }
            let mut next: BTreeSet<usize> = closed(g, v).intersection(&b).copied().collect();
            next.remove(&v);
            if !next.is_subset(&b) || next.len() != round.b_sizes[s] || round.b_sizes[s] > round.b_sizes[s - 1] {
                return Err(format!("round {idx}: B_{} mismatch", s + 1));
            }
            if mode == Algorithm::Auto && next.len() < s + 1 {
                return Err(format!("round {idx}: auto continued with |B_{}| < {}", s + 1, s + 1));
            }
            b = next;
        }
        let before = residual.len();
        for &v in &round.chosen {
            for u in closed(g, v) {
                residual.remove(&u);
            }
            union.insert(v);
        }
        if before - residual.len() != round.newly_dominated || round.newly_dominated == 0 {
            return Err(format!("round {idx}: newly_dominated mismatch"));
        }
    }
    if !residual.is_empty() {
        return Err("targets left after the final round".into());
    }
    let union = VertexSet::from_unsorted(union.into_iter().collect());
    if union != res.trace.final_set || union != res.dominating_set {
        return Err("final set is not the union of the picks".into());
    }
    Ok(())
}

/// The algorithms every validity check runs.
pub fn all_algorithms() -> Vec<AlgoSpec> {
    vec![
        AlgoSpec::Classical,
        AlgoSpec::Fixed(2),
        AlgoSpec::Fixed(3),
        AlgoSpec::Fixed(4),
        AlgoSpec::Auto,
        AlgoSpec::Hybrid(Some(2)),
        AlgoSpec::Hybrid(Some(3)),
        AlgoSpec::Hybrid(Some(4)),
        AlgoSpec::Hybrid(None),
    ]
}

/// The 1,000-instance validity suite: 400 `G(n, p)` graphs with `n ≤ 64`
/// and `p ∈ {0.05, 0.2, 0.5}`, all 64 grids up to 8×8, 268 attachment trees
/// with `n ≤ 64`, and 268 graphs of degeneracy at most 3.
pub fn validity_suite() -> Vec<(String, Graph)> {
    let mut out = Vec::with_capacity(1000);
    let ps = [0.05, 0.2, 0.5];
    for s in 0..400u64 {
        let n = 1 + (s as usize * 7) % 64;
        let p = ps[s as usize % 3];
        out.push((format!("gnp:{n}:{p}:{s}"), gen_gnp(n, p, 1000 + s).unwrap()));
    }
    for w in 1..=8 {
        for h in 1..=8 {
            out.push((format!("grid:{w}:{h}"), gen_grid(w, h)));
        }
    }
    for s in 0..268u64 {
        let n = 1 + (s as usize * 5) % 64;
        out.push((format!("random_tree:{n}:{s}"), gen_random_tree(n, 2000 + s)));
    }
    for s in 0..268u64 {
        let n = 1 + (s as usize * 3) % 64;
        let d = s as usize % 4;
        out.push((format!("d_degenerate:{n}:{d}:{s}"), gen_d_degenerate(n, d, 3000 + s).graph));
    }
    out
}
