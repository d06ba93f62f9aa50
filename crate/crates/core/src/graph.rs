//! Immutable simple undirected graphs over dense vertex ids `0..n`.
//!
//! The on-disk format is a small edge-list dialect:
//!
//! ```text
//! c optional comment
//! p ds <n> <m>
//! e <u> <v>
//! ...
//! ```
//!
//! The header fixes `n`, so isolated vertices are representable. Exactly `m`
//! edge lines must follow. Duplicate edges (in either orientation) collapse
//! into one; self-loops are rejected.

use std::fmt;
use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("header declares {declared} edges but {found} edge lines were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing `p ds <n> <m>` header")]
    MissingHeader,
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A sorted, duplicate-free set of vertex ids.
///
/// Range is checked against a concrete graph at the point of use, see
/// [`Graph::check_set`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Builds a set from arbitrary ids, sorting and dropping duplicates.
    pub fn from_unsorted(mut ids: Vec<Vertex>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub(crate) fn from_sorted(ids: Vec<Vertex>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Parses whitespace-separated vertex ids. Lines starting with `c` are
    /// comments. Duplicates are rejected.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut ids = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let v = tok.parse::<Vertex>().map_err(|_| GraphError::Parse {
                    line: idx + 1,
                    msg: format!("expected a vertex id, found `{tok}`"),
                })?;
                ids.push(v);
            }
        }
        VertexSet::try_from(ids).map_err(GraphError::Invalid)
    }
}

impl TryFrom<Vec<Vertex>> for VertexSet {
    type Error = String;

    fn try_from(ids: Vec<Vertex>) -> Result<Self, Self::Error> {
        let before = ids.len();
        let set = VertexSet::from_unsorted(ids);
        if set.len() != before {
            return Err("duplicate vertex id in set".to_string());
        }
        Ok(set)
    }
}

impl From<VertexSet> for Vec<Vertex> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Empty graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Ok(Graph { adj, m: twice_m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Open neighbourhood, sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Iterates `N[v]`: `v` followed by its neighbours.
    pub fn closed_iter(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(v).chain(self.adj[v].iter().copied())
    }

    /// `N[v] = adj[v] ∪ {v}`, sorted.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        let list = &self.adj[v];
        let pos = list.partition_point(|&w| w < v);
        let mut out = Vec::with_capacity(list.len() + 1);
        out.extend_from_slice(&list[..pos]);
        out.push(v);
        out.extend_from_slice(&list[pos..]);
        Ok(VertexSet::from_sorted(out))
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        // sorted, so the last element is the maximum
        match s.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Targets not dominated by `d`.
    pub fn undominated(&self, d: &VertexSet, targets: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(d)?;
        self.check_set(targets)?;
        let mut dominated = vec![false; self.n()];
        for v in d.iter() {
            for u in self.closed_iter(v) {
                dominated[u] = true;
            }
        }
        Ok(VertexSet::from_sorted(targets.iter().filter(|&t| !dominated[t]).collect()))
    }

    /// True iff every target lies in `d` or has a neighbour in `d`.
    pub fn is_dominating(&self, d: &VertexSet, targets: &VertexSet) -> Result<bool, GraphError> {
        Ok(self.undominated(d, targets)?.is_empty())
    }

    /// Checks every structural invariant. Graphs built through the public
    /// constructors always pass.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut twice_m = 0;
        for (v, list) in self.adj.iter().enumerate() {
            twice_m += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Invalid(format!("adjacency of {v} not strictly increasing")));
            }
            for &u in list {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(GraphError::SelfLoop { vertex: v });
                }
                if self.adj[u].binary_search(&v).is_err() {
                    return Err(GraphError::Invalid(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        if twice_m != 2 * self.m {
            return Err(GraphError::Invalid(format!("edge count {} disagrees with adjacency total {twice_m}", self.m)));
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            let nums = |toks: std::str::SplitWhitespace<'_>| -> Result<Vec<usize>, GraphError> {
                toks.map(|t| t.parse::<usize>().map_err(|_| err(format!("invalid integer `{t}`")))).collect()
            };
            match (tag, header) {
                ("p", None) => {
                    if toks.next() != Some("ds") {
                        return Err(err("expected `p ds <n> <m>`".into()));
                    }
                    match nums(toks)?.as_slice() {
                        &[n, m] => header = Some((n, m)),
                        _ => return Err(err("expected `p ds <n> <m>`".into())),
                    }
                }
                ("p", Some(_)) => return Err(err("duplicate header".into())),
                ("e", None) => return Err(err("edge line before header".into())),
                ("e", Some((n, _))) => match nums(toks)?.as_slice() {
                    &[u, v] => {
                        for w in [u, v] {
                            if w >= n {
                                return Err(GraphError::VertexOutOfRange { vertex: w, n });
                            }
                        }
                        if u == v {
                            return Err(GraphError::SelfLoop { vertex: u });
                        }
                        edges.push((u, v));
                    }
                    _ => return Err(err("expected `e <u> <v>`".into())),
                },
                _ => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let (n, m) = header.ok_or(GraphError::MissingHeader)?;
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch { declared: m, found: edges.len() });
        }
        let g = Graph::from_edges(n, edges)?;
        g.validate()?;
        Ok(g)
    }

    pub fn read_from<R: Read>(mut reader: R) -> Result<Self, GraphError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Graph::parse(&text)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "p ds {} {}", self.n(), self.m)?;
        for (u, v) in self.edges() {
            writeln!(w, "e {u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}
