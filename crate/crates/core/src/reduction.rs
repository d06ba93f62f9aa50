//! Set cover with pairwise intersections of size at most one, reduced to
//! dominating set on a `K_{3,3}`-free graph.
//!
//! Vertex layout of the reduced graph: element vertices in universe order,
//! then one vertex per set in family order, then `x`, then `y`. Element `u`
//! is adjacent to set `F` iff `u ∈ F`; `x` is adjacent to every set vertex and
//! to `y`. A cover `𝒢` maps to the dominating set `𝒢 ∪ {x}`, and a dominating
//! set maps back to a cover of size at most `|D| - 1`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub type Element = u32;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("set {set} contains element {element}, which is not in the universe")]
    ElementNotInUniverse { set: usize, element: Element },
    #[error("universe element {0} is covered by no set")]
    UncoveredElement(Element),
    #[error("universe lists element {0} twice")]
    DuplicateUniverseElement(Element),
    #[error("set {set} lists element {element} twice")]
    DuplicateInSet { set: usize, element: Element },
    #[error("sets {first} and {second} are identical")]
    DuplicateSet { first: usize, second: usize },
    #[error("sets {first} and {second} share {shared} elements")]
    IntersectionViolation { first: usize, second: usize, shared: usize },
    #[error("set index {0} out of range")]
    SetIndexOutOfRange(usize),
    #[error("the given sets do not cover element {0}")]
    InvalidCover(Element),
    #[error("the given vertex set does not dominate the reduced graph")]
    NotDominating,
    #[error("vertex {0} out of range for the reduced graph")]
    VertexOutOfRange(Vertex),
    #[error("malformed set-cover document: {0}")]
    Format(#[from] serde_json::Error),
}

/// A set family together with its universe. Each set is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    universe: Vec<Element>,
    sets: Vec<Vec<Element>>,
}

#[derive(Deserialize)]
struct RawInstance {
    universe: Vec<Element>,
    sets: Vec<Vec<Element>>,
}

impl SetCoverInstance {
    /// Checks the structural invariants: every set element is in the
    /// universe, the universe is exactly the union of the sets, no set is
    /// listed twice. Intersection size is checked separately.
    pub fn new(universe: Vec<Element>, sets: Vec<Vec<Element>>) -> Result<Self, ReductionError> {
        let mut seen = BTreeSet::new();
        for &e in &universe {
            if !seen.insert(e) {
                return Err(ReductionError::DuplicateUniverseElement(e));
            }
        }
        let mut covered = BTreeSet::new();
        let mut normalized = Vec::with_capacity(sets.len());
        let mut first_seen: HashMap<Vec<Element>, usize> = HashMap::new();
        for (idx, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
                return Err(ReductionError::DuplicateInSet { set: idx, element: w[0] });
            }
            if let Some(&e) = set.iter().find(|e| !seen.contains(e)) {
                return Err(ReductionError::ElementNotInUniverse { set: idx, element: e });
            }
            if let Some(&first) = first_seen.get(&set) {
                return Err(ReductionError::DuplicateSet { first, second: idx });
            }
            first_seen.insert(set.clone(), idx);
            covered.extend(set.iter().copied());
            normalized.push(set);
        }
        if let Some(&e) = universe.iter().find(|e| !covered.contains(e)) {
            return Err(ReductionError::UncoveredElement(e));
        }
        Ok(SetCoverInstance { universe, sets: normalized })
    }

    /// Parses the JSON document `{"universe": [...], "sets": [[...], ...]}`
    /// and enforces every invariant, including intersection one.
    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let raw: RawInstance = serde_json::from_str(text)?;
        let sc = SetCoverInstance::new(raw.universe, raw.sets)?;
        sc.check_intersection_one()?;
        Ok(sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn universe(&self) -> &[Element] {
        &self.universe
    }

    pub fn sets(&self) -> &[Vec<Element>] {
        &self.sets
    }

    /// The first pair of sets (in index order) sharing two or more elements.
    pub fn first_intersection_violation(&self) -> Option<(usize, usize, usize)> {
        for p in 0..self.sets.len() {
            for q in p + 1..self.sets.len() {
                let shared = sorted_overlap(&self.sets[p], &self.sets[q]);
                if shared > 1 {
                    return Some((p, q, shared));
                }
            }
        }
        None
    }

    fn check_intersection_one(&self) -> Result<(), ReductionError> {
        match self.first_intersection_violation() {
            Some((first, second, shared)) => Err(ReductionError::IntersectionViolation { first, second, shared }),
            None => Ok(()),
        }
    }

    /// Whether `indices` (set positions) cover the universe; returns the
    /// first uncovered element otherwise.
    pub fn check_cover(&self, indices: &[usize]) -> Result<(), ReductionError> {
        let mut covered = BTreeSet::new();
        for &idx in indices {
            let set = self.sets.get(idx).ok_or(ReductionError::SetIndexOutOfRange(idx))?;
            covered.extend(set.iter().copied());
        }
        match self.universe.iter().find(|e| !covered.contains(e)) {
            Some(&e) => Err(ReductionError::InvalidCover(e)),
            None => Ok(()),
        }
    }
}

pub fn validate_intersection_one(sc: &SetCoverInstance) -> bool {
    sc.first_intersection_violation().is_none()
}

fn sorted_overlap(a: &[Element], b: &[Element]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Role of a vertex in a reduced graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum VertexRole {
    Element { element: Element },
    Set { index: usize },
    X,
    Y,
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub instance: SetCoverInstance,
    element_index: HashMap<Element, usize>,
}

impl ReducedInstance {
    pub fn element_count(&self) -> usize {
        self.instance.universe.len()
    }

    pub fn set_count(&self) -> usize {
        self.instance.sets.len()
    }

    pub fn x_vertex(&self) -> Vertex {
        self.element_count() + self.set_count()
    }

    pub fn y_vertex(&self) -> Vertex {
        self.x_vertex() + 1
    }

    pub fn set_vertex(&self, index: usize) -> Vertex {
        self.element_count() + index
    }

    pub fn element_vertex(&self, e: Element) -> Option<Vertex> {
        self.element_index.get(&e).copied()
    }

    pub fn element_of(&self, v: Vertex) -> Option<Element> {
        self.instance.universe.get(v).copied()
    }

    pub fn set_of(&self, v: Vertex) -> Option<usize> {
        (self.element_count()..self.x_vertex()).contains(&v).then(|| v - self.element_count())
    }

    pub fn role(&self, v: Vertex) -> Option<VertexRole> {
        if let Some(element) = self.element_of(v) {
            Some(VertexRole::Element { element })
        } else if let Some(index) = self.set_of(v) {
            Some(VertexRole::Set { index })
        } else if v == self.x_vertex() {
            Some(VertexRole::X)
        } else if v == self.y_vertex() {
            Some(VertexRole::Y)
        } else {
            None
        }
    }

    /// `[{"id": v, "role": ..., ...}]` for every vertex, in id order.
    pub fn vertex_map(&self) -> VertexMap {
        VertexMap {
            vertices: self
                .graph
                .vertices()
                .map(|id| MappedVertex { id, role: self.role(id).expect("vertex in range") })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub vertices: Vec<MappedVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappedVertex {
    pub id: Vertex,
    #[serde(flatten)]
    pub role: VertexRole,
}

pub fn reduce_set_cover(sc: &SetCoverInstance) -> Result<ReducedInstance, ReductionError> {
    sc.check_intersection_one()?;
    let a = sc.universe.len();
    let f = sc.sets.len();
    let element_index: HashMap<Element, usize> = sc.universe.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let x = a + f;
    let y = x + 1;
    let mut edges = Vec::new();
    for (idx, set) in sc.sets.iter().enumerate() {
        for e in set {
            edges.push((element_index[e], a + idx));
        }
        edges.push((x, a + idx));
    }
    edges.push((x, y));
    let graph = Graph::from_edges(a + f + 2, edges).expect("reduction edges are in range and loop-free");
    Ok(ReducedInstance { graph, instance: sc.clone(), element_index })
}

/// Turns a dominating set of the reduced graph into a set cover: element
/// vertices are replaced by their lowest-index covering set, `y` by `x`, and
/// `x` is dropped. The result is sorted.
pub fn map_solution_back(ri: &ReducedInstance, d: &VertexSet) -> Result<Vec<usize>, ReductionError> {
    if let Some(&v) = d.as_slice().last().filter(|&&v| v >= ri.graph.n()) {
        return Err(ReductionError::VertexOutOfRange(v));
    }
    let all = VertexSet::full(ri.graph.n());
    if !ri.graph.is_dominating(d, &all).expect("range checked above") {
        return Err(ReductionError::NotDominating);
    }
    let mut cover = BTreeSet::new();
    for v in d.iter() {
        match ri.role(v).expect("range checked above") {
            VertexRole::Element { .. } => {
                // element vertices are adjacent only to set vertices, lowest first
                let lowest = ri.graph.neighbors(v)[0];
                cover.insert(ri.set_of(lowest).expect("element neighbours are sets"));
            }
            VertexRole::Set { index } => {
                cover.insert(index);
            }
            VertexRole::X | VertexRole::Y => {}
        }
    }
    let cover: Vec<usize> = cover.into_iter().collect();
    debug_assert!(ri.instance.check_cover(&cover).is_ok());
    Ok(cover)
}

/// The set vertices of `cover` plus `x`.
pub fn forward_solution(ri: &ReducedInstance, cover: &[usize]) -> Result<VertexSet, ReductionError> {
    ri.instance.check_cover(cover)?;
    Ok(cover.iter().map(|&idx| ri.set_vertex(idx)).chain(std::iter::once(ri.x_vertex())).collect())
}
