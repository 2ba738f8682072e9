//! Simple undirected graphs, distances and the tree predicates used everywhere
//! else in the crate.

mod canon;
mod enumerate;
mod io;
pub mod prufer;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use canon::{canonical_code, canonical_form, rooted_code, CanonicalForm};
pub use enumerate::{enumerate_subcubic_trees, SubcubicTrees};
pub use io::{emit_graph6, parse_edge_list, parse_graph, parse_graph6, GraphFormat, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} has degree {degree} > 3")]
    NotSubcubic { vertex: usize, degree: usize },
    #[error("graph is not a tree")]
    NotATree,
}

/// Graph distance: a finite edge count or `Infinite` for unreachable pairs.
///
/// The derived ordering places every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u32),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(d) => Some(d),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(d) => write!(f, "{d}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

/// A set of vertex ids backed by a bitset; iteration is in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Panics if any id is outside `0..universe`.
    pub fn from_iter_in(universe: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for v in ids {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Parallel edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for vertex in [u, v] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Deletes the given vertices. Survivors keep their relative order; the
    /// returned map sends old ids to new ids (`None` for deleted vertices).
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.add_edge(a, b).expect("relabelled edge is valid");
            }
        }
        (g, map)
    }

    /// Subgraph induced by `keep` (in the given order): vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in self.neighbors(v) {
                if pos[w] != usize::MAX && i < pos[w] {
                    g.add_edge(i, pos[w]).expect("induced edge is valid");
                }
            }
        }
        g
    }

    /// Applies the permutation `perm` (old id -> new id).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permuted edge is valid");
        }
        g
    }

    /// Vertex lists of the connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    /// Connected, acyclic, maximum degree at most 3.
    pub fn is_subcubic_tree(&self) -> bool {
        self.is_tree() && self.max_degree() <= 3
    }
}

/// Breadth-first distances from `source` in `g`.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<ExtNat> {
    bfs_avoiding(g, source, |_| false)
}

/// BFS from `source` that never enters vertices for which `blocked` holds.
/// The source itself is always visited.
pub(crate) fn bfs_avoiding(g: &Graph, source: usize, blocked: impl Fn(usize) -> bool) -> Vec<ExtNat> {
    let mut dist = vec![ExtNat::Infinite; g.n()];
    dist[source] = ExtNat::Finite(0);
    let mut queue = VecDeque::from([(source, 0u32)]);
    while let Some((u, d)) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == ExtNat::Infinite && !blocked(w) {
                dist[w] = ExtNat::Finite(d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    dist
}

/// All-pairs distances, one BFS per vertex.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<ExtNat>> {
    (0..g.n()).map(|u| bfs_distances(g, u)).collect()
}

/// Largest pairwise distance; `Infinite` for disconnected graphs.
pub fn diameter(g: &Graph) -> ExtNat {
    (0..g.n())
        .flat_map(|u| bfs_distances(g, u))
        .max()
        .unwrap_or(ExtNat::Finite(0))
}

/// Vertices of degree at most 1, exactly 2 and exactly 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePartition {
    pub ends: VertexSet,
    pub twos: VertexSet,
    pub threes: VertexSet,
}

pub fn degree_partition(g: &Graph) -> Result<DegreePartition, GraphError> {
    let n = g.n();
    let mut p = DegreePartition {
        ends: VertexSet::new(n),
        twos: VertexSet::new(n),
        threes: VertexSet::new(n),
    };
    for v in 0..n {
        match g.degree(v) {
            0 | 1 => p.ends.insert(v),
            2 => p.twos.insert(v),
            3 => p.threes.insert(v),
            degree => return Err(GraphError::NotSubcubic { vertex: v, degree }),
        };
    }
    Ok(p)
}
