//! The two hand-built trees used as exact reference points.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;

/// Porous exponential dominating set of [`fixture_f2`] of order 4: the apex
/// and the three gadget roots.
pub const F2_POROUS_WITNESS: [usize; 4] = [0, 1, 8, 15];

/// Exponential dominating set of [`fixture_f2`] of order 6: the six middles.
pub const F2_EXPONENTIAL_WITNESS: [usize; 6] = [2, 3, 9, 10, 16, 17];

/// A path `0..k` of spine vertices, each topped up to degree 3 with pendant
/// paths of length 2. Legs are numbered `(middle, leaf)` in spine order.
/// Order `3k + 4`.
pub fn fixture_f1(k: usize) -> Graph {
    assert!(k >= 1, "f1 needs k >= 1");
    let mut g = Graph::path(k);
    for c in 0..k {
        let legs = 3 - g.degree(c);
        for _ in 0..legs {
            let mid = g.add_vertex();
            let leaf = g.add_vertex();
            g.add_edge(c, mid).unwrap();
            g.add_edge(mid, leaf).unwrap();
        }
    }
    g
}

/// The middles of every leg of [`fixture_f1`], which form a minimum
/// exponential dominating set.
pub fn fixture_f1_middles(k: usize) -> Vec<usize> {
    let g = fixture_f1(k);
    (k..g.n()).filter(|&v| g.degree(v) == 2).collect()
}

/// An apex joined to the roots of three full binary trees of depth 2.
///
/// Gadget `i` has root `1 + 7i`, middles `root + 1`, `root + 2`, and leaves
/// `root + 3, root + 4` under the first middle, `root + 5, root + 6` under the second.
pub fn fixture_f2() -> Graph {
    let mut edges = Vec::with_capacity(21);
    for i in 0..3 {
        let r = 1 + 7 * i;
        edges.extend([(0, r), (r, r + 1), (r, r + 2)]);
        edges.extend([(r + 1, r + 3), (r + 1, r + 4), (r + 2, r + 5), (r + 2, r + 6)]);
    }
    Graph::from_edges(22, edges).unwrap()
}

/// Complete binary tree of the given depth rooted at 0, heap numbered.
pub fn full_binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v))).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureId {
    F1(usize),
    F2,
}

impl FixtureId {
    pub fn graph(self) -> Graph {
        match self {
            FixtureId::F1(k) => fixture_f1(k),
            FixtureId::F2 => fixture_f2(),
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::F1(k) => write!(f, "f1:{k}"),
            FixtureId::F2 => f.write_str("f2"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        if s == "f2" {
            return Ok(FixtureId::F2);
        }
        let k = s
            .strip_prefix("f1:")
            .or_else(|| s.strip_prefix("f1="))
            .ok_or_else(|| format!("unknown fixture `{s}` (expected f1:K or f2)"))?;
        match k.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(FixtureId::F1(k)),
            _ => Err(format!("f1 needs an integer k >= 1, got `{k}`")),
        }
    }
}
