//! Exponential weights of a vertex set and the two domination predicates.
//!
//! The blocked weight counts a dominator `v` at `u` only along paths whose
//! interior avoids the set; the porous weight uses plain graph distance.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{coeff, Dyadic};
use crate::graph::{bfs_avoiding, bfs_distances, ExtNat, Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("vertex {0} is not in the dominating set")]
    NotInSet(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub set: VertexSet,
    pub blocked: Vec<Dyadic>,
    pub porous: Vec<Dyadic>,
}

impl WeightProfile {
    pub fn is_exponential_dominating(&self) -> bool {
        let one = Dyadic::one();
        self.blocked.iter().all(|w| *w >= one)
    }

    pub fn is_porous_exponential_dominating(&self) -> bool {
        let one = Dyadic::one();
        self.porous.iter().all(|w| *w >= one)
    }
}

/// Distances from `v ∈ d` to every vertex along paths that meet `d` only at `v`.
fn blocked_distances_from(g: &Graph, d: &VertexSet, v: usize) -> Vec<ExtNat> {
    let mut dist = bfs_avoiding(g, v, |w| d.contains(w));
    for w in d.iter() {
        if w != v {
            dist[w] = ExtNat::Infinite;
        }
    }
    dist
}

/// Length of a shortest `u`–`v` path whose only vertex in `d` is the endpoint `v`.
pub fn blocked_distance(g: &Graph, d: &VertexSet, u: usize, v: usize) -> Result<ExtNat, WeightError> {
    if !d.contains(v) {
        return Err(WeightError::NotInSet(v));
    }
    Ok(blocked_distances_from(g, d, v)[u])
}

pub fn weight_profile(g: &Graph, d: &VertexSet) -> WeightProfile {
    let n = g.n();
    let mut blocked = vec![Dyadic::zero(); n];
    let mut porous = vec![Dyadic::zero(); n];
    for v in d.iter() {
        for (u, dist) in blocked_distances_from(g, d, v).into_iter().enumerate() {
            if dist.is_finite() {
                blocked[u] += &coeff(dist);
            }
        }
        for (u, dist) in bfs_distances(g, v).into_iter().enumerate() {
            if dist.is_finite() {
                porous[u] += &coeff(dist);
            }
        }
    }
    WeightProfile {
        set: d.clone(),
        blocked,
        porous,
    }
}

/// Blocked weights only; skips the porous pass.
pub fn blocked_weights(g: &Graph, d: &VertexSet) -> Vec<Dyadic> {
    let mut blocked = vec![Dyadic::zero(); g.n()];
    for v in d.iter() {
        for (u, dist) in blocked_distances_from(g, d, v).into_iter().enumerate() {
            if dist.is_finite() {
                blocked[u] += &coeff(dist);
            }
        }
    }
    blocked
}

pub fn is_exponential_dominating(g: &Graph, d: &VertexSet) -> bool {
    let one = Dyadic::one();
    blocked_weights(g, d).iter().all(|w| *w >= one)
}

pub fn is_porous_exponential_dominating(g: &Graph, d: &VertexSet) -> bool {
    weight_profile(g, d).is_porous_exponential_dominating()
}
