//! The tree family built from `P_1` by three attachment operations, the
//! threshold `τ_G(x)` that gates two of them, and recognition by reverse search.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{Dyadic, ExtDyadic};
use crate::graph::{bfs_avoiding, canonical_code, canonical_form, rooted_code, Graph, VertexSet};
use crate::solve::{
    domination_number, domination_with_forced_vertex, exponential_domination_number,
    restricted_domination_number,
};
use crate::weight::blocked_weights;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("vertex {vertex} has degree {degree}; attaching there breaks max degree 3")]
    DegreeViolation { vertex: usize, degree: usize },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation {op} is not applicable at vertex {vertex}")]
    NotApplicable { op: Op, vertex: usize },
    #[error("input is not a subcubic tree")]
    NotSubcubicTree,
    #[error("trace step {step} is inconsistent: {reason}")]
    InvalidTrace { step: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// Attach a leaf.
    One,
    /// Attach a path of two vertices.
    Two,
    /// Attach a path of three vertices.
    Three,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::One, Op::Two, Op::Three];

    pub fn id(self) -> u8 {
        match self {
            Op::One => 1,
            Op::Two => 2,
            Op::Three => 3,
        }
    }

    pub fn from_id(id: u8) -> Option<Op> {
        match id {
            1 => Some(Op::One),
            2 => Some(Op::Two),
            3 => Some(Op::Three),
            _ => None,
        }
    }

    /// Number of vertices the operation adds.
    pub fn added(self) -> usize {
        self.id() as usize
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl Serialize for Op {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpStep {
    pub op: Op,
    pub attach: usize,
    pub added: Vec<usize>,
}

/// Steps from `P_1` (vertex 0); new vertices take the next free ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OpTrace {
    pub steps: Vec<OpStep>,
}

impl OpTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Rebuilds the tree, re-checking every step's applicability.
    pub fn replay(&self) -> Result<Graph, FamilyError> {
        self.replay_with(&FamilyContext::new())
    }

    pub fn replay_with(&self, ctx: &FamilyContext) -> Result<Graph, FamilyError> {
        let mut t = Graph::path(1);
        for (i, step) in self.steps.iter().enumerate() {
            let expected: Vec<usize> = (t.n()..t.n() + step.op.added()).collect();
            if step.added != expected {
                return Err(FamilyError::InvalidTrace {
                    step: i,
                    reason: format!("added {:?}, expected {:?}", step.added, expected),
                });
            }
            t = ctx.apply_op(&t, step.op, step.attach).map_err(|e| FamilyError::InvalidTrace {
                step: i,
                reason: e.to_string(),
            })?;
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauResult {
    pub value: ExtDyadic,
    pub witness: Option<VertexSet>,
}

/// `τ(D)`: the least `τ` with `w(u) + (1/2)^dist_{G-D}(x,u) · τ >= 1` for all `u ∉ D`.
fn tau_of_set(g: &Graph, x: usize, d: &VertexSet) -> ExtDyadic {
    let w = blocked_weights(g, d);
    let dist = bfs_avoiding(g, x, |v| d.contains(v));
    let one = Dyadic::one();
    let mut worst = Dyadic::zero();
    for u in (0..g.n()).filter(|&u| !d.contains(u)) {
        if w[u] >= one {
            continue;
        }
        let Some(k) = dist[u].finite() else {
            return ExtDyadic::Infinite;
        };
        let need = (&one - &w[u]).shl(i64::from(k));
        if need > worst {
            worst = need;
        }
    }
    ExtDyadic::Finite(worst)
}

/// Lexicographic `k`-subsets of `pool`, each passed to `f`; stops when `f` returns `true`.
fn for_each_subset(pool: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    if k > pool.len() {
        return;
    }
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = pool[i];
        }
        if f(&buf) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + pool.len() - k) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `τ_G(x)` minimized over `D ⊆ V ∖ {x}` with `|D| < γ_e(G)`; `D = ∅` is admitted.
pub fn tau(g: &Graph, x: usize) -> Result<TauResult, FamilyError> {
    if x >= g.n() {
        return Err(FamilyError::VertexOutOfRange { vertex: x, n: g.n() });
    }
    let ge = exponential_domination_number(g).value;
    let pool: Vec<usize> = (0..g.n()).filter(|&v| v != x).collect();
    let mut best: Option<(ExtDyadic, VertexSet)> = None;
    for k in 0..ge {
        for_each_subset(&pool, k, |s| {
            let d = VertexSet::from_iter_in(g.n(), s.iter().copied());
            let t = tau_of_set(g, x, &d);
            let improves = best.as_ref().map_or(true, |(b, _)| t < *b);
            if improves {
                best = Some((t, d));
            }
            // nothing beats zero
            matches!(&best, Some((ExtDyadic::Finite(v), _)) if v.is_zero())
        });
    }
    Ok(match best {
        Some((value @ ExtDyadic::Finite(_), d)) => TauResult { value, witness: Some(d) },
        _ => TauResult {
            value: ExtDyadic::Infinite,
            witness: None,
        },
    })
}

fn check_attach(t: &Graph, x: usize) -> Result<(), FamilyError> {
    if x >= t.n() {
        return Err(FamilyError::VertexOutOfRange { vertex: x, n: t.n() });
    }
    if !t.is_subcubic_tree() {
        return Err(FamilyError::NotSubcubicTree);
    }
    let degree = t.degree(x);
    if degree > 2 {
        return Err(FamilyError::DegreeViolation { vertex: x, degree });
    }
    Ok(())
}

fn op_predicate(t: &Graph, op: Op, x: usize) -> bool {
    match op {
        Op::One => domination_with_forced_vertex(t, x) == domination_number(t).value,
        Op::Two => {
            tau(t, x).expect("vertex checked").value.exceeds(&Dyadic::one()) || {
                let mut others = VertexSet::full(t.n());
                others.remove(x);
                restricted_domination_number(t, &others).value < domination_number(t).value
            }
        }
        Op::Three => tau(t, x).expect("vertex checked").value.exceeds(&Dyadic::pow2(-1)),
    }
}

/// Verdict caches shared by recognition and generation. Values are
/// deterministic, so concurrent writers can only store the same verdict.
#[derive(Debug, Default)]
pub struct FamilyContext {
    applicable: RwLock<HashMap<(Op, Vec<u8>), bool>>,
    members: RwLock<HashMap<Vec<u8>, Option<Member>>>,
}

/// A recognized tree in canonical labelling: its trace and, per canonical
/// vertex, the id that vertex gets when the trace is replayed.
#[derive(Debug, Clone)]
struct Member {
    trace: OpTrace,
    replay_id: Vec<usize>,
}

impl FamilyContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn applicable(&self, t: &Graph, op: Op, x: usize) -> Result<bool, FamilyError> {
        check_attach(t, x)?;
        let key = (op, rooted_code(t, x).map_err(|_| FamilyError::NotSubcubicTree)?);
        if let Some(&v) = self.applicable.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = op_predicate(t, op, x);
        self.applicable.write().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn apply_op(&self, t: &Graph, op: Op, x: usize) -> Result<Graph, FamilyError> {
        if !self.applicable(t, op, x)? {
            return Err(FamilyError::NotApplicable { op, vertex: x });
        }
        Ok(attach_path(t, x, op.added()))
    }

    pub fn recognize(&self, t: &Graph) -> Result<Option<OpTrace>, FamilyError> {
        if !t.is_subcubic_tree() {
            return Err(FamilyError::NotSubcubicTree);
        }
        let cf = canonical_form(t).map_err(|_| FamilyError::NotSubcubicTree)?;
        Ok(self.member(&cf.graph, &cf.code).map(|m| m.trace))
    }

    fn member(&self, canon: &Graph, code: &[u8]) -> Option<Member> {
        if let Some(m) = self.members.read().unwrap().get(code) {
            return m.clone();
        }
        let found = self.search(canon);
        self.members.write().unwrap().insert(code.to_vec(), found.clone());
        found
    }

    /// Tries every way of undoing one operation on `t`.
    fn search(&self, t: &Graph) -> Option<Member> {
        let n = t.n();
        if n == 1 {
            return Some(Member {
                trace: OpTrace::default(),
                replay_id: vec![0],
            });
        }
        for z in (0..n).filter(|&z| t.degree(z) == 1) {
            // the attached path, read from the free end inwards
            let mut path = vec![z];
            let mut prev = z;
            let mut cur = t.neighbors(z)[0];
            for op in Op::ALL {
                if path.len() >= n {
                    break;
                }
                // `cur` is where the removed path hangs
                if let Some(m) = self.undo(t, op, cur, &path) {
                    return Some(m);
                }
                if t.degree(cur) != 2 {
                    break;
                }
                path.push(cur);
                let next = *t.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
        }
        None
    }

    fn undo(&self, t: &Graph, op: Op, attach: usize, path_from_end: &[usize]) -> Option<Member> {
        let (rest, map) = t.remove_vertices(path_from_end);
        let attach_rest = map[attach].expect("attachment survives");
        if !self.applicable(&rest, op, attach_rest).ok()? {
            return None;
        }
        let cf = canonical_form(&rest).ok()?;
        let sub = self.member(&cf.graph, &cf.code)?;
        let base = rest.n();
        let mut steps = sub.trace.steps.clone();
        steps.push(OpStep {
            op,
            attach: sub.replay_id[cf.perm[attach_rest]],
            added: (base..base + op.added()).collect(),
        });
        let mut replay_id = vec![0; t.n()];
        for v in 0..t.n() {
            replay_id[v] = match map[v] {
                Some(r) => sub.replay_id[cf.perm[r]],
                // nearest to the attachment first
                None => base + path_from_end.len() - 1 - path_from_end.iter().position(|&p| p == v).unwrap(),
            };
        }
        Some(Member {
            trace: OpTrace { steps },
            replay_id,
        })
    }

    /// Members of the family with order at most `n_max`, in canonical form,
    /// sorted by order and then code.
    pub fn generate_family(&self, n_max: usize) -> Vec<Graph> {
        let mut by_order: Vec<BTreeMap<Vec<u8>, Graph>> = vec![BTreeMap::new(); n_max + 1];
        if n_max == 0 {
            return Vec::new();
        }
        by_order[1].insert(canonical_code(&Graph::path(1)).unwrap(), Graph::path(1));
        for m in 1..n_max {
            let trees: Vec<Graph> = by_order[m].values().cloned().collect();
            for t in trees {
                let mut seen = std::collections::HashSet::new();
                for x in (0..t.n()).filter(|&x| t.degree(x) <= 2) {
                    if !seen.insert(rooted_code(&t, x).unwrap()) {
                        continue;
                    }
                    for op in Op::ALL.into_iter().filter(|op| m + op.added() <= n_max) {
                        if let Ok(grown) = self.apply_op(&t, op, x) {
                            let cf = canonical_form(&grown).unwrap();
                            by_order[grown.n()].entry(cf.code).or_insert(cf.graph);
                        }
                    }
                }
            }
        }
        by_order.into_iter().flat_map(|level| level.into_values()).collect()
    }
}

fn attach_path(t: &Graph, x: usize, len: usize) -> Graph {
    let mut g = t.clone();
    let mut prev = x;
    for _ in 0..len {
        let v = g.add_vertex();
        g.add_edge(prev, v).expect("fresh vertex");
        prev = v;
    }
    g
}

pub fn op1_applicable(t: &Graph, x: usize) -> Result<bool, FamilyError> {
    FamilyContext::new().applicable(t, Op::One, x)
}

pub fn op2_applicable(t: &Graph, x: usize) -> Result<bool, FamilyError> {
    FamilyContext::new().applicable(t, Op::Two, x)
}

pub fn op3_applicable(t: &Graph, w: usize) -> Result<bool, FamilyError> {
    FamilyContext::new().applicable(t, Op::Three, w)
}

pub fn apply_op(t: &Graph, op: Op, x: usize) -> Result<Graph, FamilyError> {
    FamilyContext::new().apply_op(t, op, x)
}

pub fn recognize(t: &Graph) -> Result<Option<OpTrace>, FamilyError> {
    FamilyContext::new().recognize(t)
}

pub fn generate_family(n_max: usize) -> Vec<Graph> {
    FamilyContext::new().generate_family(n_max)
}
