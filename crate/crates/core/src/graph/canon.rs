//! AHU parenthesis codes for trees.
//!
//! A rooted code is `(` followed by the sorted codes of the children and `)`.
//! The unrooted code roots the tree at its center; for a bicentral tree it takes
//! the smaller of the two center-rooted codes.

use std::collections::VecDeque;

use super::{Graph, GraphError};

/// Unrooted canonical form of a tree: the relabelled graph, the permutation used
/// (`perm[old] = new`) and the canonical code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: Graph,
    pub perm: Vec<usize>,
    pub code: Vec<u8>,
}

struct Rooted {
    codes: Vec<Vec<u8>>,
    children: Vec<Vec<usize>>,
}

fn root_at(t: &Graph, root: usize) -> Rooted {
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    parent[root] = root;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut children = vec![Vec::new(); n];
    for &u in &order[1..] {
        children[parent[u]].push(u);
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[u]);
        kids.sort_by(|&a, &b| codes[a].cmp(&codes[b]).then(a.cmp(&b)));
        let mut code = Vec::with_capacity(2 + kids.iter().map(|&k| codes[k].len()).sum::<usize>());
        code.push(b'(');
        for &k in &kids {
            code.extend_from_slice(&codes[k]);
        }
        code.push(b')');
        codes[u] = code;
        children[u] = kids;
    }
    Rooted { codes, children }
}

/// Code of `t` rooted at `root`. Two pointed trees `(t, root)` get equal codes iff
/// an isomorphism maps one root to the other.
pub fn rooted_code(t: &Graph, root: usize) -> Result<Vec<u8>, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let mut r = root_at(t, root);
    Ok(std::mem::take(&mut r.codes[root]))
}

fn centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            deg[leaf] = 0;
            for &w in t.neighbors(leaf) {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn best_root(t: &Graph) -> (usize, Rooted) {
    let mut best: Option<(usize, Rooted)> = None;
    for c in centers(t) {
        let r = root_at(t, c);
        let better = match &best {
            None => true,
            Some((b, rb)) => r.codes[c] < rb.codes[*b],
        };
        if better {
            best = Some((c, r));
        }
    }
    best.expect("a tree has at least one center")
}

/// Isomorphism-complete code of a tree.
pub fn canonical_code(t: &Graph) -> Result<Vec<u8>, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let (root, mut r) = best_root(t);
    Ok(std::mem::take(&mut r.codes[root]))
}

/// Relabels a tree into preorder of its canonical rooting, children visited in
/// code order. Isomorphic trees yield identical graphs.
pub fn canonical_form(t: &Graph) -> Result<CanonicalForm, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let (root, mut r) = best_root(t);
    let mut perm = vec![0; t.n()];
    let mut next = 0;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        perm[u] = next;
        next += 1;
        stack.extend(r.children[u].iter().rev());
    }
    let code = std::mem::take(&mut r.codes[root]);
    Ok(CanonicalForm {
        graph: t.relabel(&perm),
        perm,
        code,
    })
}
