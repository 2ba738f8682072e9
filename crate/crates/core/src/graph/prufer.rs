//! Brute-force counting oracle for unlabeled subcubic trees.
//!
//! Walks every Prüfer sequence whose labels occur at most twice (degree is
//! occurrences plus one), decodes it, and deduplicates the resulting labeled
//! trees with a bracket code packed into a `u64`. Shares nothing with the
//! level-sequence generator or the byte-string canonical codes.

use std::collections::HashSet;

/// Largest order the packed code supports (two bits per vertex plus a marker bit).
pub const MAX_ORACLE_ORDER: usize = 31;

/// Number of isomorphism classes of trees of order `n` with maximum degree ≤ 3.
pub fn count_subcubic_trees(n: usize) -> usize {
    assert!((1..=MAX_ORACLE_ORDER).contains(&n), "oracle supports 1 <= n <= {MAX_ORACLE_ORDER}");
    if n <= 2 {
        return 1;
    }
    let mut walker = Walker {
        n,
        seq: vec![0; n - 2],
        occurrences: vec![0; n],
        seen: HashSet::new(),
    };
    walker.walk(0);
    walker.seen.len()
}

struct Walker {
    n: usize,
    seq: Vec<u8>,
    occurrences: Vec<u8>,
    seen: HashSet<u64>,
}

impl Walker {
    fn walk(&mut self, pos: usize) {
        if pos == self.seq.len() {
            let tree = decode(self.n, &self.seq);
            self.seen.insert(tree.code());
            return;
        }
        for label in 0..self.n {
            if self.occurrences[label] < 2 {
                self.occurrences[label] += 1;
                self.seq[pos] = label as u8;
                self.walk(pos + 1);
                self.occurrences[label] -= 1;
            }
        }
    }
}

struct SmallTree {
    n: usize,
    adj: [[u8; 3]; MAX_ORACLE_ORDER],
    deg: [u8; MAX_ORACLE_ORDER],
}

impl SmallTree {
    fn link(&mut self, a: usize, b: usize) {
        self.adj[a][self.deg[a] as usize] = b as u8;
        self.deg[a] += 1;
        self.adj[b][self.deg[b] as usize] = a as u8;
        self.deg[b] += 1;
    }

    /// `(bits, len)` of the bracket string with `(` = 1 and `)` = 0.
    fn rooted(&self, v: usize, parent: usize) -> (u64, u32) {
        let mut kids = [(0u64, 0u32); 3];
        let mut k = 0;
        for &w in &self.adj[v][..self.deg[v] as usize] {
            if w as usize != parent {
                kids[k] = self.rooted(w as usize, v);
                k += 1;
            }
        }
        let kids = &mut kids[..k];
        kids.sort_unstable_by_key(|&(bits, len)| (len, bits));
        let (mut bits, mut len) = (1u64, 1u32);
        for &(b, l) in kids.iter() {
            bits = bits << l | b;
            len += l;
        }
        (bits << 1, len + 1)
    }

    fn code(&self) -> u64 {
        let mut deg = self.deg;
        let mut alive = self.n;
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        while alive > 2 {
            alive -= layer.len();
            let mut next = Vec::with_capacity(layer.len());
            for &leaf in &layer {
                deg[leaf] = 0;
                for &w in &self.adj[leaf][..self.deg[leaf] as usize] {
                    let w = w as usize;
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
        layer
            .iter()
            .map(|&c| {
                let (bits, len) = self.rooted(c, usize::MAX);
                1u64 << len | bits
            })
            .min()
            .expect("tree has a center")
    }
}

fn decode(n: usize, seq: &[u8]) -> SmallTree {
    let mut t = SmallTree {
        n,
        adj: [[0; 3]; MAX_ORACLE_ORDER],
        deg: [0; MAX_ORACLE_ORDER],
    };
    let mut degree = [1u8; MAX_ORACLE_ORDER];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut ptr = (0..n).find(|&i| degree[i] == 1).expect("some label is a leaf");
    let mut leaf = ptr;
    for &s in seq {
        let s = s as usize;
        t.link(leaf, s);
        degree[leaf] -= 1;
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    t.link(leaf, n - 1);
    t
}
