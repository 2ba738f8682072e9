use std::collections::BTreeMap;

use super::{canonical_form, Graph};

/// One representative per isomorphism class of trees of order `n` with maximum
/// degree at most 3, in increasing canonical-code order. Each graph is in
/// canonical form (see [`super::canonical_form`]).
pub fn enumerate_subcubic_trees(n: usize) -> SubcubicTrees {
    assert!(n >= 1, "trees have at least one vertex");
    let mut by_code = BTreeMap::new();
    for levels in LevelSequences::new(n) {
        let t = tree_from_levels(&levels);
        if t.max_degree() <= 3 {
            let form = canonical_form(&t).expect("level sequences encode trees");
            by_code.entry(form.code).or_insert(form.graph);
        }
    }
    SubcubicTrees {
        inner: by_code.into_values().collect::<Vec<_>>().into_iter(),
    }
}

pub struct SubcubicTrees {
    inner: std::vec::IntoIter<Graph>,
}

impl Iterator for SubcubicTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for SubcubicTrees {}

/// Rooted trees as preorder depth sequences, generated in the Beyer–Hedetniemi
/// successor order starting from the path.
struct LevelSequences {
    current: Option<Vec<usize>>,
}

impl LevelSequences {
    fn new(n: usize) -> Self {
        LevelSequences {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        if let Some(p) = out.iter().rposition(|&l| l > 1) {
            let q = out[..p].iter().rposition(|&l| l == out[p] - 1).expect("parent level exists");
            let mut next = out.clone();
            for i in p..next.len() {
                next[i] = next[i - (p - q)];
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

fn tree_from_levels(levels: &[usize]) -> Graph {
    let mut g = Graph::empty(levels.len());
    // last vertex seen at each depth
    let mut last_at = vec![0usize; levels.len()];
    for (i, &l) in levels.iter().enumerate() {
        if i > 0 {
            g.add_edge(last_at[l - 1], i).expect("tree edge");
        }
        last_at[l] = i;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // rooted unlabeled trees: 1, 1, 2, 4, 9, 20, 48
        let counts: Vec<usize> = (1..=7).map(|n| LevelSequences::new(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_subcubic_trees(1).count(), 1);
        let four: Vec<Graph> = enumerate_subcubic_trees(4).collect();
        assert_eq!(four.len(), 2);
        assert!(four.iter().any(|t| t.max_degree() == 3));
        assert!(four.iter().any(|t| t.max_degree() == 2));
        assert_eq!(enumerate_subcubic_trees(6).count(), 4);
    }

    #[test]
    fn stream_is_deterministic_and_canonical() {
        let a: Vec<Graph> = enumerate_subcubic_trees(8).collect();
        let b: Vec<Graph> = enumerate_subcubic_trees(8).collect();
        assert_eq!(a, b);
        for t in &a {
            assert!(t.is_subcubic_tree());
            assert_eq!(&canonical_form(t).unwrap().graph, t);
        }
    }
}
