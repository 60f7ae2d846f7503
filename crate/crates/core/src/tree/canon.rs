//! AHU canonical forms and enumeration of unlabeled trees.

use std::collections::BTreeMap;

use super::Tree;
use crate::graph::{iter_mask, Graph, VertexMask};

/// Parenthesis code of the subtree at `v`, plus its vertices in preorder with
/// children visited in code order.
fn encode(g: &Graph, v: usize, parent: Option<usize>, within: VertexMask) -> (String, Vec<usize>) {
    let mut kids: Vec<(String, Vec<usize>)> = iter_mask(g.neighbors(v) & within)
        .filter(|&u| Some(u) != parent)
        .map(|u| encode(g, u, Some(v), within))
        .collect();
    kids.sort();
    let mut code = String::from("(");
    let mut order = vec![v];
    for (c, o) in kids {
        code.push_str(&c);
        order.extend(o);
    }
    code.push(')');
    (code, order)
}

/// One or two centres of the tree induced on `comp`.
fn centers(g: &Graph, comp: VertexMask) -> Vec<usize> {
    let mut alive = comp;
    while alive.count_ones() > 2 {
        let leaves = iter_mask(alive)
            .filter(|&v| (g.neighbors(v) & alive).count_ones() <= 1)
            .fold(0u64, |m, v| m | 1 << v);
        alive &= !leaves;
    }
    iter_mask(alive).collect()
}

fn component_code(g: &Graph, comp: VertexMask) -> (String, Vec<usize>) {
    centers(g, comp)
        .into_iter()
        .map(|c| encode(g, c, None, comp))
        .min()
        .expect("nonempty component")
}

/// Isomorphism-invariant code of a tree.
pub fn canonical_code(t: &Tree) -> String {
    component_code(t.graph(), t.full()).0
}

/// Isomorphism-invariant code of the forest `g[mask]` (components must be
/// acyclic).
pub fn forest_code(g: &Graph, mask: VertexMask) -> String {
    let mut codes: Vec<String> = g.components_within(mask).into_iter().map(|c| component_code(g, c).0).collect();
    codes.sort();
    codes.concat()
}

/// Relabels so that the canonical preorder reads `0, 1, ..., n-1`.
fn canonical_relabel(t: &Tree) -> Tree {
    let (_, order) = component_code(t.graph(), t.full());
    let mut perm = vec![0; t.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    t.relabel(&perm)
}

/// One tree per isomorphism class on `n` vertices, canonically labeled and
/// sorted by canonical code. Grows every class of `n - 1` by one leaf.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    assert!((1..=super::MAX_TREE_VERTICES).contains(&n), "tree size {n} out of range");
    let mut level: BTreeMap<String, Tree> = BTreeMap::new();
    let k1 = Tree::path(1);
    level.insert(canonical_code(&k1), k1);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..size - 1 {
                let mut edges = t.edges();
                edges.push((v, size - 1));
                let grown = Tree::new(size, &edges).expect("adding a leaf keeps a tree");
                next.entry(canonical_code(&grown)).or_insert_with(|| canonical_relabel(&grown));
            }
        }
        level = next;
    }
    level.into_values().collect()
}
