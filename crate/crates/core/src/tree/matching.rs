//! Maximum matchings of trees by leaf peeling.

use serde::{Deserialize, Serialize};

use super::{Tree, TreeError};
use crate::graph::{iter_mask, Graph, VertexMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatchingKind {
    Perfect,
    NearPerfect,
    Neither,
}

/// Pairwise disjoint edges plus the set of vertices they miss.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    fn join(&mut self, u: usize, v: usize) {
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    /// Edges as `(low, high)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len()).filter_map(|u| self.mate[u].filter(|&v| v > u).map(|v| (u, v))).collect()
    }

    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn missed(&self) -> VertexMask {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).fold(0, |m, v| m | 1 << v)
    }

    pub fn kind(&self) -> MatchingKind {
        match self.missed().count_ones() {
            0 => MatchingKind::Perfect,
            1 => MatchingKind::NearPerfect,
            _ => MatchingKind::Neither,
        }
    }

    /// Mask of the edge containing `v`, or just `v` when unmatched.
    pub fn edge_mask(&self, v: usize) -> VertexMask {
        (1 << v) | self.mate[v].map_or(0, |u| 1 << u)
    }
}

/// Leaf peeling with a caller-chosen leaf at every step. `choose` receives the
/// current set of degree-0/degree-1 vertices of the remaining forest and must
/// return one of them.
pub fn max_matching_by(t: &Tree, mut choose: impl FnMut(VertexMask) -> usize) -> Matching {
    let n = t.n();
    let mut m = Matching::empty(n);
    let mut alive = t.full();
    while alive != 0 {
        let low = iter_mask(alive)
            .filter(|&v| (t.neighbors(v) & alive).count_ones() <= 1)
            .fold(0u64, |acc, v| acc | 1 << v);
        let leaf = choose(low);
        assert!(low >> leaf & 1 == 1, "chosen vertex is not a leaf of the remaining forest");
        let up = t.neighbors(leaf) & alive;
        alive &= !(1 << leaf);
        if up != 0 {
            let p = up.trailing_zeros() as usize;
            m.join(leaf, p);
            alive &= !(1 << p);
        }
    }
    m
}

/// Maximum matching of the forest `g[mask]` by lowest-label leaf peeling.
pub(crate) fn forest_matching(g: &Graph, mask: VertexMask) -> Vec<(usize, usize)> {
    let mut alive = mask;
    let mut out = Vec::new();
    while alive != 0 {
        let leaf = iter_mask(alive)
            .find(|&v| (g.neighbors(v) & alive).count_ones() <= 1)
            .expect("a forest always has a vertex of degree at most one");
        let up = g.neighbors(leaf) & alive;
        alive &= !(1 << leaf);
        if up != 0 {
            let p = up.trailing_zeros() as usize;
            out.push((leaf.min(p), leaf.max(p)));
            alive &= !(1 << p);
        }
    }
    out.sort_unstable();
    out
}

/// A maximum matching (lowest-label leaf first) and its kind.
pub fn matching_status(t: &Tree) -> (Matching, MatchingKind) {
    let m = max_matching_by(t, |leaves| leaves.trailing_zeros() as usize);
    let kind = m.kind();
    (m, kind)
}

/// The unique perfect matching `M_T`.
pub fn canonical_matching(t: &Tree) -> Result<Matching, TreeError> {
    match matching_status(t) {
        (m, MatchingKind::Perfect) => Ok(m),
        _ => Err(TreeError::NoPerfectMatching),
    }
}

/// A near-perfect matching whose missed vertex is a leaf, obtained by flipping
/// an alternating path that starts at the missed vertex.
pub fn near_perfect_with_leaf(t: &Tree) -> Result<Matching, TreeError> {
    let (mut m, kind) = matching_status(t);
    if kind != MatchingKind::NearPerfect {
        return Err(TreeError::HypothesisNotMet("near-perfect matching".into()));
    }
    let mut cur = m.missed().trailing_zeros() as usize;
    let mut from = usize::MAX;
    while t.degree(cur) > 1 {
        let x = iter_mask(t.neighbors(cur))
            .find(|&x| x != from)
            .expect("internal vertex has another neighbour");
        let y = m.mate(x).expect("maximum matching covers every neighbour of the missed vertex");
        m.mate[y] = None;
        m.join(cur, x);
        from = x;
        cur = y;
    }
    debug_assert_eq!(m.kind(), MatchingKind::NearPerfect);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    #[test]
    fn kinds() {
        assert_eq!(matching_status(&Tree::m6()).1, MatchingKind::Perfect);
        assert_eq!(matching_status(&Tree::path(3)).1, MatchingKind::NearPerfect);
        assert_eq!(matching_status(&Tree::star(3)).1, MatchingKind::Neither);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_matching(&Tree::path(4)).unwrap().edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(canonical_matching(&Tree::m6()).unwrap().edges(), vec![(0, 3), (1, 4), (2, 5)]);
        let sp4 = Tree::spiking(&Tree::path(4));
        assert_eq!(canonical_matching(&sp4).unwrap().edges(), vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
        assert_eq!(canonical_matching(&Tree::star(3)), Err(TreeError::NoPerfectMatching));
    }

    /// Every perfect matching of a tree, by brute force over edge subsets.
    fn all_perfect_matchings(t: &Tree) -> Vec<Vec<(usize, usize)>> {
        let edges = t.edges();
        let mut out = Vec::new();
        for sel in 0u64..1 << edges.len() {
            let chosen: Vec<_> = iter_mask(sel).map(|i| edges[i]).collect();
            let cover = chosen.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
            if chosen.len() * 2 == t.n() && cover == t.full() {
                out.push(chosen);
            }
        }
        out
    }

    #[test]
    fn perfect_matching_is_unique_and_found() {
        for n in (2..=10).step_by(2) {
            for t in enumerate_trees(n) {
                let all = all_perfect_matchings(&t);
                assert!(all.len() <= 1);
                match canonical_matching(&t) {
                    Ok(m) => assert_eq!(all, vec![m.edges()]),
                    Err(_) => assert!(all.is_empty()),
                }
            }
        }
    }

    #[test]
    fn missed_vertex_moves_to_a_leaf() {
        for n in 1..=11 {
            for t in enumerate_trees(n) {
                if matching_status(&t).1 != MatchingKind::NearPerfect {
                    continue;
                }
                let m = near_perfect_with_leaf(&t).unwrap();
                let missed = m.missed().trailing_zeros() as usize;
                assert!(t.degree(missed) <= 1, "{t:?}");
                for (u, v) in m.edges() {
                    assert!(t.graph().has_edge(u, v));
                }
                assert_eq!(m.size(), (n - 1) / 2);
            }
        }
    }
}
