//! Labeled trees, their matchings, the class taxonomy and the explicit
//! partitions used by certification.

mod canon;
mod claims;
mod matching;
mod taxonomy;

use thiserror::Error;

use crate::graph::{self, iter_mask, Graph, GraphError, VertexMask};

pub use canon::{canonical_code, enumerate_trees, forest_code};
pub use claims::{
    claim_partition, find_induced_m6, find_induced_p6, s4_partition, star_cover_exists, PairCode,
    Scheme, ShapeTag, TreePartition, M6_PAIRS, P6_PAIRS, P8_PAIRS, PARTCALL_PAIRS,
};
pub use matching::{canonical_matching, matching_status, max_matching_by, near_perfect_with_leaf, Matching, MatchingKind};
pub use taxonomy::{
    chaining_decomposition, classify, is_spiked, is_spiked_star, is_subdivided_star, spiked_base,
    subdivided_star_centers, ChainKind, TreeClass,
};

pub const MAX_TREE_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("tree has {0} vertices, at most {MAX_TREE_VERTICES} are supported")]
    TooLarge(usize),
    #[error("{edges} edges on {n} vertices cannot form a tree")]
    WrongEdgeCount { n: usize, edges: usize },
    #[error("edge set is disconnected")]
    Disconnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("tree has no perfect matching")]
    NoPerfectMatching,
}

/// A labeled tree on vertices `0..n`, `1 <= n <= 32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tree {
    g: Graph,
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > MAX_TREE_VERTICES {
            return Err(TreeError::TooLarge(n));
        }
        let g = Graph::from_edges(n, edges)?;
        Tree::from_graph(g)
    }

    pub fn from_graph(g: Graph) -> Result<Self, TreeError> {
        let n = g.n();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > MAX_TREE_VERTICES {
            return Err(TreeError::TooLarge(n));
        }
        if g.edge_count() != n - 1 {
            return Err(TreeError::WrongEdgeCount { n, edges: g.edge_count() });
        }
        if !g.is_connected_on(g.full()) {
            return Err(TreeError::Disconnected);
        }
        Ok(Tree { g })
    }

    pub fn path(n: usize) -> Self {
        Tree::from_graph(graph::named::path(n)).expect("path is a tree")
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Self {
        Tree::from_graph(graph::named::star(k)).expect("star is a tree")
    }

    /// Pendant `v + n` on every vertex `v` of `base`.
    pub fn spiking(base: &Tree) -> Self {
        Tree::from_graph(graph::named::spiking(&base.g)).expect("spiking of a tree is a tree")
    }

    pub fn m6() -> Self {
        Tree::spiking(&Tree::path(3))
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.g.n()
    }

    #[inline]
    pub fn full(&self) -> VertexMask {
        self.g.full()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.g.neighbors(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.g.degree(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.g.edges()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.g.degree(v) == 1
    }

    pub fn leaves(&self) -> VertexMask {
        iter_mask(self.full()).filter(|&v| self.is_leaf(v)).fold(0, |m, v| m | 1 << v)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_path(&self) -> bool {
        self.max_degree() <= 2
    }

    /// All but at most one vertex is a leaf.
    pub fn is_star(&self) -> bool {
        self.n() <= 2 || (0..self.n()).filter(|&v| !self.is_leaf(v)).count() == 1
    }

    /// Independence number, by König duality on the leaf-peeled matching.
    pub fn alpha(&self) -> usize {
        self.n() - matching_status(self).0.size()
    }

    pub fn relabel(&self, perm: &[usize]) -> Tree {
        Tree { g: self.g.relabel(perm) }
    }

    /// Vertices of a path tree in order from its lowest-labeled endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path() {
            return None;
        }
        let start = (0..self.n()).find(|&v| self.degree(v) <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = iter_mask(self.neighbors(cur)).find(|&u| u != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl std::fmt::Display for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}:{}", self.n(), parts.join(","))
    }
}
