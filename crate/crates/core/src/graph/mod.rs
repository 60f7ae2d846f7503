//! Bit-parallel kernel for small simple graphs.
//!
//! A [`Graph`] holds at most [`MAX_VERTICES`] vertices, one `u64` adjacency row
//! per vertex. Vertex sets are plain `u64` masks ([`VertexMask`]).

mod clique;
mod cograph;
mod embed;
pub mod named;

use std::fmt;

use thiserror::Error;

pub use clique::{max_clique, max_clique_size, max_stable_size};
pub use cograph::{
    complement_components, complement_components_within, component_flags, component_shape,
    family_member, family_member_within, find_induced_p4, is_complete_multipartite, is_comatching,
    is_p4_free, is_p4_free_quartets, is_p4_free_seinsche, part_shape, ComponentFlags,
    ComponentShape, Family, PartShape, ShapeError,
};
pub use embed::{
    for_each_induced_copy, induced_embedding, induced_embedding_within, is_isomorphic,
};

/// Largest supported vertex count (one-byte graph6 headers, single-word rows).
pub const MAX_VERTICES: usize = 62;

/// A set of vertices, bit `v` set iff vertex `v` is a member.
pub type VertexMask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph on vertices `0..n`.
///
/// Rows beyond `n` and bits at positions `>= n` are always zero, so derived
/// equality and hashing agree with labeled-graph equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: [0; MAX_VERTICES] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from an upper-triangle bit string in column order
    /// (`x01, x02, x12, x03, ...`), bit `k` of `bits` being pair number `k`.
    ///
    /// Only the first `n(n-1)/2 <= 64` pairs are addressable this way, which
    /// covers every `n <= 11`.
    pub fn from_pair_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n * n.saturating_sub(1) / 2 <= 64);
        let mut g = Graph { n, adj: [0; MAX_VERTICES] };
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits >> k & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask of all vertices.
    #[inline]
    pub fn full(&self) -> VertexMask {
        mask_below(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    /// Panics on out-of-range vertices or loops; meant for literal construction.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in iter_mask(self.adj[u] & !mask_below(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let full = self.full();
        let mut g = *self;
        for v in 0..self.n {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        g
    }

    /// Subgraph induced on `mask`, relabeled `0..|mask|` in increasing order of
    /// the original labels. Returns the graph and the original label of each
    /// new vertex.
    pub fn induced(&self, mask: VertexMask) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = iter_mask(mask & self.full()).collect();
        let mut g = Graph { n: verts.len(), adj: [0; MAX_VERTICES] };
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.adj[a] |= 1 << b;
                    g.adj[b] |= 1 << a;
                }
            }
        }
        (g, verts)
    }

    /// Applies `perm` (old label -> new label).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, adj: [0; MAX_VERTICES] };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = self.full();
        let right = other.full() << self.n;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..self.n + other.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// True iff every pair inside `mask` is adjacent.
    pub fn is_clique_on(&self, mask: VertexMask) -> bool {
        iter_mask(mask).all(|v| mask & !(1 << v) & !self.adj[v] == 0)
    }

    /// True iff no pair inside `mask` is adjacent.
    pub fn is_stable_on(&self, mask: VertexMask) -> bool {
        iter_mask(mask).all(|v| self.adj[v] & mask == 0)
    }

    pub fn is_connected_on(&self, mask: VertexMask) -> bool {
        if mask == 0 {
            return true;
        }
        reach(mask.trailing_zeros() as usize, mask, |v| self.adj[v]) == mask
    }

    /// Connected components of the subgraph induced on `mask`, ordered by least
    /// element.
    pub fn components_within(&self, mask: VertexMask) -> Vec<VertexMask> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let c = reach(rest.trailing_zeros() as usize, rest, |v| self.adj[v]);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexMask> {
        self.components_within(self.full())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Vertices reachable from `start` inside `within`, `nbrs` giving neighbor rows.
#[inline]
pub(crate) fn reach(start: usize, within: VertexMask, nbrs: impl Fn(usize) -> u64) -> VertexMask {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in iter_mask(frontier) {
            next |= nbrs(v);
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[inline]
pub fn mask_below(n: usize) -> VertexMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_of(vertices: impl IntoIterator<Item = usize>) -> VertexMask {
    vertices.into_iter().fold(0, |m, v| m | 1 << v)
}

/// Iterates set bits in increasing order.
#[inline]
pub fn iter_mask(mut mask: VertexMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_edges() {
        let p4 = named::path(4);
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let c = p4.complement();
        assert_eq!(c.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        assert_eq!(c.complement(), p4);
    }

    #[test]
    fn induced_relabels_in_order() {
        let c6 = named::cycle(6);
        let (g, verts) = c6.induced(mask_of([1, 2, 3, 5]));
        assert_eq!(verts, vec![1, 2, 3, 5]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn pair_bits_column_order() {
        // bit 0 = x01, bit 1 = x02, bit 2 = x12
        let g = Graph::from_pair_bits(3, 0b100);
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(Graph::empty(63).is_err());
    }

    #[test]
    fn join_and_union() {
        let k1 = named::complete(1);
        let s2 = named::empty(2);
        let p3 = s2.join(&k1).unwrap();
        assert_eq!(p3.edges(), vec![(0, 2), (1, 2)]);
        let u = k1.disjoint_union(&named::complete(2)).unwrap();
        assert_eq!(u.edges(), vec![(1, 2)]);
        assert_eq!(u.components(), vec![0b001, 0b110]);
    }
}
