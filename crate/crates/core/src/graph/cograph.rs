//! P4-freeness, complement components, and the shape vocabulary used by the
//! certification predicates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{iter_mask, reach, Graph, VertexMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("vertex set {0:#x} is not a single complement component")]
    NotAComponent(VertexMask),
}

/// Shape of the subgraph induced by one complement component.
///
/// Reported with precedence `Singleton > StableSet > VertexPlusClique >
/// VertexPlusCoMatching > CliquePlusStable > VertexPlusMultipartite > Other`.
/// Predicates that need overlapping shapes read [`ComponentFlags`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentShape {
    Singleton,
    StableSet(usize),
    VertexPlusClique,
    VertexPlusCoMatching,
    CliquePlusStable,
    VertexPlusMultipartite,
    Other,
}

/// Raw shape booleans for an induced subgraph. Cliques, stable sets and
/// matchings may be empty, so a singleton satisfies every `vertex_plus_*`
/// flag and `clique_plus_stable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComponentFlags {
    pub size: usize,
    pub stable: bool,
    pub vertex_plus_clique: bool,
    pub vertex_plus_comatching: bool,
    pub clique_plus_stable: bool,
    pub vertex_plus_multipartite: bool,
}

impl ComponentFlags {
    pub fn shape(&self) -> ComponentShape {
        if self.size == 1 {
            ComponentShape::Singleton
        } else if self.stable {
            ComponentShape::StableSet(self.size)
        } else if self.vertex_plus_clique {
            ComponentShape::VertexPlusClique
        } else if self.vertex_plus_comatching {
            ComponentShape::VertexPlusCoMatching
        } else if self.clique_plus_stable {
            ComponentShape::CliquePlusStable
        } else if self.vertex_plus_multipartite {
            ComponentShape::VertexPlusMultipartite
        } else {
            ComponentShape::Other
        }
    }

    fn allowed_in(&self, family: Family) -> bool {
        let stable3 = self.stable && self.size == 3;
        match family {
            Family::F1 => self.vertex_plus_clique,
            Family::F2 => stable3 || self.vertex_plus_clique,
            Family::F3 => self.stable || self.vertex_plus_clique,
            Family::F4 => self.clique_plus_stable,
            Family::F5VertexMultipartite => self.vertex_plus_multipartite,
            Family::F6VertexCoMatching => stable3 || self.vertex_plus_comatching,
            Family::AllCoMatching => self.size <= 2,
        }
    }
}

/// Shape of an arbitrary part, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartShape {
    Clique,
    Stable,
    CoMatching,
    CompleteMultipartite,
    P4FreeOther,
    NotP4Free,
}

/// Graph families defined by the allowed shape of every complement component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// vertex plus clique
    F1,
    /// stable triple, or vertex plus clique
    F2,
    /// stable set of any size, or vertex plus clique
    F3,
    /// clique plus stable set
    F4,
    /// vertex plus complete multipartite graph
    F5VertexMultipartite,
    /// stable triple, or vertex plus complement of a matching
    F6VertexCoMatching,
    /// every complement component has at most two vertices
    AllCoMatching,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::F1,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5VertexMultipartite,
        Family::F6VertexCoMatching,
        Family::AllCoMatching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5VertexMultipartite => "F5",
            Family::F6VertexCoMatching => "F6",
            Family::AllCoMatching => "AllCoMatching",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

/// Components of the complement of `g[mask]`, ordered by least element.
pub fn complement_components_within(g: &Graph, mask: VertexMask) -> Vec<VertexMask> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let c = reach(rest.trailing_zeros() as usize, rest, |v| !g.neighbors(v) & !(1 << v));
        out.push(c);
        rest &= !c;
    }
    out
}

pub fn complement_components(g: &Graph) -> Vec<VertexMask> {
    complement_components_within(g, g.full())
}

/// Each vertex of `mask` misses at most one other vertex of `mask`.
pub fn is_comatching(g: &Graph, mask: VertexMask) -> bool {
    iter_mask(mask).all(|v| (mask & !g.neighbors(v) & !(1 << v)).count_ones() <= 1)
}

/// Non-adjacency inside `mask` is an equivalence relation. Stable sets count
/// as the one-part case.
pub fn is_complete_multipartite(g: &Graph, mask: VertexMask) -> bool {
    iter_mask(mask).all(|v| {
        let class = mask & !g.neighbors(v);
        iter_mask(class).all(|u| mask & !g.neighbors(u) == class)
    })
}

fn isolated_within(g: &Graph, mask: VertexMask) -> VertexMask {
    iter_mask(mask).filter(|&v| g.neighbors(v) & mask == 0).fold(0, |m, v| m | 1 << v)
}

/// Shape booleans for `g[mask]`, whether or not `mask` is a complement component.
pub fn component_flags(g: &Graph, mask: VertexMask) -> ComponentFlags {
    let iso = isolated_within(g, mask);
    let minus = |v: usize| mask & !(1 << v);
    ComponentFlags {
        size: mask.count_ones() as usize,
        stable: g.is_stable_on(mask),
        vertex_plus_clique: iter_mask(iso).any(|v| g.is_clique_on(minus(v))),
        vertex_plus_comatching: iter_mask(iso).any(|v| is_comatching(g, minus(v))),
        clique_plus_stable: g.is_clique_on(mask & !iso),
        vertex_plus_multipartite: iter_mask(iso).any(|v| is_complete_multipartite(g, minus(v))),
    }
}

pub fn component_shape(g: &Graph, comp: VertexMask) -> Result<ComponentShape, ShapeError> {
    let comps = complement_components(g);
    if !comps.contains(&comp) {
        return Err(ShapeError::NotAComponent(comp));
    }
    Ok(component_flags(g, comp).shape())
}

pub fn family_member_within(g: &Graph, mask: VertexMask, family: Family) -> bool {
    complement_components_within(g, mask)
        .into_iter()
        .all(|c| component_flags(g, c).allowed_in(family))
}

pub fn family_member(g: &Graph, family: Family) -> bool {
    family_member_within(g, g.full(), family)
}

pub fn part_shape(g: &Graph, part: VertexMask) -> PartShape {
    if g.is_clique_on(part) {
        PartShape::Clique
    } else if g.is_stable_on(part) {
        PartShape::Stable
    } else if is_comatching(g, part) {
        PartShape::CoMatching
    } else if is_complete_multipartite(g, part) {
        PartShape::CompleteMultipartite
    } else if find_induced_p4(g, part).is_none() {
        PartShape::P4FreeOther
    } else {
        PartShape::NotP4Free
    }
}

/// An induced path `a-b-c-d` inside `g[mask]`, scanning middle edges `bc`.
pub fn find_induced_p4(g: &Graph, mask: VertexMask) -> Option<[usize; 4]> {
    for b in iter_mask(mask) {
        for c in iter_mask(g.neighbors(b) & mask & !((1u64 << (b + 1)) - 1)) {
            let ends_b = g.neighbors(b) & mask & !g.neighbors(c) & !(1 << c);
            let ends_c = g.neighbors(c) & mask & !g.neighbors(b) & !(1 << b);
            if ends_c == 0 {
                continue;
            }
            for a in iter_mask(ends_b) {
                let d = ends_c & !g.neighbors(a);
                if d != 0 {
                    return Some([a, b, c, d.trailing_zeros() as usize]);
                }
            }
        }
    }
    None
}

/// Literal check of every 4-subset.
pub fn is_p4_free_quartets(g: &Graph) -> bool {
    quartets_within(g, g.full())
}

fn quartets_within(g: &Graph, mask: VertexMask) -> bool {
    let vs: Vec<usize> = iter_mask(mask).collect();
    let k = vs.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let q = [vs[a], vs[b], vs[c], vs[d]];
                    let qm = q.iter().fold(0u64, |m, &v| m | 1 << v);
                    let mut degs: Vec<u32> = q.iter().map(|&v| (g.neighbors(v) & qm).count_ones()).collect();
                    degs.sort_unstable();
                    if degs == [1, 1, 2, 2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Recursive split: a P4-free graph on two or more vertices is disconnected or
/// co-disconnected, and both sides of the split are again P4-free.
pub fn is_p4_free_seinsche(g: &Graph) -> bool {
    fn split(g: &Graph, mask: VertexMask) -> bool {
        if mask.count_ones() < 4 {
            return true;
        }
        let comps = g.components_within(mask);
        if comps.len() > 1 {
            return comps.into_iter().all(|c| split(g, c));
        }
        let cocomps = complement_components_within(g, mask);
        if cocomps.len() > 1 {
            return cocomps.into_iter().all(|c| split(g, c));
        }
        false
    }
    split(g, g.full())
}

/// Quartet scan up to 16 vertices, recursive split above. A negative answer
/// from the split is confirmed by exhibiting an induced P4.
pub fn is_p4_free(g: &Graph) -> bool {
    if g.n() <= 16 {
        return is_p4_free_quartets(g);
    }
    let free = is_p4_free_seinsche(g);
    if !free {
        assert!(find_induced_p4(g, g.full()).is_some(), "split rejected a graph with no induced P4");
    }
    free
}
