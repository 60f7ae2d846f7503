//! The class split that decides which certifying shapes apply to a tree.

use serde::{Deserialize, Serialize};

use super::{canonical_matching, matching_status, MatchingKind, Tree};
use crate::graph::{iter_mask, VertexMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainKind {
    SubdividedStars,
    SpikedStars,
}

/// Exactly one class per tree, with the data that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum TreeClass {
    SingleVertex,
    EdgeOnly,
    AlphaTwo,
    NoPmNotSubdividedStar,
    SubdividedStar { center: usize },
    PmGeneric,
    SpikedNotStar { base: Vec<usize> },
    SpikedStar { base: Vec<usize>, center: usize },
    DoublestarNotP6 { chain: (usize, usize), kind: ChainKind },
    P6,
}

impl TreeClass {
    pub fn name(&self) -> &'static str {
        match self {
            TreeClass::SingleVertex => "SingleVertex",
            TreeClass::EdgeOnly => "EdgeOnly",
            TreeClass::AlphaTwo => "AlphaTwo",
            TreeClass::NoPmNotSubdividedStar => "NoPmNotSubdividedStar",
            TreeClass::SubdividedStar { .. } => "SubdividedStar",
            TreeClass::PmGeneric => "PmGeneric",
            TreeClass::SpikedNotStar { .. } => "SpikedNotStar",
            TreeClass::SpikedStar { .. } => "SpikedStar",
            TreeClass::DoublestarNotP6 { .. } => "DoublestarNotP6",
            TreeClass::P6 => "P6",
        }
    }

    /// Classes with certifying shapes (`alpha >= 3`).
    pub fn is_certifiable(&self) -> bool {
        !matches!(self, TreeClass::SingleVertex | TreeClass::EdgeOnly | TreeClass::AlphaTwo)
    }
}

/// Every `v` such that `T - v` is an induced matching with `v` adjacent to
/// exactly one end of each edge. `K_1` is its own centre.
pub fn subdivided_star_centers(t: &Tree) -> Vec<usize> {
    if t.n() % 2 == 0 {
        return Vec::new();
    }
    (0..t.n())
        .filter(|&v| {
            let rest = t.full() & !(1 << v);
            t.graph().components_within(rest).into_iter().all(|c| {
                c.count_ones() == 2 && (t.neighbors(v) & c).count_ones() == 1
            })
        })
        .collect()
}

pub fn is_subdivided_star(t: &Tree) -> bool {
    !subdivided_star_centers(t).is_empty()
}

/// The tree a spiked tree is the spiking of: its non-leaves, or vertex 0 for
/// the single edge.
pub fn spiked_base(t: &Tree) -> Option<VertexMask> {
    let m = canonical_matching(t).ok()?;
    let leaves = t.leaves();
    if m.edges().iter().any(|&(u, v)| (leaves >> u | leaves >> v) & 1 == 0) {
        return None;
    }
    Some(if t.n() == 2 { 1 } else { t.full() & !leaves })
}

pub fn is_spiked(t: &Tree) -> bool {
    spiked_base(t).is_some()
}

/// `(base, centre of the base star)` for spiked stars.
pub fn is_spiked_star(t: &Tree) -> Option<(VertexMask, usize)> {
    let base = spiked_base(t)?;
    let inner = |v: usize| (t.neighbors(v) & base).count_ones();
    let non_leaves: Vec<usize> = iter_mask(base).filter(|&v| inner(v) > 1).collect();
    match non_leaves.len() {
        0 => Some((base, base.trailing_zeros() as usize)),
        1 => Some((base, non_leaves[0])),
        _ => None,
    }
}

/// Leaves adjacent to a maximum-degree vertex.
fn chaining_leaves(t: &Tree) -> VertexMask {
    let top = t.max_degree();
    iter_mask(t.leaves()).filter(|&l| iter_mask(t.neighbors(l)).any(|u| t.degree(u) == top)).fold(0, |m, l| m | 1 << l)
}

/// Splits at the first edge `ab` (lexicographic) whose removal leaves two
/// sides that chain into `t`: subdivided stars joined at centres, or spiked
/// stars (not both single edges) joined at leaves next to a maximum-degree
/// vertex.
pub fn chaining_decomposition(t: &Tree) -> Option<(ChainKind, (usize, usize))> {
    for (a, b) in t.edges() {
        let mut cut = *t.graph();
        cut.remove_edge(a, b);
        let side_a = crate::graph::Graph::components_within(&cut, t.full())
            .into_iter()
            .find(|c| c >> a & 1 == 1)
            .expect("component of a");
        let side_b = t.full() & !side_a;
        let (ga, la) = cut.induced(side_a);
        let (gb, lb) = cut.induced(side_b);
        let ta = Tree::from_graph(ga).expect("side of a tree is a tree");
        let tb = Tree::from_graph(gb).expect("side of a tree is a tree");
        let ia = la.iter().position(|&v| v == a).expect("a on its side");
        let ib = lb.iter().position(|&v| v == b).expect("b on its side");
        if subdivided_star_centers(&ta).contains(&ia) && subdivided_star_centers(&tb).contains(&ib) {
            return Some((ChainKind::SubdividedStars, (a, b)));
        }
        let both_edges = ta.n() == 2 && tb.n() == 2;
        if !both_edges
            && is_spiked_star(&ta).is_some()
            && is_spiked_star(&tb).is_some()
            && chaining_leaves(&ta) >> ia & 1 == 1
            && chaining_leaves(&tb) >> ib & 1 == 1
        {
            return Some((ChainKind::SpikedStars, (a, b)));
        }
    }
    None
}

pub fn classify(t: &Tree) -> TreeClass {
    let n = t.n();
    if n == 1 {
        return TreeClass::SingleVertex;
    }
    if n == 2 {
        return TreeClass::EdgeOnly;
    }
    if t.alpha() == 2 {
        return TreeClass::AlphaTwo;
    }
    if matching_status(t).1 != MatchingKind::Perfect {
        return match subdivided_star_centers(t).first() {
            Some(&center) => TreeClass::SubdividedStar { center },
            None => TreeClass::NoPmNotSubdividedStar,
        };
    }
    if let Some(base) = spiked_base(t) {
        let base_list = iter_mask(base).collect();
        return match is_spiked_star(t) {
            Some((_, center)) => TreeClass::SpikedStar { base: base_list, center },
            None => TreeClass::SpikedNotStar { base: base_list },
        };
    }
    if n == 6 && t.is_path() {
        return TreeClass::P6;
    }
    match chaining_decomposition(t) {
        Some((kind, chain)) => TreeClass::DoublestarNotP6 { chain, kind },
        None => TreeClass::PmGeneric,
    }
}
