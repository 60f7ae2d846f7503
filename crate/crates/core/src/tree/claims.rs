//! Explicit partitions of trees into small shapes.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::matching::forest_matching;
use super::{
    canonical_matching, is_spiked, is_spiked_star, is_subdivided_star, matching_status, near_perfect_with_leaf,
    chaining_decomposition, MatchingKind, Tree, TreeError,
};
use crate::graph::{for_each_induced_copy, induced_embedding, is_isomorphic, iter_mask, named, Graph, VertexMask};

/// Exact shape of one part of a tree partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeTag {
    /// A vertex or an edge.
    Clique,
    Stable(usize),
    Edge,
    P3,
    CoP3,
    P4,
    TwoK2,
    K2PlusS2,
    P3PlusS1,
    /// Any nonempty induced subgraph of `P_4`.
    P4Fragment,
}

impl ShapeTag {
    fn pattern(self) -> Option<Graph> {
        let with_isolated = |g: Graph, k: usize| g.disjoint_union(&named::empty(k)).expect("small");
        Some(match self {
            ShapeTag::Clique | ShapeTag::P4Fragment => return None,
            ShapeTag::Stable(k) => named::empty(k),
            ShapeTag::Edge => named::complete(2),
            ShapeTag::P3 => named::path(3),
            ShapeTag::CoP3 => with_isolated(named::complete(2), 1),
            ShapeTag::P4 => named::path(4),
            ShapeTag::TwoK2 => named::matching(2),
            ShapeTag::K2PlusS2 => with_isolated(named::complete(2), 2),
            ShapeTag::P3PlusS1 => with_isolated(named::path(3), 1),
        })
    }

    /// Whether `g[part]` has exactly this shape.
    pub fn matches(self, g: &Graph, part: VertexMask) -> bool {
        if part == 0 {
            return false;
        }
        match self {
            ShapeTag::Clique => g.is_clique_on(part),
            ShapeTag::P4Fragment => {
                part.count_ones() <= 4 && induced_embedding(&g.induced(part).0, &named::path(4)).is_some()
            }
            tag => is_isomorphic(&g.induced(part).0, &tag.pattern().expect("exact tag")),
        }
    }
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::Clique => write!(f, "clique"),
            ShapeTag::Stable(k) => write!(f, "S{k}"),
            ShapeTag::Edge => write!(f, "K2"),
            ShapeTag::P3 => write!(f, "P3"),
            ShapeTag::CoP3 => write!(f, "coP3"),
            ShapeTag::P4 => write!(f, "P4"),
            ShapeTag::TwoK2 => write!(f, "2K2"),
            ShapeTag::K2PlusS2 => write!(f, "K2+S2"),
            ShapeTag::P3PlusS1 => write!(f, "P3+S1"),
            ShapeTag::P4Fragment => write!(f, "P4frag"),
        }
    }
}

impl FromStr for ShapeTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Ok(match s {
            "clique" => ShapeTag::Clique,
            "K2" => ShapeTag::Edge,
            "P3" => ShapeTag::P3,
            "coP3" => ShapeTag::CoP3,
            "P4" => ShapeTag::P4,
            "2K2" => ShapeTag::TwoK2,
            "K2+S2" => ShapeTag::K2PlusS2,
            "P3+S1" => ShapeTag::P3PlusS1,
            "P4frag" => ShapeTag::P4Fragment,
            _ => match s.strip_prefix('S').and_then(|k| k.parse().ok()) {
                Some(k) if k > 0 => ShapeTag::Stable(k),
                _ => return Err(format!("unknown shape tag {s:?}")),
            },
        })
    }
}

/// An ordered pair of part shapes, written `(A,B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCode(pub ShapeTag, pub ShapeTag);

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl FromStr for PairCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("pair code {s:?} must look like (A,B)"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("pair code {s:?} needs two shapes"))?;
        Ok(PairCode(a.parse()?, b.parse()?))
    }
}

use ShapeTag::{CoP3, Edge, K2PlusS2, P3PlusS1, Stable, TwoK2, P3, P4};

pub const M6_PAIRS: [PairCode; 10] = [
    PairCode(P3, CoP3),
    PairCode(CoP3, CoP3),
    PairCode(Stable(3), Stable(3)),
    PairCode(Stable(3), CoP3),
    PairCode(Stable(3), P3),
    PairCode(Edge, P4),
    PairCode(Edge, TwoK2),
    PairCode(Edge, K2PlusS2),
    PairCode(Stable(2), P4),
    PairCode(Stable(2), K2PlusS2),
];

pub const P6_PAIRS: [PairCode; 11] = [
    PairCode(P3, P3),
    PairCode(P3, CoP3),
    PairCode(CoP3, CoP3),
    PairCode(Stable(3), Stable(3)),
    PairCode(Stable(3), CoP3),
    PairCode(Edge, P4),
    PairCode(Edge, TwoK2),
    PairCode(Edge, P3PlusS1),
    PairCode(Stable(2), P4),
    PairCode(Stable(2), TwoK2),
    PairCode(Stable(2), P3PlusS1),
];

/// Pairs available in every tree with a perfect matching and at least six
/// vertices.
pub const PARTCALL_PAIRS: [PairCode; 7] = [
    PairCode(P3, CoP3),
    PairCode(CoP3, CoP3),
    PairCode(Stable(3), Stable(3)),
    PairCode(Stable(3), CoP3),
    PairCode(Edge, P4),
    PairCode(Edge, TwoK2),
    PairCode(Stable(2), P4),
];

pub const P8_PAIRS: [PairCode; 2] = [PairCode(P3, Stable(3)), PairCode(Edge, K2PlusS2)];

/// Which explicit construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// two stable sets
    PartAllA,
    /// `alpha` cliques
    PartAllB,
    /// a stable set of size at most two and `alpha - 1` cliques
    PartAllC,
    /// an induced subgraph of `P_4` and `alpha - 2` cliques
    PartAllD,
    /// an induced subgraph of `P_4`, `alpha - 3` cliques and a stable set of
    /// size at most two
    PartAllE,
    /// `S_2` and `alpha - 2` cliques, no perfect or near-perfect matching
    NoNearPmS2,
    /// `P_3` and `alpha - 2` cliques, no perfect matching
    NoPmP3,
    NearPmP3,
    NearPmCoP3,
    /// `S_3` and `alpha - 2` cliques, near-perfect matching, not a subdivided star
    NearPmS3,
    M6Pair(PairCode),
    P6Pair(PairCode),
    /// a pair from [`PARTCALL_PAIRS`] and `alpha - 3` edges
    PmPair(PairCode),
    /// a pair from [`P8_PAIRS`] and `alpha - 3` edges, even paths of eight or more vertices
    P8Pair(PairCode),
    /// `S_4` and `alpha - 2` edges
    S4,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::PartAllA => write!(f, "part-all-a"),
            Scheme::PartAllB => write!(f, "part-all-b"),
            Scheme::PartAllC => write!(f, "part-all-c"),
            Scheme::PartAllD => write!(f, "part-all-d"),
            Scheme::PartAllE => write!(f, "part-all-e"),
            Scheme::NoNearPmS2 => write!(f, "no-near-pm-s2"),
            Scheme::NoPmP3 => write!(f, "no-pm-p3"),
            Scheme::NearPmP3 => write!(f, "near-pm-p3"),
            Scheme::NearPmCoP3 => write!(f, "near-pm-cop3"),
            Scheme::NearPmS3 => write!(f, "near-pm-s3"),
            Scheme::M6Pair(c) => write!(f, "m6-pair{c}"),
            Scheme::P6Pair(c) => write!(f, "p6-pair{c}"),
            Scheme::PmPair(c) => write!(f, "pm-pair{c}"),
            Scheme::P8Pair(c) => write!(f, "p8-pair{c}"),
            Scheme::S4 => write!(f, "s4"),
        }
    }
}

impl Scheme {
    /// Schemes without a pair parameter followed by every pair variant.
    pub fn all() -> Vec<Scheme> {
        let mut out = vec![
            Scheme::PartAllA,
            Scheme::PartAllB,
            Scheme::PartAllC,
            Scheme::PartAllD,
            Scheme::PartAllE,
            Scheme::NoNearPmS2,
            Scheme::NoPmP3,
            Scheme::NearPmP3,
            Scheme::NearPmCoP3,
            Scheme::NearPmS3,
        ];
        out.extend(M6_PAIRS.iter().map(|&c| Scheme::M6Pair(c)));
        out.extend(P6_PAIRS.iter().map(|&c| Scheme::P6Pair(c)));
        out.extend(PARTCALL_PAIRS.iter().map(|&c| Scheme::PmPair(c)));
        out.extend(P8_PAIRS.iter().map(|&c| Scheme::P8Pair(c)));
        out.push(Scheme::S4);
        out
    }

    /// `Err(reason)` when `t` does not satisfy the scheme's hypothesis.
    pub fn hypothesis(&self, t: &Tree) -> Result<(), String> {
        let n = t.n();
        let kind = matching_status(t).1;
        let alpha = t.alpha();
        let need = |ok: bool, why: &str| if ok { Ok(()) } else { Err(why.to_string()) };
        need(n >= 4, "at least four vertices")?;
        match self {
            Scheme::PartAllA | Scheme::PartAllB | Scheme::PartAllC | Scheme::PartAllD => Ok(()),
            Scheme::PartAllE => need(alpha > 2, "alpha greater than two"),
            Scheme::NoNearPmS2 => need(kind == MatchingKind::Neither, "no perfect or near-perfect matching"),
            Scheme::NoPmP3 => need(kind != MatchingKind::Perfect, "no perfect matching"),
            Scheme::NearPmP3 | Scheme::NearPmCoP3 => need(kind == MatchingKind::NearPerfect, "near-perfect matching"),
            Scheme::NearPmS3 => {
                need(kind == MatchingKind::NearPerfect, "near-perfect matching")?;
                need(!is_subdivided_star(t), "not a subdivided star")
            }
            Scheme::M6Pair(c) => {
                need(M6_PAIRS.contains(c), "pair from the M6 list")?;
                need(kind == MatchingKind::Perfect, "perfect matching")?;
                need(!t.is_path(), "not a path")
            }
            Scheme::P6Pair(c) => {
                need(P6_PAIRS.contains(c), "pair from the P6 list")?;
                need(kind == MatchingKind::Perfect, "perfect matching")?;
                need(!is_spiked(t), "not spiked")
            }
            Scheme::PmPair(c) => {
                need(PARTCALL_PAIRS.contains(c), "pair available in every perfect-matching tree")?;
                need(kind == MatchingKind::Perfect, "perfect matching")?;
                need(n >= 6, "at least six vertices")
            }
            Scheme::P8Pair(c) => {
                need(P8_PAIRS.contains(c), "pair from the even-path list")?;
                need(t.is_path() && n % 2 == 0 && n >= 8, "even path on at least eight vertices")
            }
            Scheme::S4 => {
                need(kind == MatchingKind::Perfect, "perfect matching")?;
                need(is_spiked_star(t).is_none(), "not a spiked star")?;
                need(!is_doublestar(t), "not a doublestar")
            }
        }
    }

    /// Number of parts the construction produces.
    pub fn part_count(&self, t: &Tree) -> usize {
        let a = t.alpha();
        match self {
            Scheme::PartAllA => 2,
            Scheme::PartAllB | Scheme::PartAllC => a,
            Scheme::PartAllD | Scheme::NoNearPmS2 | Scheme::NoPmP3 => a - 1,
            Scheme::NearPmP3 | Scheme::NearPmCoP3 | Scheme::NearPmS3 => a - 1,
            Scheme::PartAllE => a - 1,
            Scheme::M6Pair(_) | Scheme::P6Pair(_) | Scheme::PmPair(_) | Scheme::P8Pair(_) => a - 1,
            Scheme::S4 => a - 1,
        }
    }

    pub fn applicable(t: &Tree) -> Vec<Scheme> {
        Scheme::all().into_iter().filter(|s| s.hypothesis(t).is_ok()).collect()
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(i) = s.find('(') {
            let code: PairCode = s[i..].parse()?;
            return match &s[..i] {
                "m6-pair" => Ok(Scheme::M6Pair(code)),
                "p6-pair" => Ok(Scheme::P6Pair(code)),
                "pm-pair" => Ok(Scheme::PmPair(code)),
                "p8-pair" => Ok(Scheme::P8Pair(code)),
                other => Err(format!("unknown pair scheme {other:?}")),
            };
        }
        Scheme::all()
            .into_iter()
            .find(|sch| sch.to_string() == s)
            .ok_or_else(|| format!("unknown scheme {s:?}"))
    }
}

fn is_doublestar(t: &Tree) -> bool {
    chaining_decomposition(t).is_some()
}

/// Ordered parts covering `V(T)`, each with the exact shape it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    pub parts: Vec<VertexMask>,
    pub shapes: Vec<ShapeTag>,
    pub pair: Option<PairCode>,
}

impl TreePartition {
    /// Parts are nonempty, disjoint, cover the tree, and match their tags.
    pub fn verify(&self, t: &Tree) -> bool {
        let mut seen = 0u64;
        for (&p, &s) in self.parts.iter().zip(&self.shapes) {
            if p == 0 || p & seen != 0 || !s.matches(t.graph(), p) {
                return false;
            }
            seen |= p;
        }
        self.parts.len() == self.shapes.len() && seen == t.full()
    }
}

impl Serialize for TreePartition {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<Vec<usize>> = self.parts.iter().map(|&p| iter_mask(p).collect()).collect();
        let shapes: Vec<String> = self.shapes.iter().map(|s| s.to_string()).collect();
        let mut st = ser.serialize_struct("TreePartition", 3)?;
        st.serialize_field("parts", &parts)?;
        st.serialize_field("shapes", &shapes)?;
        st.serialize_field("pair", &self.pair.map(|p| p.to_string()))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy)]
enum Special {
    Exact(ShapeTag),
    StableAtMost(usize),
    Fragment,
}

#[derive(Debug, Clone, Copy)]
enum Rest {
    Cliques(usize),
    Edges(usize),
}

fn candidates(g: &Graph, avail: VertexMask, spec: Special) -> Vec<(VertexMask, ShapeTag)> {
    let copies = |tag: ShapeTag| -> BTreeSet<VertexMask> {
        let pattern = tag.pattern().expect("exact tag");
        let mut found = BTreeSet::new();
        let _ = for_each_induced_copy(&pattern, g, avail, |map| {
            found.insert(map.iter().fold(0u64, |m, &v| m | 1 << v));
            ControlFlow::Continue(())
        });
        found
    };
    match spec {
        Special::Exact(tag) => copies(tag).into_iter().map(|m| (m, tag)).collect(),
        Special::StableAtMost(k) => (1..=k).flat_map(|s| copies(Stable(s))).map(|m| (m, Stable(m.count_ones() as usize))).collect(),
        Special::Fragment => {
            let mut all = BTreeSet::new();
            for tag in [P4, P3, CoP3, Edge, Stable(2), Stable(1)] {
                all.extend(copies(tag));
            }
            all.into_iter().map(|m| (m, ShapeTag::P4Fragment)).collect()
        }
    }
}

fn split_rest(g: &Graph, rest: VertexMask, need: Rest) -> Option<Vec<(VertexMask, ShapeTag)>> {
    let matching = forest_matching(g, rest);
    let size = rest.count_ones() as usize;
    match need {
        Rest::Edges(k) => {
            if size != 2 * k || matching.len() != k {
                return None;
            }
            Some(matching.iter().map(|&(u, v)| (1u64 << u | 1 << v, Edge)).collect())
        }
        Rest::Cliques(k) => {
            let min = size - matching.len();
            if k < min || k > size {
                return None;
            }
            let mut splits = k - min;
            let mut parts = Vec::with_capacity(k);
            let matched = matching.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
            for &(u, v) in &matching {
                if splits > 0 {
                    parts.push(1u64 << u);
                    parts.push(1u64 << v);
                    splits -= 1;
                } else {
                    parts.push(1u64 << u | 1 << v);
                }
            }
            parts.extend(iter_mask(rest & !matched).map(|v| 1u64 << v));
            parts.sort_unstable_by_key(|p| p.trailing_zeros());
            Some(parts.into_iter().map(|p| (p, ShapeTag::Clique)).collect())
        }
    }
}

/// First (in candidate order) choice of disjoint special parts inside `within`
/// whose remainder splits as `rest`.
fn search(g: &Graph, within: VertexMask, specials: &[Special], rest: Rest) -> Option<Vec<(VertexMask, ShapeTag)>> {
    let Some((&first, others)) = specials.split_first() else {
        return split_rest(g, within, rest);
    };
    for (mask, tag) in candidates(g, within, first) {
        if let Some(mut tail) = search(g, within & !mask, others, rest) {
            tail.insert(0, (mask, tag));
            return Some(tail);
        }
    }
    None
}

fn assemble(parts: Vec<(VertexMask, ShapeTag)>, pair: Option<PairCode>) -> TreePartition {
    let (parts, shapes) = parts.into_iter().unzip();
    TreePartition { parts, shapes, pair }
}

/// `M_T` edges other than those meeting `used`, as edge parts.
fn matching_edges_outside(t: &Tree, used: VertexMask) -> Vec<(VertexMask, ShapeTag)> {
    let m = canonical_matching(t).expect("perfect matching");
    m.edges()
        .into_iter()
        .map(|(u, v)| 1u64 << u | 1 << v)
        .filter(|e| e & used == 0)
        .map(|e| (e, Edge))
        .collect()
}

/// Splits the six vertices of `triple` into the shapes of `code` and adds the
/// remaining `M_T` edges.
fn pair_on_triple(t: &Tree, triple: [(usize, usize); 3], code: PairCode) -> Option<TreePartition> {
    let six = triple.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
    let mut parts = search(t.graph(), six, &[Special::Exact(code.0), Special::Exact(code.1)], Rest::Edges(0))?;
    parts.extend(matching_edges_outside(t, six));
    Some(assemble(parts, Some(code)))
}

/// Builds the partition for `scheme`; the result always passes
/// [`TreePartition::verify`] and has [`Scheme::part_count`] parts.
pub fn claim_partition(t: &Tree, scheme: Scheme) -> Result<TreePartition, TreeError> {
    scheme.hypothesis(t).map_err(TreeError::HypothesisNotMet)?;
    let g = t.graph();
    let alpha = t.alpha();
    let (m, kind) = matching_status(t);
    let max_cliques = || -> Vec<(VertexMask, ShapeTag)> { split_rest(g, t.full(), Rest::Cliques(alpha)).expect("alpha cliques") };
    // an edge bc outside M_T whose ends are matched to a and d: a-b-c-d is an induced P4
    let joined_pair = || -> [usize; 4] {
        let (b, c) = t
            .edges()
            .into_iter()
            .find(|&(b, c)| m.mate(b) != Some(c))
            .expect("a perfect-matching tree on four or more vertices has an edge outside M_T");
        [m.mate(b).unwrap(), b, c, m.mate(c).unwrap()]
    };
    let failed = || TreeError::HypothesisNotMet(format!("no {scheme} partition exists"));
    let out = match scheme {
        Scheme::PartAllA => {
            let mut side = 0u64;
            let mut frontier = 1u64;
            let mut seen = 1u64;
            let mut depth = 0;
            while frontier != 0 {
                if depth % 2 == 0 {
                    side |= frontier;
                }
                let next = iter_mask(frontier).fold(0u64, |acc, v| acc | t.neighbors(v)) & !seen;
                seen |= next;
                frontier = next;
                depth += 1;
            }
            let other = t.full() & !side;
            assemble(
                vec![(side, Stable(side.count_ones() as usize)), (other, Stable(other.count_ones() as usize))],
                None,
            )
        }
        Scheme::PartAllB => assemble(max_cliques(), None),
        Scheme::PartAllC | Scheme::PartAllD if kind != MatchingKind::Perfect => {
            let u = m.missed().trailing_zeros() as usize;
            let mut rest: Vec<_> = max_cliques().into_iter().filter(|&(p, _)| p != 1 << u).collect();
            if scheme == Scheme::PartAllC {
                rest.insert(0, (1 << u, Stable(1)));
            } else {
                let (other, _) = rest.remove(0);
                rest.insert(0, (other | 1 << u, ShapeTag::P4Fragment));
            }
            assemble(rest, None)
        }
        Scheme::PartAllC | Scheme::PartAllD => {
            let [a, b, c, d] = joined_pair();
            let quad = 1u64 << a | 1 << b | 1 << c | 1 << d;
            let mut parts = if scheme == Scheme::PartAllC {
                vec![(1u64 << a | 1 << d, Stable(2)), (1u64 << b | 1 << c, ShapeTag::Clique)]
            } else {
                vec![(quad, ShapeTag::P4Fragment)]
            };
            parts.extend(matching_edges_outside(t, quad).into_iter().map(|(e, _)| (e, ShapeTag::Clique)));
            assemble(parts, None)
        }
        Scheme::PartAllE => {
            let parts = search(g, t.full(), &[Special::Fragment, Special::StableAtMost(2)], Rest::Cliques(alpha - 3))
                .ok_or_else(failed)?;
            assemble(parts, None)
        }
        Scheme::NoNearPmS2 => {
            let missed: Vec<usize> = iter_mask(m.missed()).take(2).collect();
            let pair = 1u64 << missed[0] | 1 << missed[1];
            let mut parts = vec![(pair, Stable(2))];
            parts.extend(max_cliques().into_iter().filter(|&(p, _)| p & pair == 0));
            assemble(parts, None)
        }
        Scheme::NoPmP3 => {
            let u = m.missed().trailing_zeros() as usize;
            let w = t.neighbors(u).trailing_zeros() as usize;
            let x = m.mate(w).expect("neighbours of unmatched vertices are matched");
            let p3 = 1u64 << u | 1 << w | 1 << x;
            let mut parts = vec![(p3, P3)];
            parts.extend(max_cliques().into_iter().filter(|&(p, _)| p & p3 == 0));
            assemble(parts, None)
        }
        Scheme::NearPmP3 | Scheme::NearPmCoP3 => {
            let nm = near_perfect_with_leaf(t)?;
            let l = nm.missed().trailing_zeros() as usize;
            let p = t.neighbors(l).trailing_zeros() as usize;
            let q = nm.mate(p).expect("the neighbour of the missed leaf is matched");
            let lpq = 1u64 << l | 1 << p | 1 << q;
            let edges: Vec<VertexMask> = nm.edges().into_iter().map(|(u, v)| 1u64 << u | 1 << v).filter(|&e| e >> p & 1 == 0).collect();
            let mut parts = Vec::new();
            if scheme == Scheme::NearPmP3 {
                parts.push((lpq, P3));
                parts.extend(edges.into_iter().map(|e| (e, ShapeTag::Clique)));
            } else {
                let xy = *edges.first().ok_or_else(failed)?;
                parts.push((xy | 1 << l, CoP3));
                parts.push((1u64 << p | 1 << q, ShapeTag::Clique));
                parts.extend(edges.into_iter().filter(|&e| e != xy).map(|e| (e, ShapeTag::Clique)));
            }
            assemble(parts, None)
        }
        Scheme::NearPmS3 => {
            let parts = search(g, t.full(), &[Special::Exact(Stable(3))], Rest::Cliques(alpha - 2)).ok_or_else(failed)?;
            assemble(parts, None)
        }
        Scheme::M6Pair(code) => pair_on_triple(t, find_induced_m6(t)?, code).ok_or_else(failed)?,
        Scheme::P6Pair(code) => pair_on_triple(t, find_induced_p6(t)?, code).ok_or_else(failed)?,
        Scheme::PmPair(code) => {
            let triple = if t.is_path() { find_induced_p6(t)? } else { find_induced_m6(t)? };
            pair_on_triple(t, triple, code).ok_or_else(failed)?
        }
        Scheme::P8Pair(code) => {
            let order = t.path_order().expect("path");
            let head = order[..8].iter().fold(0u64, |m, &v| m | 1 << v);
            let mut parts = search(g, head, &[Special::Exact(code.0), Special::Exact(code.1)], Rest::Edges(1)).ok_or_else(failed)?;
            parts.extend(order[8..].chunks(2).map(|c| (1u64 << c[0] | 1 << c[1], Edge)));
            assemble(parts, Some(code))
        }
        Scheme::S4 => s4_search(t).ok_or_else(failed)?,
    };
    assert!(out.verify(t), "{scheme} produced an invalid partition for {t:?}");
    assert_eq!(out.parts.len(), scheme.part_count(t), "{scheme} part count for {t:?}");
    Ok(out)
}

fn s4_search(t: &Tree) -> Option<TreePartition> {
    let alpha = t.alpha();
    if alpha < 2 {
        return None;
    }
    search(t.graph(), t.full(), &[Special::Exact(Stable(4))], Rest::Edges(alpha - 2)).map(|p| assemble(p, None))
}

/// A partition into `S_4` and `alpha - 2` edges, decided by exhaustive search.
pub fn s4_partition(t: &Tree) -> Result<Option<TreePartition>, TreeError> {
    canonical_matching(t)?;
    Ok(s4_search(t))
}

fn edge_of(m: &super::Matching, v: usize) -> (usize, usize) {
    let u = m.mate(v).expect("perfect matching");
    (v.min(u), v.max(u))
}

fn sorted_triple(mut e: [(usize, usize); 3]) -> [(usize, usize); 3] {
    e.sort_unstable();
    e
}

/// Three `M_T` edges inducing `M_6`: the matching edge at the lowest vertex of
/// degree at least three and the matching edges at two of its other neighbours.
pub fn find_induced_m6(t: &Tree) -> Result<[(usize, usize); 3], TreeError> {
    let m = canonical_matching(t)?;
    if t.is_path() {
        return Err(TreeError::HypothesisNotMet("not a path".into()));
    }
    let v = (0..t.n()).find(|&v| t.degree(v) >= 3).expect("non-path tree has a vertex of degree three");
    let u = m.mate(v).expect("perfect matching");
    let mut others = iter_mask(t.neighbors(v) & !(1 << u));
    let (x, y) = (others.next().unwrap(), others.next().unwrap());
    let triple = sorted_triple([edge_of(&m, v), edge_of(&m, x), edge_of(&m, y)]);
    assert!(induces(t, &triple, &named::m6()), "M6 recipe failed on {t:?}");
    Ok(triple)
}

/// Three `M_T` edges inducing `P_6`, centred on the lowest `M_T` edge with no
/// leaf end.
pub fn find_induced_p6(t: &Tree) -> Result<[(usize, usize); 3], TreeError> {
    let m = canonical_matching(t)?;
    let (v, u) = m
        .edges()
        .into_iter()
        .find(|&(v, u)| !t.is_leaf(v) && !t.is_leaf(u))
        .ok_or_else(|| TreeError::HypothesisNotMet("not spiked".into()))?;
    let x = iter_mask(t.neighbors(v) & !(1 << u)).next().expect("v is not a leaf");
    let y = iter_mask(t.neighbors(u) & !(1 << v)).next().expect("u is not a leaf");
    let triple = sorted_triple([(v, u), edge_of(&m, x), edge_of(&m, y)]);
    assert!(induces(t, &triple, &named::path(6)), "P6 recipe failed on {t:?}");
    Ok(triple)
}

fn induces(t: &Tree, triple: &[(usize, usize); 3], pattern: &Graph) -> bool {
    let six = triple.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
    six.count_ones() == 6 && is_isomorphic(&t.graph().induced(six).0, pattern)
}

/// Whether one star subgraph and `alpha - 2` cliques cover `V(T)`. Taking the
/// full closed neighbourhood as the star is never worse, and a forest needs
/// `|F| - nu(F)` cliques.
pub fn star_cover_exists(t: &Tree) -> bool {
    let Some(budget) = t.alpha().checked_sub(2) else {
        return false;
    };
    (0..t.n()).any(|c| {
        let rest = t.full() & !t.neighbors(c) & !(1 << c);
        let cover = rest.count_ones() as usize - forest_matching(t.graph(), rest).len();
        cover <= budget
    })
}
