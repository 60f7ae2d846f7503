//! Shape characterizations of certifying partitions, one per tree class.

use std::fmt;

use serde::Serialize;

use super::witness::witnessing_unchecked;
use super::{CertifyError, CertifyVerdict, Partition, MAX_SEARCH_HOST};
use crate::graph::{family_member_within, find_induced_p4, is_comatching, max_clique, Family, Graph, VertexMask};
use crate::tree::{classify, Tree, TreeClass};

/// The clause of a class characterization that a partition satisfies,
/// reported with the first part as the privileged one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CertificateCase {
    /// every part a clique
    Cliques,
    /// a stable part, the rest cliques
    StableAndCliques,
    /// one part in the given family, the rest cliques
    FamilyAndCliques(Family),
    /// two complements of matchings, the rest cliques
    CoMatchingPair,
    /// every part a complement of a matching
    AllCoMatching,
    /// a stable part and a complement of a matching
    StableAndCoMatching,
}

impl CertificateCase {
    pub fn label(&self) -> String {
        match self {
            CertificateCase::Cliques => "cliques".into(),
            CertificateCase::StableAndCliques => "stable+cliques".into(),
            CertificateCase::FamilyAndCliques(f) => format!("{}+cliques", f.name()),
            CertificateCase::CoMatchingPair => "comatching-pair+cliques".into(),
            CertificateCase::AllCoMatching => "all-comatching".into(),
            CertificateCase::StableAndCoMatching => "stable+comatching".into(),
        }
    }
}

impl fmt::Display for CertificateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Outcome of a shape characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeVerdict {
    pub holds: bool,
    pub case: Option<CertificateCase>,
    pub failing_condition: Option<String>,
}

/// First satisfied clause for `class`, checking every choice of privileged
/// part. `parts` must be nonempty.
pub fn certificate_case(g: &Graph, parts: &[VertexMask], class: &TreeClass) -> Option<CertificateCase> {
    let non_cliques: Vec<usize> = (0..parts.len()).filter(|&i| !g.is_clique_on(parts[i])).collect();
    if non_cliques.is_empty() {
        return Some(CertificateCase::Cliques);
    }
    let single = |test: &dyn Fn(VertexMask) -> bool| non_cliques.len() == 1 && test(parts[non_cliques[0]]);
    let family = |f: Family| {
        single(&|p| family_member_within(g, p, f)).then_some(CertificateCase::FamilyAndCliques(f))
    };
    match class {
        TreeClass::NoPmNotSubdividedStar => None,
        TreeClass::SubdividedStar { .. } => {
            single(&|p| g.is_stable_on(p)).then_some(CertificateCase::StableAndCliques)
        }
        TreeClass::PmGeneric => family(Family::F2),
        TreeClass::SpikedNotStar { .. } => {
            if non_cliques.len() <= 2 && non_cliques.iter().all(|&i| is_comatching(g, parts[i])) {
                Some(CertificateCase::CoMatchingPair)
            } else {
                family(Family::F6VertexCoMatching)
            }
        }
        TreeClass::SpikedStar { .. } => {
            if parts.iter().all(|&p| is_comatching(g, p)) {
                Some(CertificateCase::AllCoMatching)
            } else {
                family(Family::F5VertexMultipartite)
            }
        }
        TreeClass::DoublestarNotP6 { .. } => family(Family::F3),
        TreeClass::P6 => {
            if let Some(c) = family(Family::F4) {
                return Some(c);
            }
            let pair = parts.len() == 2
                && ((g.is_stable_on(parts[0]) && is_comatching(g, parts[1]))
                    || (g.is_stable_on(parts[1]) && is_comatching(g, parts[0])));
            pair.then_some(CertificateCase::StableAndCoMatching)
        }
        TreeClass::SingleVertex | TreeClass::EdgeOnly | TreeClass::AlphaTwo => None,
    }
}

fn failure_label(class: &TreeClass) -> &'static str {
    match class {
        TreeClass::NoPmNotSubdividedStar => "some part is not a clique",
        TreeClass::SubdividedStar { .. } => "not one stable or clique part with cliques elsewhere",
        TreeClass::PmGeneric => "not one F2 part with cliques elsewhere",
        TreeClass::SpikedNotStar { .. } => "neither two complements of matchings nor one F6 part with cliques elsewhere",
        TreeClass::SpikedStar { .. } => "neither all complements of matchings nor one F5 part with cliques elsewhere",
        TreeClass::DoublestarNotP6 { .. } => "not one F3 part with cliques elsewhere",
        TreeClass::P6 => "neither an F4 part beside a clique nor a stable part beside a complement of a matching",
        _ => "unsupported class",
    }
}

fn check_preconditions(g: &Graph, p: &Partition, t: &Tree) -> Result<TreeClass, CertifyError> {
    p.check_host(g)?;
    let class = classify(t);
    if !class.is_certifiable() {
        return Err(CertifyError::UnsupportedClass(class.name().into()));
    }
    let expected = t.alpha() - 1;
    if p.w() != expected {
        return Err(CertifyError::PartCountMismatch { expected, got: p.w() });
    }
    if let Some(i) = p.parts().iter().position(|&x| x == 0) {
        return Err(CertifyError::EmptyPart(i));
    }
    Ok(class)
}

/// Evaluates the shape characterization for the class of `t`. On interesting
/// partitions this agrees with the witnessing definition.
pub fn structural_certifying(g: &Graph, p: &Partition, t: &Tree) -> Result<ShapeVerdict, CertifyError> {
    let class = check_preconditions(g, p, t)?;
    let case = certificate_case(g, p.parts(), &class);
    Ok(ShapeVerdict {
        holds: case.is_some(),
        case,
        failing_condition: case.is_none().then(|| failure_label(&class).to_string()),
    })
}

/// The same disjunction without any size hypothesis. Every partition it
/// accepts is witnessing, so `g` is `t`-free.
pub fn sound_certifying(g: &Graph, p: &Partition, t: &Tree) -> Result<bool, CertifyError> {
    structural_certifying(g, p, t).map(|v| v.holds)
}

/// Result of the interesting-partition test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interesting {
    pub interesting: bool,
    /// The partition with a part of largest independence number first.
    pub reindexed: Partition,
    pub failing_condition: Option<String>,
}

fn alpha_within(g: &Graph, part: VertexMask) -> usize {
    max_clique(&g.complement(), part).count_ones() as usize
}

fn omega_within(g: &Graph, part: VertexMask) -> usize {
    max_clique(g, part).count_ones() as usize
}

/// Reindexes so that the first part has the largest independence number, then
/// requires a clique of `size_threshold` vertices in every later part, a
/// clique or stable set that large in the first, and `P_4`-free parts.
pub fn is_interesting(g: &Graph, p: &Partition, t: &Tree, size_threshold: usize) -> Result<Interesting, CertifyError> {
    p.check_host(g)?;
    let expected = t.alpha().saturating_sub(1).max(1);
    if p.w() != expected {
        return Err(CertifyError::PartCountMismatch { expected, got: p.w() });
    }
    if let Some(i) = p.parts().iter().position(|&x| x == 0) {
        return Err(CertifyError::EmptyPart(i));
    }
    let alphas: Vec<usize> = p.parts().iter().map(|&x| alpha_within(g, x)).collect();
    let first = (0..p.w()).max_by_key(|&i| (alphas[i], std::cmp::Reverse(i))).expect("w >= 1");
    let reindexed = p.with_first(first);
    let parts = reindexed.parts();
    let large_first = omega_within(g, parts[0]) >= size_threshold || alphas[first] >= size_threshold;
    let large_rest = parts[1..].iter().all(|&x| omega_within(g, x) >= size_threshold);
    let failing = if !(large_first && large_rest) {
        Some("large clique or stable set".to_string())
    } else if parts.iter().any(|&x| find_induced_p4(g, x).is_some()) {
        Some("p4-free".to_string())
    } else {
        None
    };
    Ok(Interesting { interesting: failing.is_none(), reindexed, failing_condition: failing })
}

/// What the certificate search must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// the size-free shape characterization
    Sound,
    /// the shape characterization on an interesting partition with the given
    /// clique/stable threshold
    Paper(usize),
}

/// Depth-first search over partitions into `w` nonempty parts in restricted
/// growth order; `visit` sees every partition whose parts are `P_4`-free and
/// whose non-clique count is within `max_nonclique`.
fn search_partitions(
    g: &Graph,
    w: usize,
    max_nonclique: usize,
    visit: &mut dyn FnMut(&[VertexMask]) -> bool,
) -> bool {
    fn go(
        g: &Graph,
        v: usize,
        parts: &mut Vec<VertexMask>,
        w: usize,
        max_nonclique: usize,
        visit: &mut dyn FnMut(&[VertexMask]) -> bool,
    ) -> bool {
        let n = g.n();
        if n - v < w - parts.len() {
            return false;
        }
        if v == n {
            return parts.len() == w && visit(parts);
        }
        for b in 0..parts.len().min(w - 1) + 1 {
            let fresh = b == parts.len();
            if fresh {
                parts.push(0);
            }
            let grown = parts[b] | 1 << v;
            let ok = find_induced_p4(g, grown).is_none() && {
                let was = parts[b];
                parts[b] = grown;
                let count = parts.iter().filter(|&&x| !g.is_clique_on(x)).count();
                parts[b] = was;
                count <= max_nonclique
            };
            if ok {
                let was = parts[b];
                parts[b] = grown;
                if go(g, v + 1, parts, w, max_nonclique, visit) {
                    return true;
                }
                parts[b] = was;
            }
            if fresh {
                parts.pop();
            }
        }
        false
    }
    go(g, 0, &mut Vec::with_capacity(w), w, max_nonclique, visit)
}

fn nonclique_budget(class: &TreeClass, w: usize) -> usize {
    match class {
        TreeClass::SpikedStar { .. } => w,
        TreeClass::SpikedNotStar { .. } | TreeClass::P6 => 2,
        _ => 1,
    }
}

fn search_setup(g: &Graph, t: &Tree) -> Result<(TreeClass, usize), CertifyError> {
    if g.n() > MAX_SEARCH_HOST {
        return Err(CertifyError::HostTooLarge(g.n()));
    }
    let class = classify(t);
    if !class.is_certifiable() {
        return Err(CertifyError::UnsupportedClass(class.name().into()));
    }
    Ok((class, t.alpha() - 1))
}

/// The first certifying partition in restricted-growth order, with the clause
/// it satisfies.
pub fn find_certifying(
    g: &Graph,
    t: &Tree,
    mode: SearchMode,
) -> Result<Option<(Partition, CertificateCase)>, CertifyError> {
    let (class, w) = search_setup(g, t)?;
    let mut found = None;
    search_partitions(g, w, nonclique_budget(&class, w), &mut |parts| {
        let Some(case) = certificate_case(g, parts, &class) else {
            return false;
        };
        let p = Partition::new(g.n(), parts.to_vec()).expect("search yields partitions");
        if let SearchMode::Paper(threshold) = mode {
            if !is_interesting(g, &p, t, threshold).map(|i| i.interesting).unwrap_or(false) {
                return false;
            }
        }
        found = Some((p, case));
        true
    });
    Ok(found)
}

/// The first certificate (as in [`find_certifying`], sound mode) and the
/// number of unordered partitions into `alpha - 1` nonempty parts that pass.
pub fn count_certifying(g: &Graph, t: &Tree) -> Result<(Option<(Partition, CertificateCase)>, u64), CertifyError> {
    let (class, w) = search_setup(g, t)?;
    let mut first = None;
    let mut count = 0u64;
    search_partitions(g, w, nonclique_budget(&class, w), &mut |parts| {
        if let Some(case) = certificate_case(g, parts, &class) {
            count += 1;
            if first.is_none() {
                first = Some((Partition::new(g.n(), parts.to_vec()).expect("partition"), case));
            }
        }
        false
    });
    Ok((first, count))
}

/// Every verdict for one triple; the interesting test uses `size_threshold`.
pub fn certify(g: &Graph, p: &Partition, t: &Tree, size_threshold: usize) -> Result<CertifyVerdict, CertifyError> {
    if t.n() > super::MAX_PATTERN_VERTICES {
        return Err(CertifyError::PatternTooLarge(t.n()));
    }
    let shape = structural_certifying(g, p, t)?;
    let interesting = is_interesting(g, p, t, size_threshold)?;
    let witness = witnessing_unchecked(g, p.parts(), t.graph());
    let failing_condition = shape.failing_condition.or(interesting.failing_condition);
    Ok(CertifyVerdict {
        witnessing: witness.witnessing,
        structural: shape.holds,
        interesting: interesting.interesting,
        failing_assignment: witness.failing_assignment,
        failing_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::is_witnessing;
    use crate::graph::{induced_embedding, named};

    fn two(g: &Graph, a: VertexMask) -> Partition {
        Partition::new(g.n(), vec![a, g.full() & !a]).unwrap()
    }

    #[test]
    fn shape_examples() {
        let p5 = Tree::path(5);
        let g = named::empty(3).join(&named::complete(3)).unwrap();
        assert!(sound_certifying(&g, &two(&g, 0b000111), &p5).unwrap());

        let m6 = Tree::m6();
        let c4 = named::cycle(4);
        let g = c4.join(&c4).unwrap();
        let v = structural_certifying(&g, &two(&g, 0x0f), &m6).unwrap();
        assert_eq!(v.case, Some(CertificateCase::AllCoMatching));
        assert!(induced_embedding(m6.graph(), &g).is_none());

        // P6 with a P4 complement component in the first part
        let p6 = Tree::path(6);
        let g = named::path(4).join(&named::complete(3)).unwrap();
        let v = structural_certifying(&g, &two(&g, 0b0001111), &p6).unwrap();
        assert!(!v.holds);
        assert!(v.failing_condition.is_some());
    }

    #[test]
    fn preconditions() {
        let g = named::complete(4);
        let p = two(&g, 0b0011);
        assert!(matches!(structural_certifying(&g, &p, &Tree::path(4)), Err(CertifyError::UnsupportedClass(_))));
        let one = Partition::new(4, vec![0b1111]).unwrap();
        assert!(matches!(
            structural_certifying(&g, &one, &Tree::m6()),
            Err(CertifyError::PartCountMismatch { expected: 2, got: 1 })
        ));
        let hollow = Partition::new(4, vec![0b1111, 0]).unwrap();
        assert_eq!(structural_certifying(&g, &hollow, &Tree::m6()), Err(CertifyError::EmptyPart(1)));
    }

    /// `P_3` is the complement of a matching, so splitting `C_6` into two
    /// paths certifies `M_6`-freeness; every other split fails.
    #[test]
    fn c6_certificates_for_m6() {
        let c6 = named::cycle(6);
        let m6 = Tree::m6();
        let mut passing = Vec::new();
        for a in 1u64..63 {
            let p = two(&c6, a);
            if sound_certifying(&c6, &p, &m6).unwrap() {
                assert!(is_witnessing(&c6, &p, m6.graph()).unwrap().witnessing);
                passing.push(a);
            }
        }
        assert_eq!(passing, vec![0b000111, 0b001110, 0b011100, 0b100011, 0b110001, 0b111000]);
        let (p, case) = find_certifying(&c6, &m6, SearchMode::Sound).unwrap().unwrap();
        assert_eq!((p.part(0), case), (0b000111, CertificateCase::AllCoMatching));
        assert_eq!(count_certifying(&c6, &m6).unwrap().1, 3);
    }

    #[test]
    fn search_examples() {
        let k7 = named::complete(7);
        let (p, case) = find_certifying(&k7, &Tree::path(5), SearchMode::Sound).unwrap().unwrap();
        assert_eq!(case, CertificateCase::Cliques);
        assert_eq!(p.w(), 2);

        let g = named::co_matching(3).join(&named::complete(3)).unwrap();
        let m6 = Tree::m6();
        let (p, _) = find_certifying(&g, &m6, SearchMode::Sound).unwrap().unwrap();
        assert!(is_witnessing(&g, &p, m6.graph()).unwrap().witnessing);
        assert!(induced_embedding(m6.graph(), &g).is_none());

        assert!(matches!(
            find_certifying(&named::complete(25), &m6, SearchMode::Sound),
            Err(CertifyError::HostTooLarge(25))
        ));
    }

    #[test]
    fn interesting_examples() {
        let m6 = Tree::m6();
        let k12 = named::complete(12);
        assert!(is_interesting(&k12, &two(&k12, 0x3f), &m6, 6).unwrap().interesting);

        let g = named::path(4).join(&named::complete(6)).unwrap();
        let i = is_interesting(&g, &two(&g, 0b1111), &m6, 2).unwrap();
        assert!(!i.interesting);
        assert_eq!(i.failing_condition.as_deref(), Some("p4-free"));

        let blob = named::cycle(4).join(&named::cycle(4)).unwrap();
        let i = is_interesting(&blob, &two(&blob, 0x0f), &m6, 6).unwrap();
        assert!(!i.interesting);

        // the part with the larger stable set moves to the front
        let g = named::complete(3).disjoint_union(&named::empty(3)).unwrap();
        let i = is_interesting(&g, &two(&g, 0b000111), &m6, 3).unwrap();
        assert_eq!(i.reindexed.parts(), &[0b111000, 0b000111]);
    }

    #[test]
    fn certify_collects_everything() {
        let m6 = Tree::m6();
        let c6 = named::cycle(6);
        let v = certify(&c6, &two(&c6, 0b010101), &m6, 6).unwrap();
        assert!(!v.witnessing && !v.structural && !v.interesting);
        assert!(v.failing_assignment.is_some());
        let json = serde_json::to_value(&v).unwrap();
        for key in ["witnessing", "structural", "interesting", "failing_assignment", "failing_condition"] {
            assert!(json.get(key).is_some());
        }
    }
}
