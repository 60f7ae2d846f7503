//! Planted instances on large hosts: the shape characterization and the
//! witnessing definition must agree on every interesting partition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CensusError, SCHEMA_VERSION};
use crate::certify::{is_interesting, is_witnessing, structural_certifying, CertificateCase, CertifyError, Partition};
use crate::graph::{Family, Graph, VertexMask};
use crate::io::to_graph6;
use crate::tree::{canonical_code, classify, Tree, TreeClass};

/// Clauses of the characterization for `class`, any of which may be planted.
fn plantable(class: &TreeClass) -> Vec<CertificateCase> {
    use CertificateCase::*;
    match class {
        TreeClass::NoPmNotSubdividedStar => vec![Cliques],
        TreeClass::SubdividedStar { .. } => vec![Cliques, StableAndCliques],
        TreeClass::PmGeneric => vec![Cliques, FamilyAndCliques(Family::F2)],
        TreeClass::SpikedNotStar { .. } => vec![Cliques, CoMatchingPair, FamilyAndCliques(Family::F6VertexCoMatching)],
        TreeClass::SpikedStar { .. } => vec![Cliques, AllCoMatching, FamilyAndCliques(Family::F5VertexMultipartite)],
        TreeClass::DoublestarNotP6 { .. } => vec![Cliques, FamilyAndCliques(Family::F3)],
        TreeClass::P6 => vec![Cliques, FamilyAndCliques(Family::F4), StableAndCoMatching],
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, Copy)]
enum Fill {
    Clique,
    Stable,
    CoMatching,
    Family(Family),
}

fn fills(case: CertificateCase, w: usize) -> Vec<Fill> {
    let mut out = vec![Fill::Clique; w];
    match case {
        CertificateCase::Cliques => {}
        CertificateCase::StableAndCliques => out[0] = Fill::Stable,
        CertificateCase::FamilyAndCliques(f) => out[0] = Fill::Family(f),
        CertificateCase::CoMatchingPair => {
            out[0] = Fill::CoMatching;
            if w > 1 {
                out[1] = Fill::CoMatching;
            }
        }
        CertificateCase::AllCoMatching => out.fill(Fill::CoMatching),
        CertificateCase::StableAndCoMatching => {
            out[0] = Fill::Stable;
            if w > 1 {
                out[1] = Fill::CoMatching;
            }
        }
    }
    out
}

fn make_clique(g: &mut Graph, vs: &[usize]) {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            g.add_edge(u, v);
        }
    }
}

fn join(g: &mut Graph, a: &[usize], b: &[usize]) {
    for &u in a {
        for &v in b {
            g.add_edge(u, v);
        }
    }
}

/// Removes a uniformly sized random matching from the clique on `vs`, keeping
/// at least `keep` vertices unmatched.
fn co_matching(g: &mut Graph, vs: &[usize], keep: usize, rng: &mut ChaCha8Rng) {
    make_clique(g, vs);
    let max_pairs = vs.len().saturating_sub(keep).min(vs.len() / 2);
    let pairs = rng.gen_range(0..=max_pairs);
    let mut order = vs.to_vec();
    order.shuffle(rng);
    for pair in order.chunks(2).take(pairs) {
        if let [u, v] = pair {
            g.remove_edge(*u, *v);
        }
    }
}

/// One complement component of `family` on `vs`, with a randomly chosen
/// allowed shape.
fn random_component(g: &mut Graph, vs: &[usize], family: Family, rng: &mut ChaCha8Rng) {
    let s = vs.len();
    if s <= 2 {
        return;
    }
    let rest = &vs[1..];
    match family {
        Family::F1 => make_clique(g, rest),
        Family::F2 => {
            if !(s == 3 && rng.gen_bool(0.5)) {
                make_clique(g, rest);
            }
        }
        Family::F3 => {
            if rng.gen_bool(0.5) {
                make_clique(g, rest);
            }
        }
        Family::F4 => {
            let c = [0].into_iter().chain(2..s).collect::<Vec<_>>();
            let c = c[rng.gen_range(0..c.len())];
            make_clique(g, &vs[..c]);
        }
        Family::F5VertexMultipartite => {
            let blocks: Vec<usize> = rest.iter().map(|_| rng.gen_range(0..rest.len())).collect();
            for (i, &u) in rest.iter().enumerate() {
                for (j, &v) in rest.iter().enumerate().skip(i + 1) {
                    if blocks[i] != blocks[j] {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        Family::F6VertexCoMatching => {
            if !(s == 3 && rng.gen_bool(0.5)) {
                co_matching(g, rest, 0, rng);
            }
        }
        Family::AllCoMatching => unreachable!("not a planted family"),
    }
}

/// A family member on `vs` whose first complement component contains a clique
/// (or, for the stable-set family, possibly a stable set) on `k` vertices.
fn family_part(g: &mut Graph, vs: &[usize], family: Family, k: usize, rng: &mut ChaCha8Rng) {
    let (planted, mut rest) = vs.split_at(k + 1);
    match family {
        Family::F3 if rng.gen_bool(0.5) => {}
        // clique of k plus one isolated vertex
        Family::F4 => make_clique(g, &planted[..k]),
        _ => make_clique(g, &planted[1..]),
    }
    let mut comps: Vec<&[usize]> = vec![planted];
    while !rest.is_empty() {
        let s = rng.gen_range(1..=rest.len().min(5));
        let (c, r) = rest.split_at(s);
        random_component(g, c, family, rng);
        comps.push(c);
        rest = r;
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            join(g, comps[i], comps[j]);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub partition: Partition,
    pub case: CertificateCase,
    pub perturbed: bool,
}

/// A random host on `n` vertices built to satisfy one clause for the class of
/// `t`: parts are filled per the clause, each holding a clique (or stable set)
/// on `|V(t)|` vertices, cross pairs are fair coin flips, and labels are
/// shuffled. With `perturb`, one random pair inside a part is then flipped.
pub fn planted_instance(t: &Tree, n: usize, perturb: bool, rng: &mut ChaCha8Rng) -> Result<PlantedInstance, CensusError> {
    let class = classify(t);
    let cases = plantable(&class);
    if cases.is_empty() {
        return Err(CertifyError::UnsupportedClass(class.name().into()).into());
    }
    let (k, w) = (t.n(), t.alpha() - 1);
    if n < w * (k + 1) || n > crate::graph::MAX_VERTICES {
        return Err(CensusError::HostTooLarge(n));
    }
    let case = cases[rng.gen_range(0..cases.len())];
    let mut sizes = vec![k + 1; w];
    for _ in 0..n - w * (k + 1) {
        sizes[rng.gen_range(0..w)] += 1;
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut g = Graph::empty(n).expect("n checked");
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(w);
    let mut at = 0;
    for (&s, fill) in sizes.iter().zip(fills(case, w)) {
        let vs = labels[at..at + s].to_vec();
        at += s;
        match fill {
            Fill::Clique => make_clique(&mut g, &vs),
            Fill::Stable => {}
            Fill::CoMatching => co_matching(&mut g, &vs, k, rng),
            Fill::Family(f) => family_part(&mut g, &vs, f, k, rng),
        }
        parts.push(vs);
    }
    for a in 0..w {
        for b in a + 1..w {
            for &u in &parts[a] {
                for &v in &parts[b] {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
        }
    }
    if perturb {
        let part = &parts[rng.gen_range(0..w)];
        let i = rng.gen_range(0..part.len());
        let j = (i + rng.gen_range(1..part.len())) % part.len();
        g.toggle_edge(part[i], part[j]);
    }
    let masks: Vec<VertexMask> = parts.iter().map(|vs| vs.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    let partition = Partition::new(n, masks).expect("parts cover the host");
    Ok(PlantedInstance { graph: g, partition, case, perturbed: perturb })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub index: u64,
    pub graph6: String,
    pub partition: Partition,
    pub planted: String,
    pub perturbed: bool,
    pub structural: bool,
    pub witnessing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledReport {
    pub schema_version: u32,
    pub tree_id: String,
    pub class: &'static str,
    pub n: usize,
    pub seed: u64,
    pub requested: u64,
    /// interesting instances compared
    pub tested: u64,
    pub skipped_not_interesting: u64,
    pub structural_true: u64,
    pub structural_false: u64,
    pub perturbed: u64,
    pub discrepancies: Vec<Discrepancy>,
}

enum Outcome {
    Skipped,
    Tested { structural: bool, perturbed: bool, discrepancy: Option<Discrepancy> },
}

fn sample(t: &Tree, n: usize, seed: u64, index: u64) -> Result<Outcome, CensusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let perturb = rng.gen_bool(0.5);
    let inst = planted_instance(t, n, perturb, &mut rng)?;
    let g = &inst.graph;
    let interesting = is_interesting(g, &inst.partition, t, t.n())?;
    if !interesting.interesting {
        return Ok(Outcome::Skipped);
    }
    let p = interesting.reindexed;
    let structural = structural_certifying(g, &p, t)?.holds;
    let witnessing = is_witnessing(g, &p, t.graph())?.witnessing;
    let discrepancy = (structural != witnessing).then(|| Discrepancy {
        index,
        graph6: to_graph6(g),
        partition: p.clone(),
        planted: inst.case.label(),
        perturbed: inst.perturbed,
        structural,
        witnessing,
    });
    Ok(Outcome::Tested { structural, perturbed: inst.perturbed, discrepancy })
}

/// Compares structural and witnessing verdicts on `samples` interesting
/// planted instances (about half perturbed). Sample `i` draws from stream `i`
/// of the seeded generator, so results do not depend on thread count.
/// Generation stops after `8 * samples` attempts if too few are interesting.
pub fn sampled_equivalence(t: &Tree, n: usize, samples: u64, seed: u64) -> Result<SampledReport, CensusError> {
    let mut report = SampledReport {
        schema_version: SCHEMA_VERSION,
        tree_id: canonical_code(t),
        class: classify(t).name(),
        n,
        seed,
        requested: samples,
        tested: 0,
        skipped_not_interesting: 0,
        structural_true: 0,
        structural_false: 0,
        perturbed: 0,
        discrepancies: Vec::new(),
    };
    let batch = samples.clamp(1, 4096);
    let mut next = 0u64;
    while report.tested < samples && next < 8 * samples.max(1) {
        let outcomes: Vec<Outcome> =
            (next..next + batch).into_par_iter().map(|i| sample(t, n, seed, i)).collect::<Result<_, _>>()?;
        next += batch;
        for o in outcomes {
            if report.tested == samples {
                break;
            }
            match o {
                Outcome::Skipped => report.skipped_not_interesting += 1,
                Outcome::Tested { structural, perturbed, discrepancy } => {
                    report.tested += 1;
                    if structural {
                        report.structural_true += 1;
                    } else {
                        report.structural_false += 1;
                    }
                    report.perturbed += u64::from(perturbed);
                    report.discrepancies.extend(discrepancy);
                }
            }
        }
    }
    Ok(report)
}
