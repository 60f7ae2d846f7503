//! Brute-force witnessing, the witnessing partition number, and Safe families.

use std::collections::HashMap;

use super::{CertifyError, Partition, MAX_PATTERN_VERTICES};
use crate::graph::{induced_embedding, iter_mask, Graph, VertexMask};
use crate::tree::{forest_code, Tree};

/// Outcome of the witnessing quantifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub witnessing: bool,
    /// Pieces `Y_1..Y_w` of `V(H)` that embed into the matching parts.
    pub failing_assignment: Option<Partition>,
}

fn is_forest(h: &Graph) -> bool {
    h.edge_count() + h.components().len() == h.n()
}

/// `table[Y]` says whether `h[Y]` embeds induced into `g[part]`. Embeddability
/// is hereditary, so a set is only queried when all its one-smaller subsets
/// embed. Forest pieces are cached by isomorphism type.
pub(crate) fn embedding_table(
    g: &Graph,
    part: VertexMask,
    h: &Graph,
    cache: &mut HashMap<String, bool>,
) -> Vec<bool> {
    let k = h.n();
    let (host, _) = g.induced(part);
    let forest = is_forest(h);
    let mut table = vec![false; 1 << k];
    let mut by_size: Vec<u64> = (0u64..1 << k).collect();
    by_size.sort_by_key(|y| y.count_ones());
    for y in by_size {
        if y == 0 {
            table[0] = true;
            continue;
        }
        if y.count_ones() > host.n() as u32 || iter_mask(y).any(|v| !table[(y & !(1 << v)) as usize]) {
            continue;
        }
        let query = || induced_embedding(&h.induced(y).0, &host).is_some();
        table[y as usize] = if forest {
            *cache.entry(forest_code(h, y)).or_insert_with(query)
        } else {
            query()
        };
    }
    table
}

/// Decides whether `V(h)` splits into pieces with `tables[i][Y_i]` true.
/// Returns the pieces when it does.
pub(crate) fn cover_split(tables: &[Vec<bool>], k: usize) -> Option<Vec<VertexMask>> {
    let full = (1u64 << k) - 1;
    // reach[i][A]: A is a disjoint union of good pieces for parts 0..i
    let mut reach = vec![vec![false; 1 << k]];
    reach[0][0] = true;
    for table in tables {
        let prev = reach.last().unwrap();
        let mut next = vec![false; 1 << k];
        for a in 0..=full {
            if !prev[a as usize] {
                continue;
            }
            let free = full & !a;
            let mut y = free;
            loop {
                if table[y as usize] {
                    next[(a | y) as usize] = true;
                }
                if y == 0 {
                    break;
                }
                y = (y - 1) & free;
            }
        }
        reach.push(next);
    }
    if !reach[tables.len()][full as usize] {
        return None;
    }
    let mut pieces = vec![0u64; tables.len()];
    let mut rest = full;
    for i in (0..tables.len()).rev() {
        let mut y = rest;
        loop {
            if tables[i][y as usize] && reach[i][(rest & !y) as usize] {
                break;
            }
            y = (y - 1) & rest;
        }
        pieces[i] = y;
        rest &= !y;
    }
    Some(pieces)
}

/// `wpn` shortcut for trees, general brute force otherwise.
pub(crate) fn expected_parts(h: &Graph) -> usize {
    match Tree::from_graph(*h) {
        Ok(t) if t.alpha() >= 2 => t.alpha() - 1,
        _ => wpn(h),
    }
}

/// Whether `p` is a witnessing partition of `g` for the pattern `h`. The part
/// count must equal `wpn(h)`, which is `alpha - 1` for trees with `alpha >= 2`.
pub fn is_witnessing(g: &Graph, p: &Partition, h: &Graph) -> Result<Witness, CertifyError> {
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(CertifyError::PatternTooLarge(h.n()));
    }
    p.check_host(g)?;
    let expected = expected_parts(h);
    if p.w() != expected {
        return Err(CertifyError::PartCountMismatch { expected, got: p.w() });
    }
    Ok(witnessing_unchecked(g, p.parts(), h))
}

pub(crate) fn witnessing_unchecked(g: &Graph, parts: &[VertexMask], h: &Graph) -> Witness {
    let tables: Vec<Vec<bool>> = parts
        .iter()
        .map(|&part| embedding_table(g, part, h, &mut HashMap::new()))
        .collect();
    match cover_split(&tables, h.n()) {
        None => Witness { witnessing: true, failing_assignment: None },
        Some(pieces) => Witness {
            witnessing: false,
            failing_assignment: Some(Partition::new(h.n(), pieces).expect("pieces cover V(h)")),
        },
    }
}

/// Least number of cliques covering each vertex subset of `h`.
fn cover_numbers(h: &Graph, good: impl Fn(VertexMask) -> bool) -> Vec<usize> {
    let k = h.n();
    let mut best = vec![usize::MAX; 1 << k];
    best[0] = 0;
    for m in 1u64..1 << k {
        let low = m & m.wrapping_neg();
        let rest = m & !low;
        let mut sub = rest;
        loop {
            let piece = sub | low;
            if good(piece) {
                let before = best[(m & !piece) as usize];
                if before != usize::MAX {
                    best[m as usize] = best[m as usize].min(before + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best
}

/// `ok[R]`: `h[R]` splits into at most `s` stable sets and `c` cliques.
fn splittable(h: &Graph, s: usize, c: usize) -> Vec<bool> {
    let chi = cover_numbers(h, |m| h.is_stable_on(m));
    let theta = cover_numbers(h, |m| h.is_clique_on(m));
    let k = h.n();
    (0u64..1 << k)
        .map(|r| {
            let mut a = r;
            loop {
                if chi[a as usize] <= s && theta[(r & !a) as usize] <= c {
                    return true;
                }
                if a == 0 {
                    return false;
                }
                a = (a - 1) & r;
            }
        })
        .collect()
}

/// Witnessing partition number: the largest `t` such that for some
/// `s + c = t` the vertex set of `h` has no partition into `s` stable sets and
/// `c` cliques (empty pieces allowed).
pub fn wpn(h: &Graph) -> usize {
    let k = h.n();
    assert!(k <= MAX_PATTERN_VERTICES, "wpn is brute force, pattern too large");
    let chi = cover_numbers(h, |m| h.is_stable_on(m));
    let theta = cover_numbers(h, |m| h.is_clique_on(m));
    let full = h.full();
    // fewest cliques needed next to s stable sets
    let need: Vec<usize> = (0..=k)
        .map(|s| {
            let mut best = usize::MAX;
            let mut a = full;
            loop {
                if chi[a as usize] <= s {
                    best = best.min(theta[(full & !a) as usize]);
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & full;
            }
            best
        })
        .collect();
    (0..=k)
        .rev()
        .find(|&t| (0..=t).any(|s| need[s] > t - s))
        .unwrap_or(0)
}

/// Whether `j` belongs to `Safe_{h,c,s}`: no partition of `V(h)` into `c`
/// cliques, `s` stable sets and one set inducing an induced subgraph of `j`.
pub fn safe_member(j: &Graph, h: &Graph, c: usize, s: usize) -> Result<bool, CertifyError> {
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(CertifyError::PatternTooLarge(h.n()));
    }
    let expected = wpn(h).saturating_sub(1);
    if c + s != expected || wpn(h) == 0 {
        return Err(CertifyError::BadBudget { expected, got: c + s });
    }
    let ok = splittable(h, s, c);
    let table = embedding_table(j, j.full(), h, &mut HashMap::new());
    let full = h.full();
    let mut z = full;
    loop {
        if table[z as usize] && ok[(full & !z) as usize] {
            return Ok(false);
        }
        if z == 0 {
            return Ok(true);
        }
        z = (z - 1) & full;
    }
}
