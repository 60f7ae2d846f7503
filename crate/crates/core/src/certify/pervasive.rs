//! Disjoint induced copies (`q`-pervasive) and dangerous vertex sets.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{CertifyError, Pattern};
use crate::graph::{for_each_induced_copy, is_isomorphic, Graph, VertexMask};

/// Largest `q * |V(j)|` searched exactly.
const EXACT_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pervasive {
    Yes,
    No,
    /// the greedy lower bound found too few copies above the exact cap
    Unknown,
}

impl Pervasive {
    pub fn holds(self) -> bool {
        self == Pervasive::Yes
    }
}

fn copies(j: &Graph, f: &Graph, avail: VertexMask) -> BTreeSet<VertexMask> {
    let mut out = BTreeSet::new();
    let _ = for_each_induced_copy(j, f, avail, |map| {
        out.insert(map.iter().fold(0u64, |m, &v| m | 1 << v));
        ControlFlow::Continue(())
    });
    out
}

fn exact(j: &Graph, f: &Graph, avail: VertexMask, q: usize) -> bool {
    if q == 0 {
        return true;
    }
    if (avail.count_ones() as usize) < q * j.n() {
        return false;
    }
    let v = avail.trailing_zeros() as usize;
    for c in copies(j, f, avail).into_iter().filter(|c| c >> v & 1 == 1) {
        if exact(j, f, avail & !c, q - 1) {
            return true;
        }
    }
    exact(j, f, avail & !(1 << v), q)
}

/// Whether `f` holds `q` vertex-disjoint induced copies of `j`. Exact while
/// `q * |V(j)| <= 24`; above that a greedy packing answers `Yes` or `Unknown`.
pub fn is_pervasive(j: &Graph, f: &Graph, q: usize) -> Pervasive {
    if q == 0 || j.n() == 0 {
        return Pervasive::Yes;
    }
    if q * j.n() > f.n() {
        return Pervasive::No;
    }
    if q * j.n() <= EXACT_CAP {
        return if exact(j, f, f.full(), q) { Pervasive::Yes } else { Pervasive::No };
    }
    let mut avail = f.full();
    for _ in 0..q {
        match copies(j, f, avail).into_iter().next() {
            Some(c) => avail &= !c,
            None => return Pervasive::Unknown,
        }
    }
    Pervasive::Yes
}

/// Whether `d` (inside one part `k` of `pat`) is `q`-dangerous for `h`: some
/// ordered partition `S_1..S_w` of `V(h)` has `h[S_k]` isomorphic to the
/// pattern graph on `d` and `h[S_i]` `q`-pervasive in part `i` for `i != k`.
/// An empty `d` may sit in any part. `Unknown` pervasiveness counts as false.
pub fn is_dangerous(d: VertexMask, pat: &Pattern, h: &Graph, q: usize) -> Result<bool, CertifyError> {
    if h.n() > 8 {
        return Err(CertifyError::PatternTooLarge(h.n()));
    }
    let parts = pat.partition.parts();
    let homes: Vec<usize> = if d == 0 {
        (0..parts.len()).collect()
    } else {
        match parts.iter().position(|&p| d & !p == 0) {
            Some(k) => vec![k],
            None => return Err(CertifyError::NotWithinOnePart),
        }
    };
    let k_h = h.n();
    let full = h.full();
    // pervasive[i][Y]: h[Y] is q-pervasive in part i
    let pervasive: Vec<Vec<bool>> = (0..parts.len())
        .map(|i| (0u64..1 << k_h).map(|y| is_pervasive(&h.induced(y).0, &pat.graphs[i], q).holds()).collect())
        .collect();
    for &k in &homes {
        let target = pat.local(k, d);
        let others: Vec<usize> = (0..parts.len()).filter(|&i| i != k).collect();
        let mut sk = full;
        loop {
            if sk.count_ones() as usize == target.n() && is_isomorphic(&h.induced(sk).0, &target) {
                let tables: Vec<Vec<bool>> = others.iter().map(|&i| pervasive[i].clone()).collect();
                let rest = full & !sk;
                if split_into(&tables, rest) {
                    return Ok(true);
                }
            }
            if sk == 0 {
                break;
            }
            sk = (sk - 1) & full;
        }
    }
    Ok(false)
}

/// Whether `rest` splits into pieces, one per table, each marked good.
fn split_into(tables: &[Vec<bool>], rest: VertexMask) -> bool {
    let Some((first, others)) = tables.split_first() else {
        return rest == 0;
    };
    let mut y = rest;
    loop {
        if first[y as usize] && split_into(others, rest & !y) {
            return true;
        }
        if y == 0 {
            return false;
        }
        y = (y - 1) & rest;
    }
}
