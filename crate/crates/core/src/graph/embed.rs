//! Induced subgraph isomorphism by bitmask backtracking.

use std::ops::ControlFlow;

use super::{iter_mask, Graph, VertexMask};

/// Search order and per-position constraints for one pattern.
struct Plan {
    /// Pattern vertex placed at each depth.
    order: Vec<usize>,
    /// For depth `i`, bit `j < i` set iff `order[j]` is adjacent to `order[i]`.
    back: Vec<u64>,
}

impl Plan {
    fn new(pattern: &Graph) -> Self {
        let n = pattern.n();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let best = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let linked = (pattern.neighbors(v) & placed).count_ones();
                    (linked, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed |= 1 << best;
            order.push(best);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (0..i).filter(|&j| pattern.has_edge(order[j], v)).fold(0u64, |m, j| m | 1 << j)
            })
            .collect();
        Plan { order, back }
    }
}

/// Calls `visit` with every injective map `pattern -> host` (indexed by pattern
/// vertex) that preserves edges and non-edges and lands inside `avail`.
pub fn for_each_induced_copy<F>(pattern: &Graph, host: &Graph, avail: VertexMask, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let np = pattern.n();
    let avail = avail & host.full();
    let room = avail.count_ones() as usize;
    if np > room {
        return ControlFlow::Continue(());
    }
    if np == 0 {
        return visit(&[]);
    }
    let plan = Plan::new(pattern);
    // host vertices whose degree and co-degree inside `avail` can carry each pattern vertex
    let fits: Vec<u64> = plan
        .order
        .iter()
        .map(|&p| {
            let d = pattern.degree(p);
            let cd = np - 1 - d;
            iter_mask(avail)
                .filter(|&h| {
                    let hd = (host.neighbors(h) & avail).count_ones() as usize;
                    hd >= d && room - 1 - hd >= cd
                })
                .fold(0u64, |m, h| m | 1 << h)
        })
        .collect();
    let mut image = vec![0usize; np];
    let mut by_pattern = vec![0usize; np];
    descend(host, &plan, &fits, 0, 0, &mut image, &mut by_pattern, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn descend<F>(
    host: &Graph,
    plan: &Plan,
    fits: &[u64],
    depth: usize,
    used: u64,
    image: &mut [usize],
    by_pattern: &mut [usize],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if depth == plan.order.len() {
        for (i, &p) in plan.order.iter().enumerate() {
            by_pattern[p] = image[i];
        }
        return visit(by_pattern);
    }
    let mut cand = fits[depth] & !used;
    let back = plan.back[depth];
    for j in 0..depth {
        let row = host.neighbors(image[j]);
        if back >> j & 1 == 1 {
            cand &= row;
        } else {
            cand &= !row;
        }
        if cand == 0 {
            return ControlFlow::Continue(());
        }
    }
    for h in iter_mask(cand) {
        image[depth] = h;
        descend(host, plan, fits, depth + 1, used | 1 << h, image, by_pattern, visit)?;
    }
    ControlFlow::Continue(())
}

/// An induced copy of `pattern` inside `host[avail]`, as the image of each
/// pattern vertex.
pub fn induced_embedding_within(pattern: &Graph, host: &Graph, avail: VertexMask) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = for_each_induced_copy(pattern, host, avail, |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    });
    if let Some(map) = &found {
        assert!(is_induced_map(pattern, host, map), "embedding search returned an invalid map");
    }
    found
}

pub fn induced_embedding(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    induced_embedding_within(pattern, host, host.full())
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && induced_embedding(a, b).is_some()
}

fn is_induced_map(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    let n = pattern.n();
    let mut seen = 0u64;
    for &h in map {
        if seen >> h & 1 == 1 {
            return false;
        }
        seen |= 1 << h;
    }
    (0..n).all(|u| (u + 1..n).all(|v| pattern.has_edge(u, v) == host.has_edge(map[u], map[v])))
}
