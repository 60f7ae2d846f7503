//! Maximum cliques by branch and bound with greedy-colouring bounds.

use super::{Graph, VertexMask};

/// A maximum clique of `g[within]`, as a mask.
pub fn max_clique(g: &Graph, within: VertexMask) -> VertexMask {
    let mut best = 0u64;
    expand(g, 0, within & g.full(), &mut best);
    best
}

pub fn max_clique_size(g: &Graph) -> usize {
    max_clique(g, g.full()).count_ones() as usize
}

/// Independence number `α(g)`.
pub fn max_stable_size(g: &Graph) -> usize {
    max_clique_size(&g.complement())
}

/// Greedy colouring of `cand`; returns vertices in colour order with the colour
/// count reached at each, which bounds any clique using that prefix.
fn colour_bound(g: &Graph, cand: VertexMask) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    let mut left = cand;
    let mut colour = 0;
    while left != 0 {
        colour += 1;
        let mut avail = left;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !g.neighbors(v) & !(1 << v);
            left &= !(1 << v);
            out.push((v, colour));
        }
    }
    out
}

fn expand(g: &Graph, current: VertexMask, mut cand: VertexMask, best: &mut VertexMask) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    let order = colour_bound(g, cand);
    for &(v, bound) in order.iter().rev() {
        if current.count_ones() + bound <= best.count_ones() {
            return;
        }
        expand(g, current | 1 << v, cand & g.neighbors(v), best);
        cand &= !(1 << v);
    }
    if current.count_ones() > best.count_ones() {
        *best = current;
    }
}

#[cfg(test)]
pub(crate) fn max_clique_brute(g: &Graph) -> usize {
    let n = g.n();
    (0u64..1 << n).filter(|&m| g.is_clique_on(m)).map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn named_values() {
        assert_eq!(max_clique_size(&complete(7)), 7);
        assert_eq!(max_clique_size(&cycle(5)), 2);
        assert_eq!(max_stable_size(&cycle(7)), 3);
        assert_eq!(max_stable_size(&star(5)), 5);
        assert_eq!(max_clique_size(&empty(0)), 0);
        assert_eq!(max_clique_size(&empty(3)), 1);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..300 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let n = (state % 11) as usize;
            let g = Graph::from_pair_bits(n, state >> 8);
            let c = max_clique(&g, g.full());
            assert!(g.is_clique_on(c));
            assert_eq!(c.count_ones() as usize, max_clique_brute(&g), "{g:?}");
        }
    }
}
