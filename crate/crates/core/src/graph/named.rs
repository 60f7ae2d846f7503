//! Small named graphs used throughout tests and examples.

use super::Graph;

pub fn empty(n: usize) -> Graph {
    Graph::empty(n).expect("too many vertices")
}

pub fn complete(n: usize) -> Graph {
    let mut g = empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let mut g = empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(n - 1, 0);
    }
    g
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    let mut g = empty(k + 1);
    for v in 1..=k {
        g.add_edge(0, v);
    }
    g
}

/// Attaches a pendant vertex `v + n` to every vertex `v` of `base`.
pub fn spiking(base: &Graph) -> Graph {
    let n = base.n();
    let mut g = empty(2 * n);
    for (u, v) in base.edges() {
        g.add_edge(u, v);
    }
    for v in 0..n {
        g.add_edge(v, v + n);
    }
    g
}

/// The spiked `P_3`: base `0-1-2`, pendants `3,4,5`.
pub fn m6() -> Graph {
    spiking(&path(3))
}

/// Disjoint union of `k` edges.
pub fn matching(k: usize) -> Graph {
    let mut g = empty(2 * k);
    for i in 0..k {
        g.add_edge(2 * i, 2 * i + 1);
    }
    g
}

/// Complement of a perfect matching on `2k` vertices.
pub fn co_matching(k: usize) -> Graph {
    matching(k).complement()
}
