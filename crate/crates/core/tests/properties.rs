use proptest::prelude::*;

use tfree::certify::{is_interesting, is_witnessing, sound_certifying, Partition};
use tfree::counting::{count_family, m_pi_deviation_form, m_pi_sizes};
use tfree::graph::{induced_embedding, is_isomorphic, is_p4_free_quartets, is_p4_free_seinsche, Family, Graph};
use tfree::io::{parse_graph6, to_graph6};
use tfree::tree::{canonical_code, classify, Tree};
use tfree::BigCount;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let word = bits.iter().enumerate().fold(0u64, |w, (i, &b)| w | (b as u64) << i);
            Graph::from_pair_bits(n, word)
        })
    })
}

fn big_graph() -> impl Strategy<Value = Graph> {
    (2usize..=30, proptest::collection::vec((0usize..30, 0usize..30), 0..120)).prop_map(|(n, es)| {
        let edges: Vec<(usize, usize)> = es.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
        let mut g = Graph::empty(n).unwrap();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    })
}

/// Trees from Prüfer sequences.
fn tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Tree> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| {
            let mut degree = vec![1usize; n];
            for &v in &seq {
                degree[v] += 1;
            }
            let mut edges = Vec::new();
            for &v in &seq {
                let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
                edges.push((leaf, v));
                degree[leaf] -= 1;
                degree[v] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
            edges.push((rest[0], rest[1]));
            Tree::new(n, &edges).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn graph6_round_trip(g in big_graph()) {
        let s = to_graph6(&g);
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn relabeling_preserves_isomorphism_class((g, perm) in graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = g.relabel(&perm);
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn cross_pairs_match_deviation_form(sizes in proptest::collection::vec(0usize..40, 1..8)) {
        let exact = m_pi_sizes(&sizes) as f64;
        prop_assert!((exact - m_pi_deviation_form(&sizes)).abs() < 1e-6 * exact.max(1.0));
    }

    #[test]
    fn p4_free_tests_agree(g in graph(9)) {
        prop_assert_eq!(is_p4_free_quartets(&g), is_p4_free_seinsche(&g));
    }

    #[test]
    fn partition_labels_round_trip(labels in proptest::collection::vec(0usize..4, 1..20)) {
        let w = labels.iter().max().unwrap() + 1;
        let p = Partition::from_labels(&labels, w).unwrap();
        prop_assert_eq!(p.labels(), labels.clone());
        let q: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(q.parts().iter().filter(|&&m| m != 0).count(), p.parts().iter().filter(|&&m| m != 0).count());
        prop_assert_eq!(p.sizes().iter().sum::<usize>(), labels.len());
    }

    #[test]
    fn classes_are_isomorphism_invariant((t, perm) in tree(2, 14).prop_flat_map(|t| { let n = t.n(); (Just(t), permutation(n)) })) {
        let u = t.relabel(&perm);
        prop_assert_eq!(classify(&u).name(), classify(&t).name());
        prop_assert_eq!(canonical_code(&u), canonical_code(&t));
        prop_assert_eq!(u.alpha(), t.alpha());
    }

    #[test]
    fn machine_and_big_counts_agree(l in 0usize..=30, which in 0usize..Family::ALL.len()) {
        let f = Family::ALL[which];
        let big: BigCount = count_family(f, l).unwrap();
        match count_family::<u64>(f, l) {
            Ok(small) => prop_assert_eq!(BigCount::from(small), big),
            Err(_) => prop_assert!(big > BigCount::from(u64::MAX)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Reindexing puts a part of largest independence number first, so a
    /// clique first part means every part is a clique.
    #[test]
    fn clique_first_part_forces_clique_parts(g in graph(9), seed in any::<u64>()) {
        let t = Tree::path(8);
        let w = t.alpha() - 1;
        let labels: Vec<usize> = (0..g.n()).map(|v| (seed >> (2 * v) & 3) as usize % w).collect();
        let p = Partition::from_labels(&labels, w).unwrap();
        if !p.has_empty_part() {
            let r = is_interesting(&g, &p, &t, 2).unwrap().reindexed;
            if g.is_clique_on(r.part(0)) {
                prop_assert!(r.parts().iter().all(|&x| g.is_clique_on(x)));
            }
        }
    }

    /// A partition that passes the shape characterization certifies: the host
    /// has no induced copy of the tree and the split cannot host it part by part.
    #[test]
    fn certified_partitions_are_witnessing(
        g in graph(7),
        which in 0usize..3,
        seed in any::<u64>(),
    ) {
        let t = [Tree::m6(), Tree::path(6), Tree::path(5)][which].clone();
        let w = t.alpha() - 1;
        let labels: Vec<usize> = (0..g.n()).map(|v| (seed >> (2 * v) & 3) as usize % w).collect();
        let p = Partition::from_labels(&labels, w).unwrap();
        if !p.has_empty_part() && sound_certifying(&g, &p, &t).unwrap() {
            prop_assert!(induced_embedding(t.graph(), &g).is_none());
            prop_assert!(is_witnessing(&g, &p, t.graph()).unwrap().witnessing);
        }
    }
}
