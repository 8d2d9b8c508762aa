use ehlab::construct::{gnp, perturb_edges, random_bipartite, random_cograph};
use ehlab::containers::CheckMode;
use ehlab::exact::{rat_int, rational, Rational};
use ehlab::homogeneous::{
    count_cliques, count_homogeneous_k, distance_to_family, find_eps_homogeneous, has_induced_p4, hom_exact,
    is_eps_homogeneous, check_tk_property, turan_clique, turan_guarantee, Distance, EpsMode, FamilyOracle, Side,
    Strategy as Search,
};
use ehlab::{Graph, VertexSet};
use num_bigint::BigUint;
use proptest::prelude::*;

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn small_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, code)| {
        let bits = pair_count(n);
        let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
        Graph::from_pair_code(n, code & mask)
    })
}

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u64..1 << n).map(move |m| VertexSet::from_mask(n, m))
}

fn brute_hom(g: &Graph) -> usize {
    subsets(g.n()).filter(|s| g.is_clique(s) || g.is_independent(s)).map(|s| s.len()).max().unwrap_or(0)
}

fn brute_eps_max(g: &Graph, eps: &Rational, mode: EpsMode) -> usize {
    subsets(g.n())
        .filter(|s| !s.is_empty())
        .filter(|s| [Side::Sparse, Side::Dense].iter().any(|&side| is_eps_homogeneous(g, s, eps, side, mode)))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}

fn eps_values() -> Vec<Rational> {
    vec![rational(1, 10), rational(1, 5), rational(1, 4), rational(1, 3), rational(1, 2)]
}

#[test]
fn greedy_never_beats_exact_exhaustive() {
    for n in 1..=6 {
        for code in 0..(1u64 << pair_count(n)) {
            let g = Graph::from_pair_code(n, code);
            for eps in [rational(1, 4), rational(1, 2)] {
                for mode in [EpsMode::Density, EpsMode::Degree] {
                    let exact = find_eps_homogeneous(&g, &eps, mode, Search::Exact).unwrap();
                    let greedy = find_eps_homogeneous(&g, &eps, mode, Search::GreedyPeel).unwrap();
                    assert!(greedy.set.len() <= exact.set.len(), "n={n} code={code}");
                }
            }
        }
    }
}

#[test]
fn p4_free_detection_matches_cograph_generator() {
    for seed in 0..50 {
        let g = random_cograph(12, seed).unwrap();
        assert!(!has_induced_p4(&g));
        assert!(FamilyOracle::p4_free().contains(&g));
    }
}

#[test]
fn tk_exhaustive_all_graphs_matches_ramsey() {
    // R(3,3) = 6: every 6-vertex graph has a homogeneous triple, some 5-vertex graph does not
    let all = FamilyOracle::all_graphs();
    assert!(check_tk_property(&all, 6, 3, CheckMode::Exhaustive).unwrap().holds);
    assert!(!check_tk_property(&all, 5, 3, CheckMode::Exhaustive).unwrap().holds);
}

proptest! {
    #[test]
    fn hom_matches_brute_force(g in small_graph(0, 10)) {
        let (size, witness) = hom_exact(&g).unwrap();
        prop_assert_eq!(size, brute_hom(&g));
        prop_assert_eq!(witness.set.len(), size);
        prop_assert!(witness.validate(&g));
    }

    #[test]
    fn hom_is_complement_invariant(n in 0usize..30, seed in any::<u64>()) {
        let g = gnp(n, &rational(1, 2), seed).unwrap();
        prop_assert_eq!(hom_exact(&g).unwrap().0, hom_exact(&g.complement()).unwrap().0);
    }

    #[test]
    fn homogeneous_count_splits(g in small_graph(0, 10), k in 2usize..6) {
        let expect = count_cliques(&g, k) + count_cliques(&g.complement(), k);
        prop_assert_eq!(count_homogeneous_k(&g, k).unwrap(), expect);
        let brute = subsets(g.n()).filter(|s| s.len() == k && (g.is_clique(s) || g.is_independent(s))).count();
        prop_assert_eq!(count_homogeneous_k(&g, k).unwrap(), BigUint::from(brute));
    }

    #[test]
    fn exact_eps_witness_is_optimal(g in small_graph(1, 8), i in 0usize..5, degree in any::<bool>()) {
        let eps = &eps_values()[i];
        let mode = if degree { EpsMode::Degree } else { EpsMode::Density };
        let w = find_eps_homogeneous(&g, eps, mode, Search::Exact).unwrap();
        prop_assert!(w.validate(&g));
        prop_assert_eq!(w.set.len(), brute_eps_max(&g, eps, mode));
    }

    #[test]
    fn exact_eps_size_grows_with_eps(g in small_graph(1, 9), degree in any::<bool>()) {
        let mode = if degree { EpsMode::Degree } else { EpsMode::Density };
        let sizes: Vec<usize> =
            eps_values().iter().map(|e| find_eps_homogeneous(&g, e, mode, Search::Exact).unwrap().set.len()).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{:?}", sizes);
    }

    #[test]
    fn eps_property_is_monotone(g in small_graph(1, 9), mask in any::<u64>(), dense in any::<bool>(), degree in any::<bool>()) {
        let s = VertexSet::from_mask(g.n(), mask & ((1u64 << g.n()) - 1));
        let side = if dense { Side::Dense } else { Side::Sparse };
        let mode = if degree { EpsMode::Degree } else { EpsMode::Density };
        let eps = eps_values();
        for w in eps.windows(2) {
            if is_eps_homogeneous(&g, &s, &w[0], side, mode) {
                prop_assert!(is_eps_homogeneous(&g, &s, &w[1], side, mode));
            }
        }
    }

    #[test]
    fn degree_mode_implies_density_mode(g in small_graph(1, 9), mask in any::<u64>(), dense in any::<bool>(), i in 0usize..5) {
        let s = VertexSet::from_mask(g.n(), mask & ((1u64 << g.n()) - 1));
        let side = if dense { Side::Dense } else { Side::Sparse };
        let eps = &eps_values()[i];
        if is_eps_homogeneous(&g, &s, eps, side, EpsMode::Degree) {
            prop_assert!(is_eps_homogeneous(&g, &s, eps, side, EpsMode::Density));
        }
    }

    #[test]
    fn greedy_never_beats_exact_sampled(n in 7usize..10, seed in any::<u64>(), i in 0usize..5, degree in any::<bool>()) {
        let g = gnp(n, &rational(1, 2), seed).unwrap();
        let eps = &eps_values()[i];
        let mode = if degree { EpsMode::Degree } else { EpsMode::Density };
        let exact = find_eps_homogeneous(&g, eps, mode, Search::Exact).unwrap();
        let greedy = find_eps_homogeneous(&g, eps, mode, Search::GreedyPeel).unwrap();
        prop_assert!(greedy.validate(&g));
        prop_assert!(greedy.set.len() <= exact.set.len());
    }

    #[test]
    fn turan_clique_meets_guarantee(n in 1usize..40, seed in any::<u64>(), num in 1i64..10) {
        let g = gnp(n, &rational(num, 10), seed).unwrap();
        let c = turan_clique(&g);
        prop_assert!(g.is_clique(&c));
        prop_assert!(rat_int(c.len() as i64) >= turan_guarantee(&g));
    }

    #[test]
    fn perturbed_cograph_is_close_to_p4_free(n in 2usize..7, seed in any::<u64>(), flips in 0usize..4) {
        let base = random_cograph(n, seed).unwrap();
        let flips = flips.min(pair_count(n));
        let (g, pairs) = perturb_edges(&base, flips, seed ^ 1).unwrap();
        prop_assert_eq!(pairs.len(), flips);
        match distance_to_family(&g, &FamilyOracle::p4_free(), flips).unwrap() {
            Distance::Exact(d) => prop_assert!(d <= flips),
            Distance::ExceedsBudget => prop_assert!(false, "distance exceeds the flips applied"),
        }
    }

    #[test]
    fn bipartite_members_have_zero_distance(n in 1usize..12, seed in any::<u64>()) {
        let g = random_bipartite(n, &rational(1, 2), seed).unwrap();
        prop_assert_eq!(distance_to_family(&g, &FamilyOracle::bipartite(), 0).unwrap(), Distance::Exact(0));
        prop_assert_eq!(distance_to_family(&g, &FamilyOracle::all_graphs(), 0).unwrap(), Distance::Exact(0));
    }
}
