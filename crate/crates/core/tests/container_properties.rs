use ehlab::construct::{gnp, random_uniform_hypergraph};
use ehlab::containers::{
    count_independent_sets_exact, graph_soundness_sweep, kw_bound, kw_fingerprint, minimal_ell, reconstruct_kw_segments,
    reconstruct_scythe_segments, scythe_fingerprint, ContainerParams,
};
use ehlab::exact::{rat_int, rational, Rational};
use ehlab::{Graph, UniformHypergraph, VertexSet};
use num_bigint::BigUint;
use proptest::prelude::*;

fn brute_independent(n: usize, k: usize, independent: impl Fn(&VertexSet) -> bool) -> u64 {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .filter(|&m| independent(&VertexSet::from_vertices(n, (0..n).filter(|v| m >> v & 1 == 1)).unwrap()))
        .count() as u64
}

/// Greedy maximal independent set in the given vertex order, then the
/// vertices kept by `keep`.
fn independent_from(n: usize, order: &[usize], keep: u64, independent: impl Fn(&VertexSet) -> bool) -> VertexSet {
    let mut set = VertexSet::empty(n);
    for &v in order {
        set.insert(v);
        if !independent(&set) {
            set.remove(v);
        }
    }
    let kept: Vec<usize> = set.iter().filter(|v| keep >> v & 1 == 1).collect();
    VertexSet::from_vertices(n, kept).unwrap()
}

fn eps_strategy() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rational(1, 4)), Just(rational(1, 3)), Just(rational(1, 2)), Just(rational(2, 3)), Just(rat_int(1))]
}

fn order_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

#[test]
fn kw_bound_monotone_on_grid() {
    for eps in [rational(1, 4), rational(1, 2), rat_int(1)] {
        for n in 1..=14usize {
            for u in 1..=n {
                let ell = minimal_ell(n, &eps, u).unwrap();
                for k in ell..=n {
                    let b = kw_bound(n, &ContainerParams::new(eps.clone(), u, ell, k).unwrap()).unwrap();
                    // larger u keeps (ε, ℓ, k) valid
                    if u < n {
                        let next = kw_bound(n, &ContainerParams::new(eps.clone(), u + 1, ell, k).unwrap()).unwrap();
                        assert!(next >= b, "u monotonicity at n={n} u={u} k={k}");
                    }
                    // larger n, when ℓ still shrinks enough
                    let params = ContainerParams::new(eps.clone(), u, ell, k).unwrap();
                    if params.shrinks_to_cap(n + 1) {
                        assert!(kw_bound(n + 1, &params).unwrap() >= b, "n monotonicity at n={n} u={u} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn improved_bound_holds_on_six_vertices() {
    let eps = [rational(1, 4), rational(1, 3), rational(1, 2), rational(2, 3), rat_int(1)];
    let u: Vec<usize> = (1..=6).collect();
    let k: Vec<usize> = (0..=6).collect();
    let rows = graph_soundness_sweep(6, &eps, &u, &k).unwrap();
    assert!(rows.iter().all(|r| r.violations == 0));
    assert!(rows.iter().all(|r| r.improved_violations == 0), "{:?}", rows.iter().find(|r| r.improved_violations > 0));
}

proptest! {
    #[test]
    fn graph_counts_match_brute_force(n in 0usize..12, seed in any::<u64>(), k in 0usize..7) {
        let g = gnp(n, &rational(1, 3), seed).unwrap();
        let expect = brute_independent(n, k, |s| g.is_independent(s));
        prop_assert_eq!(count_independent_sets_exact(&g, k), BigUint::from(expect));
    }

    #[test]
    fn hypergraph_counts_match_brute_force(n in 3usize..11, seed in any::<u64>(), k in 0usize..7, r in 3usize..5) {
        prop_assume!(r <= n);
        let h = random_uniform_hypergraph(n, r, &rational(1, 3), seed).unwrap();
        let expect = brute_independent(n, k, |s| h.is_independent(s));
        prop_assert_eq!(count_independent_sets_exact(&h, k), BigUint::from(expect));
    }

    #[test]
    fn kw_fingerprint_round_trip(
        (n, order) in (1usize..24).prop_flat_map(|n| (Just(n), order_strategy(n))),
        seed in any::<u64>(), keep in any::<u64>(), eps in eps_strategy(), u_frac in 0usize..100,
    ) {
        let g = gnp(n, &rational(1, 4), seed).unwrap();
        let i = independent_from(n, &order, keep, |s| g.is_independent(s));
        let u = 1 + u_frac * n / 100;
        let ell = minimal_ell(n, &eps, u).unwrap();
        let params = ContainerParams::new(eps, u, ell, i.len()).unwrap();
        let trace = kw_fingerprint(&g, &i, &params).unwrap();
        prop_assert!(trace.check_invariants(&i, ell).is_ok());
        prop_assert_eq!(&kw_fingerprint(&g, &i, &params).unwrap(), &trace);
        prop_assert_eq!(reconstruct_kw_segments(&g, &trace.segment_union(), &params).unwrap(), trace.segments);
    }

    #[test]
    fn scythe_on_graphs_matches_kw(
        (n, order) in (1usize..20).prop_flat_map(|n| (Just(n), order_strategy(n))),
        seed in any::<u64>(), keep in any::<u64>(), eps in eps_strategy(), u_frac in 0usize..100,
    ) {
        let g = gnp(n, &rational(1, 3), seed).unwrap();
        let h = UniformHypergraph::from_graph(&g);
        let i = independent_from(n, &order, keep, |s| g.is_independent(s));
        let u = 1 + u_frac * n / 100;
        let params = ContainerParams::with_minimal_ell(n, eps, u, i.len()).unwrap();
        let a = kw_fingerprint(&g, &i, &params).unwrap();
        let b = scythe_fingerprint(&h, &i, &params).unwrap();
        prop_assert_eq!(a.segments, b.segments);
        // scythe also stops once I is used up; KW keeps discarding down to u
        prop_assert!(a.container.is_subset(&b.container));
    }

    #[test]
    fn scythe_round_trip(
        (n, order) in (3usize..16).prop_flat_map(|n| (Just(n), order_strategy(n))),
        seed in any::<u64>(), keep in any::<u64>(), eps in eps_strategy(), u_frac in 0usize..100, r in 3usize..5,
    ) {
        prop_assume!(r <= n);
        let h = random_uniform_hypergraph(n, r, &rational(1, 2), seed).unwrap();
        let i = independent_from(n, &order, keep, |s| h.is_independent(s));
        let u = 1 + u_frac * n / 100;
        let params = ContainerParams::with_minimal_ell(n, eps, u, i.len()).unwrap();
        let trace = scythe_fingerprint(&h, &i, &params).unwrap();
        prop_assert!(trace.check_invariants(&i, params.ell).is_ok());
        prop_assert!(trace.segments.iter().all(|s| s.len() == r - 1));
        prop_assert_eq!(reconstruct_scythe_segments(&h, &trace.segment_union(), &params).unwrap(), trace.segments);
    }

    #[test]
    fn non_independent_inputs_rejected(n in 2usize..10) {
        let g = Graph::complete(n);
        let params = ContainerParams::with_minimal_ell(n, rational(1, 2), 1, 2).unwrap();
        prop_assert!(kw_fingerprint(&g, &VertexSet::full(n), &params).is_err());
    }
}
