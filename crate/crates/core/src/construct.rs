//! Seeded instance generators.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)` and consumes
//! the stream in a fixed order (pairs `(u, v)`, `u < v`, lexicographically),
//! so outputs are bit-identical across runs and platforms. A Bernoulli trial
//! with probability `a/b` is `gen_range(0..b) < a`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_int, rational, Rational};
use crate::graph::{Graph, UniformHypergraph};
use crate::tournament::Tournament;
use crate::vertex_set::{for_each_k_subset, VertexSet};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-instance seed: the splitmix64 finaliser applied to
/// `seed + (index + 1)·0x9E3779B97F4A7C15`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Probability `a/b` with both parts fitting in `u64`.
#[derive(Clone, Copy, Debug)]
struct Coin {
    num: u64,
    den: u64,
}

impl Coin {
    fn new(p: &Rational) -> Result<Coin> {
        if p.is_negative() || *p > Rational::one() {
            return Err(Error::param(format!("probability must lie in [0, 1], got {p}")));
        }
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => Ok(Coin { num, den }),
            _ => Err(Error::param(format!("probability {p} has parts wider than 64 bits"))),
        }
    }

    #[inline]
    fn flip(&self, rng: &mut ChaCha8Rng) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn gnp(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    let coin = Coin::new(p)?;
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if coin.flip(&mut rng) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Uniformly random tournament: for each pair `u < v`, `u` beats `v` when
/// `gen_range(0..2) == 0`.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = rng_from_seed(seed);
    Tournament::from_fn(n, |_, _| rng.gen_range(0..2u32) == 0)
}

/// Random r-uniform hypergraph: every r-subset, in lexicographic order, is an
/// edge with probability `p`.
pub fn random_uniform_hypergraph(n: usize, r: usize, p: &Rational, seed: u64) -> Result<UniformHypergraph> {
    if r < 2 || r > n.max(2) {
        return Err(Error::param(format!("uniformity {r} is not valid for {n} vertices")));
    }
    let coin = Coin::new(p)?;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    let mut combo: Vec<usize> = (0..r).collect();
    if r <= n {
        loop {
            if coin.flip(&mut rng) {
                edges.push(combo.clone());
            }
            // next combination in lexicographic order
            let Some(i) = (0..r).rev().find(|&i| combo[i] < n - r + i) else { break };
            combo[i] += 1;
            for j in (i + 1)..r {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    UniformHypergraph::new(r, n, edges)
}

/// Complete multipartite graph with contiguous parts of the given sizes.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph> {
    if part_sizes.contains(&0) {
        return Err(Error::param("part sizes must be positive"));
    }
    let n = part_sizes.iter().sum();
    let part_of: Vec<usize> = part_sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Sizes of an equitable partition of `n` into `s` parts, larger parts first.
pub fn equitable_sizes(n: usize, s: usize) -> Vec<usize> {
    (0..s).map(|i| n / s + usize::from(i < n % s)).collect()
}

/// Random cograph: a random binary union/join tree over the vertices, then a
/// random relabeling.
pub fn random_cograph(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("cograph needs at least one vertex"));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    // each stack entry is a contiguous block [lo, hi) still to be split
    let mut blocks = vec![(0usize, n)];
    while let Some((lo, hi)) = blocks.pop() {
        if hi - lo < 2 {
            continue;
        }
        let mid = rng.gen_range(lo + 1..hi);
        if rng.gen_range(0..2u32) == 1 {
            for u in lo..mid {
                for v in mid..hi {
                    g.add_edge(u, v);
                }
            }
        }
        blocks.push((lo, mid));
        blocks.push((mid, hi));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm)
}

/// Random bipartite graph: a uniformly shuffled balanced split, then each
/// cross pair an edge with probability `p`.
pub fn random_bipartite(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("bipartite graph needs at least one vertex"));
    }
    let coin = Coin::new(p)?;
    let mut rng = rng_from_seed(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut side = vec![false; n];
    for &v in &order[..n / 2] {
        side[v] = true;
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if side[u] != side[v] && coin.flip(&mut rng) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Proper 2-colouring if one exists.
pub fn two_coloring(g: &Graph) -> Option<Vec<bool>> {
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = color[v].expect("colored");
            for w in g.neighbors(v).iter() {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(cw) if cw == c => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.expect("colored")).collect())
}

// ---------------------------------------------------------------------------
// Extremal construction for induced P4 counts
// ---------------------------------------------------------------------------

/// Tuning for [`p4_sparse_construct`]. `C_ε` and `ε₀` have no canonical
/// values; these defaults are heuristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4SparseConfig {
    /// Above this `ε` the construction is plain `G(n, 1/2)`.
    #[serde(with = "crate::exact::rational_str")]
    pub eps0: Rational,
    /// Constant in the audited size floor `C_ε ln n`; `None` means `20/ε²`.
    #[serde(default, with = "option_rational")]
    pub c_eps: Option<Rational>,
    pub samples_per_bucket: usize,
    pub exhaustive_max_n: usize,
    pub max_attempts: usize,
}

impl Default for P4SparseConfig {
    fn default() -> Self {
        P4SparseConfig { eps0: rational(1, 4), c_eps: None, samples_per_bucket: 10_000, exhaustive_max_n: 22, max_attempts: 5 }
    }
}

mod option_rational {
    use super::Rational;
    use crate::exact::parse_rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?.map(|t| parse_rational(&t).map_err(D::Error::custom)).transpose()
    }
}

/// Density audit of the base graph over subsets of at least `C_ε ln n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityAudit {
    /// `⌈C_ε ln n⌉`; `None` when it exceeds `n` (nothing to audit).
    pub min_size: Option<usize>,
    pub exhaustive: bool,
    pub subsets_checked: u64,
    pub failures: u64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct P4SparseArtifact {
    pub graph: Graph,
    /// The sampled base graph before the cross edges were added.
    pub base: Graph,
    pub parts: Vec<Vec<usize>>,
    /// Edge probability of the base graph (`2ε`, or `1/2` above `ε₀`).
    pub base_density: Rational,
    pub s: usize,
    pub audit: DensityAudit,
    pub attempts: usize,
}

/// `max(1, round(1/(5ε)))`, halves rounded up.
pub fn part_count(epsilon: &Rational) -> usize {
    let x = (rat_int(5) * epsilon).recip();
    let rounded = (x + rational(1, 2)).floor().to_integer();
    rounded.to_usize().unwrap_or(usize::MAX).max(1)
}

/// `⌈c ln n⌉`, evaluated with a rigorous enclosure of `ln n`.
fn audit_floor(c: &Rational, n: usize) -> usize {
    let mut prec = 64;
    loop {
        let ln = crate::exact::ln_enclosure(&rat_int(n as i64), prec);
        let scaled = crate::exact::Enclosure::new(&ln.lo * c, &ln.hi * c);
        if let Some(v) = scaled.ceil_exact() {
            return v.to_usize().unwrap_or(usize::MAX);
        }
        prec *= 2;
    }
}

fn audit_base(g0: &Graph, epsilon: &Rational, min_size: Option<usize>, config: &P4SparseConfig, seed: u64) -> DensityAudit {
    let n = g0.n();
    let Some(m0) = min_size.filter(|&m| m <= n && m >= 2) else {
        return DensityAudit { min_size: min_size.filter(|&m| m <= n), exhaustive: true, subsets_checked: 0, failures: 0, passed: true };
    };
    let lo = epsilon.clone();
    let hi = rat_int(3) * epsilon;
    let density_ok = |edges: usize, size: usize| {
        let pairs = (size * (size - 1) / 2) as i64;
        let d = Rational::new((edges as i64).into(), pairs.into());
        d > lo && d < hi
    };
    let mut checked = 0u64;
    let mut failures = 0u64;
    let exhaustive = n <= config.exhaustive_max_n;
    if exhaustive {
        let adj = g0.masks().expect("small graph");
        for size in m0..=n {
            for_each_k_subset(n, size, |mask| {
                let twice: u32 = crate::vertex_set::mask_bits(mask).map(|v| (adj[v] & mask).count_ones()).sum();
                checked += 1;
                if !density_ok(twice as usize / 2, size) {
                    failures += 1;
                }
                true
            });
        }
    } else {
        let mut rng = rng_from_seed(derive_seed(seed, u64::MAX));
        let mut bucket_lo = m0;
        while bucket_lo <= n {
            let bucket_hi = (bucket_lo * 2).min(n + 1);
            for _ in 0..config.samples_per_bucket {
                let size = rng.gen_range(bucket_lo..bucket_hi);
                let members = rand::seq::index::sample(&mut rng, n, size);
                let set = VertexSet::from_vertices(n, members.into_iter()).expect("in range");
                checked += 1;
                if !density_ok(g0.edges_within(&set), size) {
                    failures += 1;
                }
            }
            bucket_lo = bucket_hi;
        }
    }
    DensityAudit { min_size: Some(m0), exhaustive, subsets_checked: checked, failures, passed: failures == 0 }
}

/// Graph with few induced `P4`s and no large homogeneous-looking sets:
/// `G_0 = G(n, 2ε)`, equitably split into `s` contiguous parts, with every
/// cross-part pair added. `G_0` is resampled (seeds derived from `seed`)
/// while its density audit fails.
pub fn p4_sparse_construct(n: usize, epsilon: &Rational, seed: u64, config: &P4SparseConfig) -> Result<P4SparseArtifact> {
    if !epsilon.is_positive() || *epsilon >= rational(1, 2) {
        return Err(Error::param(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    let plain = *epsilon >= config.eps0;
    let s = if plain { 1 } else { part_count(epsilon) };
    if n < s {
        return Err(Error::param(format!("need at least s = {s} vertices, got {n}")));
    }
    let base_density = if plain { rational(1, 2) } else { rat_int(2) * epsilon };
    let c = config.c_eps.clone().unwrap_or_else(|| rat_int(20) / (epsilon * epsilon));
    let min_size = if n >= 2 { Some(audit_floor(&c, n)) } else { None };
    let sizes = equitable_sizes(n, s);
    let mut parts = Vec::with_capacity(s);
    let mut next = 0;
    for &size in &sizes {
        parts.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let mut last_audit = None;
    for attempt in 0..config.max_attempts.max(1) {
        let attempt_seed = if attempt == 0 { seed } else { derive_seed(seed, attempt as u64) };
        let base = gnp(n, &base_density, attempt_seed)?;
        let audit = if plain {
            DensityAudit { min_size: None, exhaustive: true, subsets_checked: 0, failures: 0, passed: true }
        } else {
            audit_base(&base, epsilon, min_size, config, attempt_seed)
        };
        if audit.passed {
            let mut graph = base.clone();
            for (i, a) in parts.iter().enumerate() {
                for b in &parts[i + 1..] {
                    for &u in a {
                        for &v in b {
                            graph.add_edge(u, v);
                        }
                    }
                }
            }
            return Ok(P4SparseArtifact { graph, base, parts, base_density, s, audit, attempts: attempt + 1 });
        }
        last_audit = Some(audit);
    }
    let audit = last_audit.expect("at least one attempt");
    Err(Error::ConstructionFailure {
        attempts: config.max_attempts.max(1),
        detail: format!(
            "density audit failed on {} of {} subsets of size >= {:?}",
            audit.failures, audit.subsets_checked, audit.min_size
        ),
    })
}

/// Induced `P4` audit of a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P4Audit {
    pub subsets: usize,
    pub embeddings: u64,
    /// Every induced `P4` has all four vertices in one part.
    pub within_parts: bool,
}

impl P4SparseArtifact {
    /// Exact scan of all 4-subsets for induced `P4`s.
    pub fn audit_p4(&self) -> P4Audit {
        let mut part_of = vec![0; self.graph.n()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                part_of[v] = i;
            }
        }
        let copies = crate::induced::induced_copy_sets(&self.graph, &crate::graph::named::path(4));
        let within_parts = copies.iter().all(|c| c.iter().all(|&v| part_of[v] == part_of[c[0]]));
        P4Audit { subsets: copies.len(), embeddings: 2 * copies.len() as u64, within_parts }
    }
}

/// Flips `flips` distinct vertex pairs chosen uniformly (a seeded shuffle of
/// the lexicographic pair list). Returns the graph and the flipped pairs.
pub fn perturb_edges(g: &Graph, flips: usize, seed: u64) -> Result<(Graph, Vec<(usize, usize)>)> {
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    if flips > pairs.len() {
        return Err(Error::param(format!("cannot flip {flips} of {} pairs", pairs.len())));
    }
    let mut rng = rng_from_seed(seed);
    let (chosen, _) = pairs.partial_shuffle(&mut rng, flips);
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    let mut out = g.clone();
    for &(u, v) in &chosen {
        out.toggle_edge(u, v);
    }
    Ok((out, chosen))
}

/// `(n² - Σ size²) / (n(n-1))`, the edge density of a complete multipartite graph.
pub fn multipartite_density(part_sizes: &[usize]) -> Rational {
    let n: usize = part_sizes.iter().sum();
    let squares: usize = part_sizes.iter().map(|s| s * s).sum();
    if n < 2 {
        return Rational::zero();
    }
    Rational::new(((n * n - squares) as i64).into(), ((n * (n - 1)) as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induced::contains_induced;

    #[test]
    fn gnp_extremes() {
        assert_eq!(gnp(10, &rat_int(0), 3).unwrap(), Graph::empty(10));
        assert_eq!(gnp(10, &rat_int(1), 3).unwrap(), Graph::complete(10));
        assert!(gnp(10, &rational(3, 2), 3).is_err());
        assert_eq!(gnp(30, &rational(1, 2), 9).unwrap(), gnp(30, &rational(1, 2), 9).unwrap());
        assert_ne!(gnp(30, &rational(1, 2), 9).unwrap(), gnp(30, &rational(1, 2), 10).unwrap());
    }

    #[test]
    fn part_counts() {
        assert_eq!(part_count(&rational(1, 20)), 4);
        assert_eq!(part_count(&rational(1, 10)), 2);
        assert_eq!(part_count(&rational(3, 10)), 1);
        assert_eq!(part_count(&rational(1, 100)), 20);
    }

    #[test]
    fn multipartite_examples() {
        assert_eq!(complete_multipartite(&[5]).unwrap(), Graph::empty(5));
        assert_eq!(complete_multipartite(&[1; 6]).unwrap(), Graph::complete(6));
        let g = complete_multipartite(&[2, 2, 2, 2]).unwrap();
        assert_eq!(g.edge_density().unwrap(), rational(24, 28));
        assert_eq!(g.edge_density().unwrap(), multipartite_density(&[2, 2, 2, 2]));
        assert!(complete_multipartite(&[2, 0]).is_err());
    }

    #[test]
    fn cographs_and_bipartite() {
        let p4 = crate::graph::named::path(4);
        for seed in 0..40 {
            let g = random_cograph(12, seed).unwrap();
            assert!(!contains_induced(&g, &p4));
            let b = random_bipartite(12, &rational(1, 2), seed).unwrap();
            assert!(two_coloring(&b).is_some());
        }
        assert!(two_coloring(&crate::graph::named::cycle(5)).is_none());
    }

    #[test]
    fn hypergraph_generator() {
        let h = random_uniform_hypergraph(6, 3, &rat_int(1), 0).unwrap();
        assert_eq!(h.edge_count(), 20);
        let h = random_uniform_hypergraph(6, 3, &rat_int(0), 0).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert!(random_uniform_hypergraph(4, 5, &rat_int(1), 0).is_err());
    }

    #[test]
    fn tournament_determinism() {
        assert_eq!(random_tournament(1, 5).n(), 1);
        assert_eq!(random_tournament(15, 5), random_tournament(15, 5));
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn p4_sparse_small() {
        let art = p4_sparse_construct(40, &rational(1, 20), 1, &P4SparseConfig::default()).unwrap();
        assert_eq!(art.s, 4);
        assert_eq!(art.parts.iter().map(Vec::len).collect::<Vec<_>>(), vec![10; 4]);
        // 20/ε² · ln 40 far exceeds 40: nothing to audit
        assert_eq!(art.audit.min_size, None);
        for (i, a) in art.parts.iter().enumerate() {
            for b in &art.parts[i + 1..] {
                assert!(a.iter().all(|&u| b.iter().all(|&v| art.graph.has_edge(u, v))));
            }
        }
        for (u, v) in art.base.edges() {
            assert!(art.graph.has_edge(u, v));
        }
        let plain = p4_sparse_construct(20, &rational(3, 10), 1, &P4SparseConfig::default()).unwrap();
        assert_eq!(plain.s, 1);
        assert_eq!(plain.graph, plain.base);
        assert!(p4_sparse_construct(3, &rational(1, 100), 1, &P4SparseConfig::default()).is_err());
        assert!(p4_sparse_construct(30, &rational(1, 2), 1, &P4SparseConfig::default()).is_err());
        let audit = art.audit_p4();
        assert!(audit.within_parts);
        assert_eq!(audit.embeddings, 2 * audit.subsets as u64);
    }

    #[test]
    fn perturbation_flips_exactly() {
        let g = random_cograph(12, 5).unwrap();
        let (h, flipped) = perturb_edges(&g, 7, 9).unwrap();
        assert_eq!(flipped.len(), 7);
        let diff = g.edges().iter().filter(|e| !h.has_edge(e.0, e.1)).count() + h.edges().iter().filter(|e| !g.has_edge(e.0, e.1)).count();
        assert_eq!(diff, 7);
        assert_eq!(perturb_edges(&g, 7, 9).unwrap().0, h);
        assert!(perturb_edges(&g, 67, 9).is_err());
    }

    #[test]
    fn p4_sparse_audit_runs_when_floor_is_small() {
        // c = 1 gives ⌈ln 20⌉ = 3, and some triple of G(20, 1/5) spans no edge
        // so its density falls below ε.
        let config = P4SparseConfig { c_eps: Some(rational(1, 1)), max_attempts: 2, ..P4SparseConfig::default() };
        let err = p4_sparse_construct(20, &rational(1, 10), 4, &config).unwrap_err();
        assert!(matches!(err, Error::ConstructionFailure { attempts: 2, .. }));
    }
}
