//! Independent-set containers: the graph fingerprint (max-degree peeling),
//! the r-uniform scythe fingerprint, the counting bounds they certify, and
//! exact independent-set enumeration used to check those bounds.

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{binomial, ceil_sqrt, ceil_to_uint, rat_int, rational_pow, Rational};
use crate::graph::{Graph, UniformHypergraph};
use crate::vertex_set::{for_each_k_subset, mask_bits, VertexSet};

/// Largest vertex count for which exhaustive subset scans are attempted.
pub const EXHAUSTIVE_MAX_N: usize = 24;

/// Largest vertex count accepted by [`graph_soundness_sweep`].
pub const SWEEP_MAX_N: usize = 7;

/// A graph or an r-uniform hypergraph, viewed as a set system.
#[derive(Clone, Copy, Debug)]
pub enum System<'a> {
    Graph(&'a Graph),
    Hypergraph(&'a UniformHypergraph),
}

impl<'a> From<&'a Graph> for System<'a> {
    fn from(g: &'a Graph) -> Self {
        System::Graph(g)
    }
}

impl<'a> From<&'a UniformHypergraph> for System<'a> {
    fn from(h: &'a UniformHypergraph) -> Self {
        System::Hypergraph(h)
    }
}

impl System<'_> {
    pub fn n(&self) -> usize {
        match self {
            System::Graph(g) => g.n(),
            System::Hypergraph(h) => h.n(),
        }
    }

    pub fn r(&self) -> usize {
        match self {
            System::Graph(_) => 2,
            System::Hypergraph(h) => h.r(),
        }
    }

    /// Largest number of edges of the induced system on `s` through one vertex.
    pub fn max_degree_in(&self, s: &VertexSet) -> usize {
        match self {
            System::Graph(g) => s.iter().map(|v| g.degree_within(v, s)).max().unwrap_or(0),
            System::Hypergraph(h) => h.max_degree_within(s),
        }
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        match self {
            System::Graph(g) => g.is_independent(s),
            System::Hypergraph(h) => h.is_independent(s),
        }
    }

    fn mask_form(&self) -> Option<MaskForm> {
        if self.n() > 64 {
            return None;
        }
        Some(match self {
            System::Graph(g) => MaskForm::Graph(g.masks().expect("n <= 64")),
            System::Hypergraph(h) => MaskForm::Hyper(h.edge_sets().iter().map(VertexSet::mask).collect()),
        })
    }
}

/// Bit-mask view of a small set system.
enum MaskForm {
    Graph(Vec<u64>),
    Hyper(Vec<u64>),
}

impl MaskForm {
    #[inline]
    fn max_degree(&self, s: u64) -> usize {
        match self {
            MaskForm::Graph(adj) => mask_bits(s).map(|v| (adj[v] & s).count_ones() as usize).max().unwrap_or(0),
            MaskForm::Hyper(edges) => {
                let mut deg = [0usize; 64];
                for &e in edges {
                    if e & s == e {
                        for v in mask_bits(e) {
                            deg[v] += 1;
                        }
                    }
                }
                mask_bits(s).map(|v| deg[v]).max().unwrap_or(0)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Container parameters `(ε, u, ℓ, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerParams {
    pub epsilon: Rational,
    pub u: usize,
    pub ell: usize,
    pub k: usize,
}

fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if !epsilon.is_positive() || *epsilon > Rational::one() {
        return Err(Error::param(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    Ok(())
}

/// Smallest `ℓ` with `(1-ε)^ℓ · n <= u`.
pub fn minimal_ell(n: usize, epsilon: &Rational, u: usize) -> Result<usize> {
    check_epsilon(epsilon)?;
    if u == 0 {
        return Err(Error::param("container size cap u must be positive"));
    }
    let keep = Rational::one() - epsilon;
    let target = rat_int(u as i64);
    let mut size = rat_int(n as i64);
    let mut ell = 0;
    while size > target {
        size *= &keep;
        ell += 1;
    }
    Ok(ell)
}

impl ContainerParams {
    pub fn new(epsilon: Rational, u: usize, ell: usize, k: usize) -> Result<Self> {
        check_epsilon(&epsilon)?;
        if u == 0 {
            return Err(Error::param("container size cap u must be positive"));
        }
        Ok(ContainerParams { epsilon, u, ell, k })
    }

    /// Parameters with `ℓ` chosen by [`minimal_ell`].
    pub fn with_minimal_ell(n: usize, epsilon: Rational, u: usize, k: usize) -> Result<Self> {
        let ell = minimal_ell(n, &epsilon, u)?;
        Self::new(epsilon, u, ell, k)
    }

    /// `(1-ε)^ℓ · n <= u`, exactly.
    pub fn shrinks_to_cap(&self, n: usize) -> bool {
        let keep = Rational::one() - &self.epsilon;
        rational_pow(&keep, self.ell as u64) * rat_int(n as i64) <= rat_int(self.u as i64)
    }

    /// Checks the graph-case preconditions for a host on `n` vertices.
    pub fn validate_graph(&self, n: usize) -> Result<()> {
        self.validate_uniform(n, 2)
    }

    /// Checks the r-uniform preconditions (`k >= (r-1)ℓ` and the shrink condition).
    pub fn validate_uniform(&self, n: usize, r: usize) -> Result<()> {
        check_epsilon(&self.epsilon)?;
        if r < 2 {
            return Err(Error::param(format!("uniformity must be at least 2, got {r}")));
        }
        if self.u == 0 {
            return Err(Error::param("container size cap u must be positive"));
        }
        if self.k < (r - 1) * self.ell {
            return Err(Error::param(format!("k = {} is below (r-1)·ℓ = {}", self.k, (r - 1) * self.ell)));
        }
        if !self.shrinks_to_cap(n) {
            return Err(Error::param(format!(
                "(1-ε)^ℓ·n > u for ε = {}, ℓ = {}, n = {n}, u = {}",
                self.epsilon, self.ell, self.u
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// `C(n, ℓ) · C(u, k-ℓ)`.
pub fn kw_bound(n: usize, params: &ContainerParams) -> Result<BigUint> {
    params.validate_graph(n)?;
    Ok(binomial(n as u64, params.ell as u64) * binomial(params.u as u64, (params.k - params.ell) as u64))
}

/// `⌈2^ℓ (u/n)^((ℓ-1)/2) C(n, ℓ) C(u, k-ℓ)⌉`, computed exactly as the ceiling
/// square root of `A² (u/n)^(ℓ-1)` with `A = 2^ℓ C(n, ℓ) C(u, k-ℓ)`.
pub fn kw_bound_improved(n: usize, params: &ContainerParams) -> Result<BigUint> {
    params.validate_graph(n)?;
    if n == 0 {
        return Ok(binomial(params.u as u64, params.k as u64));
    }
    let a = (BigUint::one() << params.ell) * kw_bound(n, params)?;
    let a = Rational::from_integer(a.into());
    let ratio = Rational::new((params.u as i64).into(), (n as i64).into());
    let q = if params.ell == 0 { ratio.recip() } else { rational_pow(&ratio, params.ell as u64 - 1) };
    Ok(ceil_sqrt(&(&a * &a * q)))
}

/// `C(n, (r-1)ℓ) · C(u, k-(r-1)ℓ)`.
pub fn hypergraph_bound(n: usize, r: usize, params: &ContainerParams) -> Result<BigUint> {
    params.validate_uniform(n, r)?;
    let taken = ((r - 1) * params.ell) as u64;
    Ok(binomial(n as u64, taken) * binomial(params.u as u64, params.k as u64 - taken))
}

// ---------------------------------------------------------------------------
// Exact independent-set counts
// ---------------------------------------------------------------------------

fn count_graph_masks(adj: &[u64], cand: u64, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    let c = cand.count_ones() as usize;
    if c < k {
        return 0;
    }
    if k == 1 {
        return c as u64;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & (cand - 1);
    count_graph_masks(adj, rest & !adj[v], k - 1) + count_graph_masks(adj, rest, k)
}

fn count_graph_sets(g: &Graph, cand: &VertexSet, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    let c = cand.len();
    if c < k {
        return 0;
    }
    if k == 1 {
        return c as u128;
    }
    let v = cand.first().expect("nonempty");
    let mut rest = cand.clone();
    rest.remove(v);
    let without = rest.difference(g.neighbors(v));
    count_graph_sets(g, &without, k - 1) + count_graph_sets(g, &rest, k)
}

/// `by_max[v]` holds the edges whose largest vertex is `v`.
fn edges_by_max(h: &UniformHypergraph) -> Vec<Vec<VertexSet>> {
    let mut by_max = vec![Vec::new(); h.n()];
    for (e, set) in h.edges().iter().zip(h.edge_sets()) {
        by_max[*e.last().expect("r >= 2")].push(set.clone());
    }
    by_max
}

fn count_hyper_masks(by_max: &[Vec<u64>], n: usize, start: usize, chosen: u64, remaining: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for v in start..=(n - remaining) {
        let next = chosen | (1u64 << v);
        if by_max[v].iter().any(|&e| e & next == e) {
            continue;
        }
        total += count_hyper_masks(by_max, n, v + 1, next, remaining - 1);
    }
    total
}

fn count_hyper_sets(by_max: &[Vec<VertexSet>], n: usize, start: usize, chosen: &mut VertexSet, remaining: usize) -> u128 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for v in start..=(n - remaining) {
        chosen.insert(v);
        if !by_max[v].iter().any(|e| e.is_subset(chosen)) {
            total += count_hyper_sets(by_max, n, v + 1, chosen, remaining - 1);
        }
        chosen.remove(v);
    }
    total
}

/// Number of `k`-subsets spanning no edge.
pub fn count_independent_sets_exact<'a>(sys: impl Into<System<'a>>, k: usize) -> BigUint {
    let sys = sys.into();
    let n = sys.n();
    if k > n {
        return BigUint::zero();
    }
    match sys {
        System::Graph(g) => match g.masks() {
            Some(adj) => {
                let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                BigUint::from(count_graph_masks(&adj, full, k))
            }
            None => BigUint::from(count_graph_sets(g, &g.vertex_set(), k)),
        },
        System::Hypergraph(h) => {
            if k == 0 {
                return BigUint::one();
            }
            let by_max = edges_by_max(h);
            if n <= 64 {
                let masks: Vec<Vec<u64>> = by_max.iter().map(|es| es.iter().map(VertexSet::mask).collect()).collect();
                BigUint::from(count_hyper_masks(&masks, n, 0, 0, k))
            } else {
                BigUint::from(count_hyper_sets(&by_max, n, 0, &mut VertexSet::empty(n), k))
            }
        }
    }
}

/// Independent-set counts of every order `0..=n`, by enumerating all
/// independent sets once. Exponential in the independence number.
pub fn independent_set_profile<'a>(sys: impl Into<System<'a>>) -> Vec<BigUint> {
    let sys = sys.into();
    (0..=sys.n()).map(|k| count_independent_sets_exact(sys, k)).collect()
}

// ---------------------------------------------------------------------------
// Degree precondition
// ---------------------------------------------------------------------------

/// Which form of the max-degree hypothesis to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeVariant {
    /// Every `S` with `|S| >= u` has max degree `>= ε|S| - 1` (graphs only).
    Graph,
    /// Every `S` with `|S| > u` has max degree `>= ε(|S|-1)^(r-1)`.
    Hypergraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    /// Random qualifying subsets; a `true` verdict is not a proof.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreconditionReport {
    pub holds: bool,
    /// First violating subset found (exhaustive mode: smallest size, then smallest mask).
    pub witness: Option<VertexSet>,
    pub exhaustive: bool,
    pub subsets_checked: u64,
}

/// Minimal integer max degree demanded of subsets of each size; `None` for
/// sizes the hypothesis does not constrain.
fn degree_thresholds(n: usize, r: usize, epsilon: &Rational, u: usize, variant: DegreeVariant) -> Vec<Option<u64>> {
    (0..=n)
        .map(|s| {
            let threshold = match variant {
                DegreeVariant::Graph if s >= u => epsilon * rat_int(s as i64) - Rational::one(),
                DegreeVariant::Hypergraph if s > u => {
                    epsilon * rational_pow(&rat_int(s as i64 - 1), (r - 1) as u64)
                }
                _ => return None,
            };
            Some(ceil_to_uint(&threshold).map_or(0, |c| c.to_u64().unwrap_or(u64::MAX)))
        })
        .collect()
}

fn check_variant(sys: &System<'_>, variant: DegreeVariant) -> Result<()> {
    if variant == DegreeVariant::Graph && sys.r() != 2 {
        return Err(Error::param("the graph degree variant applies only to graphs"));
    }
    Ok(())
}

/// Tests the max-degree hypothesis over qualifying subsets.
pub fn verify_degree_precondition<'a>(
    sys: impl Into<System<'a>>,
    epsilon: &Rational,
    u: usize,
    variant: DegreeVariant,
    mode: CheckMode,
) -> Result<PreconditionReport> {
    let sys = sys.into();
    check_epsilon(epsilon)?;
    check_variant(&sys, variant)?;
    let n = sys.n();
    let thresholds = degree_thresholds(n, sys.r(), epsilon, u, variant);
    match mode {
        CheckMode::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(Error::capability(format!(
                    "exhaustive precondition check is limited to {EXHAUSTIVE_MAX_N} vertices (got {n}); use sampled mode"
                )));
            }
            let form = sys.mask_form().expect("n <= 64");
            let mut checked = 0u64;
            for (s, need) in thresholds.iter().enumerate() {
                let Some(need) = *need else { continue };
                let mut witness = None;
                for_each_k_subset(n, s, |mask| {
                    checked += 1;
                    if (form.max_degree(mask) as u64) < need {
                        witness = Some(mask);
                        return false;
                    }
                    true
                });
                if let Some(mask) = witness {
                    return Ok(PreconditionReport {
                        holds: false,
                        witness: Some(VertexSet::from_mask(n, mask)),
                        exhaustive: true,
                        subsets_checked: checked,
                    });
                }
            }
            Ok(PreconditionReport { holds: true, witness: None, exhaustive: true, subsets_checked: checked })
        }
        CheckMode::Sampled { samples, seed } => {
            let sizes: Vec<usize> = (0..=n).filter(|&s| thresholds[s].is_some()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            if !sizes.is_empty() {
                for _ in 0..samples {
                    let s = sizes[rng.gen_range(0..sizes.len())];
                    let set = VertexSet::from_vertices(n, sample(&mut rng, n, s).into_iter())?;
                    checked += 1;
                    if (sys.max_degree_in(&set) as u64) < thresholds[s].expect("qualifying size") {
                        return Ok(PreconditionReport {
                            holds: false,
                            witness: Some(set),
                            exhaustive: false,
                            subsets_checked: checked,
                        });
                    }
                }
            }
            Ok(PreconditionReport { holds: true, witness: None, exhaustive: false, subsets_checked: checked })
        }
    }
}

/// Largest `ε` in `(0, 1]` for which the hypothesis holds, by exhaustive scan.
/// `None` when no positive `ε` works (some qualifying subset has max degree 0
/// in the hypergraph variant).
pub fn precondition_epsilon<'a>(sys: impl Into<System<'a>>, u: usize, variant: DegreeVariant) -> Result<Option<Rational>> {
    let sys = sys.into();
    check_variant(&sys, variant)?;
    let n = sys.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::capability(format!("exhaustive scan is limited to {EXHAUSTIVE_MAX_N} vertices (got {n})")));
    }
    let form = sys.mask_form().expect("n <= 64");
    let r = sys.r();
    let mut best = Rational::one();
    for s in 0..=n {
        let qualifies = match variant {
            DegreeVariant::Graph => s >= u && s > 0,
            DegreeVariant::Hypergraph => s > u && s > 1,
        };
        if !qualifies {
            continue;
        }
        let mut min_deg = usize::MAX;
        for_each_k_subset(n, s, |mask| {
            min_deg = min_deg.min(form.max_degree(mask));
            min_deg > 0 || variant == DegreeVariant::Graph
        });
        let ratio = match variant {
            DegreeVariant::Graph => Rational::new((min_deg as i64 + 1).into(), (s as i64).into()),
            DegreeVariant::Hypergraph => {
                Rational::new((min_deg as i64).into(), 1.into()) / rational_pow(&rat_int(s as i64 - 1), (r - 1) as u64)
            }
        };
        if ratio.is_zero() {
            return Ok(None);
        }
        if ratio < best {
            best = ratio;
        }
    }
    Ok(Some(best))
}

// ---------------------------------------------------------------------------
// Fingerprints
// ---------------------------------------------------------------------------

/// Candidate-set sizes around one segment extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub size_before: usize,
    pub size_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FingerprintTrace {
    /// Ordered segments; single vertices in the graph case, `(r-1)`-tuples otherwise.
    pub segments: Vec<Vec<usize>>,
    pub container: VertexSet,
    /// Vertices discarded during the run (neither in a segment nor in the container).
    pub removed: VertexSet,
    pub rounds: Vec<RoundRecord>,
}

impl FingerprintTrace {
    pub fn segment_union(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.container.universe());
        for v in self.segments.iter().flatten() {
            out.insert(*v);
        }
        out
    }

    /// Containment, disjointness and segment budget.
    pub fn check_invariants(&self, i: &VertexSet, ell: usize) -> Result<()> {
        let n = self.container.universe();
        let union = self.segment_union();
        let listed: usize = self.segments.iter().map(Vec::len).sum();
        if listed != union.len() {
            return Err(Error::Consistency("segments overlap".into()));
        }
        if self.segments.len() > ell {
            return Err(Error::Consistency(format!("{} segments exceed budget {ell}", self.segments.len())));
        }
        if !union.is_disjoint(&self.container) || !union.is_disjoint(&self.removed) || !self.container.is_disjoint(&self.removed) {
            return Err(Error::Consistency("segments, container and removed set are not disjoint".into()));
        }
        if union.len() + self.container.len() + self.removed.len() != n {
            return Err(Error::Consistency("segments, container and removed set do not cover the vertex set".into()));
        }
        if !i.is_subset(&union.union(&self.container)) {
            return Err(Error::Consistency("independent set escapes segments and container".into()));
        }
        Ok(())
    }

    /// Every round shrank the candidate set by a factor `1-ε` or better.
    pub fn shrinkage_holds(&self, epsilon: &Rational) -> bool {
        let keep = Rational::one() - epsilon;
        self.rounds
            .iter()
            .all(|r| rat_int(r.size_after as i64) <= &keep * rat_int(r.size_before as i64))
    }
}

fn check_graph_fingerprint_input(g: &Graph, i: &VertexSet) -> Result<()> {
    if i.universe() != g.n() {
        return Err(Error::input(format!("vertex set over {} vertices used with a graph on {}", i.universe(), g.n())));
    }
    if !g.is_independent(i) {
        return Err(Error::input("fingerprint input is not an independent set"));
    }
    Ok(())
}

/// Max-degree peeling fingerprint of an independent set `I` in a graph.
///
/// The current max-degree vertex `v` of the candidate graph (lowest index on
/// ties) is examined: if `v ∈ I` it becomes a segment and the candidates
/// shrink to its non-neighbours, otherwise `v` is discarded. Stops after `ℓ`
/// segments or once at most `u` candidates remain.
pub fn kw_fingerprint(g: &Graph, i: &VertexSet, params: &ContainerParams) -> Result<FingerprintTrace> {
    check_graph_fingerprint_input(g, i)?;
    let n = g.n();
    let mut cand = VertexSet::full(n);
    let mut removed = VertexSet::empty(n);
    let mut segments = Vec::new();
    let mut rounds = Vec::new();
    while segments.len() < params.ell && cand.len() > params.u {
        let mut best = None;
        let mut best_deg = 0;
        for v in cand.iter() {
            let d = g.degree_within(v, &cand);
            if best.is_none() || d > best_deg {
                best = Some(v);
                best_deg = d;
            }
        }
        let v = best.expect("candidate set is nonempty");
        if i.contains(v) {
            let size_before = cand.len();
            let dropped = cand.intersection(g.neighbors(v));
            removed.union_with(&dropped);
            cand.difference_with(&dropped);
            cand.remove(v);
            segments.push(vec![v]);
            rounds.push(RoundRecord { size_before, size_after: cand.len() });
        } else {
            cand.remove(v);
            removed.insert(v);
        }
    }
    Ok(FingerprintTrace { segments, container: cand, removed, rounds })
}

/// The ordering `π_{U,J}` of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOrdering {
    pub order: Vec<usize>,
}

/// Link degrees `#{e : J ∪ {w} ⊆ e, e \ J ⊆ U}` for every `w ∈ U`, by a scan
/// of the edge list.
fn link_degrees(h: &UniformHypergraph, j: &VertexSet, u: &VertexSet, out: &mut [usize]) {
    out.iter_mut().for_each(|d| *d = 0);
    let ju = j.union(u);
    for e in h.edge_sets() {
        if j.is_subset(e) && e.is_subset(&ju) {
            for w in e.iter() {
                if !j.contains(w) {
                    out[w] += 1;
                }
            }
        }
    }
}

/// Next vertex of `π_{U,J}`: maximal link degree, lowest index on ties.
fn next_in_ordering(h: &UniformHypergraph, j: &VertexSet, u: &VertexSet, scratch: &mut [usize]) -> Option<usize> {
    link_degrees(h, j, u, scratch);
    let mut best = None;
    let mut best_deg = 0;
    for w in u.iter() {
        if best.is_none() || scratch[w] > best_deg {
            best = Some(w);
            best_deg = scratch[w];
        }
    }
    best
}

/// The full ordering `π_{U,J}`: each vertex maximises the link degree of
/// `J ∪ {w}` among the vertices of `U` not yet placed.
pub fn degree_ordering(h: &UniformHypergraph, u: &VertexSet, j: &[usize]) -> Result<DegreeOrdering> {
    let n = h.n();
    let j_set = VertexSet::from_vertices(n, j.iter().copied())?;
    if u.universe() != n {
        return Err(Error::input("vertex set universe does not match hypergraph"));
    }
    let mut rest = u.difference(&j_set);
    let mut scratch = vec![0; n];
    let mut order = Vec::with_capacity(rest.len());
    while let Some(w) = next_in_ordering(h, &j_set, &rest, &mut scratch) {
        order.push(w);
        rest.remove(w);
    }
    Ok(DegreeOrdering { order })
}

/// Scythe fingerprint of an independent set `I` in an r-uniform hypergraph.
///
/// Each round walks the orderings `π_{V∖A_{t-1}, {j_1..j_{t-1}}}` for
/// `t = 1..r-1`, taking `j_t` as the first vertex of `I` and discarding the
/// vertices before it, then discards every `w` with `{j_1..j_{r-1}, w}` an
/// edge. Rounds run while fewer than `ℓ` segments exist, more than `u`
/// vertices remain and `I` still has `r-1` vertices left. During the first
/// ordering the round is abandoned as soon as at most `u` vertices remain,
/// which makes `r = 2` coincide with [`kw_fingerprint`].
pub fn scythe_fingerprint(h: &UniformHypergraph, i: &VertexSet, params: &ContainerParams) -> Result<FingerprintTrace> {
    let n = h.n();
    let r = h.r();
    if i.universe() != n {
        return Err(Error::input(format!("vertex set over {} vertices used with a hypergraph on {n}", i.universe())));
    }
    if !h.is_independent(i) {
        return Err(Error::input("fingerprint input is not an independent set"));
    }
    let mut v_cur = VertexSet::full(n);
    let mut removed = VertexSet::empty(n);
    let mut i_rem = i.clone();
    let mut segments = Vec::new();
    let mut rounds = Vec::new();
    let mut scratch = vec![0; n];
    while segments.len() < params.ell && v_cur.len() > params.u && i_rem.intersection_len(&v_cur) >= r - 1 {
        let size_before = v_cur.len();
        let mut u_cur = v_cur.clone();
        let mut j_set = VertexSet::empty(n);
        let mut j_seq = Vec::with_capacity(r - 1);
        let mut discarded = VertexSet::empty(n);
        let mut abandoned = false;
        'orderings: for t in 1..r {
            loop {
                if t == 1 && u_cur.len() <= params.u {
                    abandoned = true;
                    break 'orderings;
                }
                let w = next_in_ordering(h, &j_set, &u_cur, &mut scratch)
                    .ok_or_else(|| Error::Consistency("ordering ran out before reaching an independent-set vertex".into()))?;
                u_cur.remove(w);
                if i_rem.contains(w) {
                    j_set.insert(w);
                    j_seq.push(w);
                    break;
                }
                discarded.insert(w);
            }
        }
        removed.union_with(&discarded);
        if abandoned {
            v_cur = u_cur;
            break;
        }
        // D': link neighbours of the whole segment
        let mut d_prime = VertexSet::empty(n);
        for (e, set) in h.edges().iter().zip(h.edge_sets()) {
            if j_set.is_subset(set) {
                for &w in e {
                    if !j_set.contains(w) && u_cur.contains(w) {
                        d_prime.insert(w);
                    }
                }
            }
        }
        u_cur.difference_with(&d_prime);
        removed.union_with(&d_prime);
        i_rem.difference_with(&j_set);
        v_cur = u_cur;
        rounds.push(RoundRecord { size_before, size_after: v_cur.len() });
        segments.push(j_seq);
    }
    Ok(FingerprintTrace { segments, container: v_cur, removed, rounds })
}

fn check_replay(union: &VertexSet, trace: &FingerprintTrace) -> Result<Vec<Vec<usize>>> {
    if trace.segment_union() != *union {
        return Err(Error::Consistency(format!(
            "replay recovered {:?} instead of {:?}",
            trace.segment_union(),
            union
        )));
    }
    Ok(trace.segments.clone())
}

/// Recovers the ordered graph segments from their unordered union by
/// replaying [`kw_fingerprint`] with the union as the independent set.
pub fn reconstruct_kw_segments(g: &Graph, union: &VertexSet, params: &ContainerParams) -> Result<Vec<Vec<usize>>> {
    if union.universe() != g.n() || !g.is_independent(union) {
        return Err(Error::Consistency("segment union is not an independent set of the graph".into()));
    }
    let trace = kw_fingerprint(g, union, params)?;
    check_replay(union, &trace)
}

/// Recovers the ordered scythe segments from their unordered union.
pub fn reconstruct_scythe_segments(h: &UniformHypergraph, union: &VertexSet, params: &ContainerParams) -> Result<Vec<Vec<usize>>> {
    if union.universe() != h.n() || !h.is_independent(union) {
        return Err(Error::Consistency("segment union is not an independent set of the hypergraph".into()));
    }
    let trace = scythe_fingerprint(h, union, params)?;
    check_replay(union, &trace)
}

// ---------------------------------------------------------------------------
// Exhaustive soundness sweep over small graphs
// ---------------------------------------------------------------------------

/// Aggregate over all labeled graphs on `n` vertices for one `(ε, u, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub epsilon: Rational,
    pub u: usize,
    pub ell: usize,
    pub k: usize,
    pub graphs: u64,
    /// Graphs satisfying the degree hypothesis.
    pub qualifying: u64,
    /// Largest independent-set count among qualifying graphs.
    pub max_count: u64,
    pub bound: BigUint,
    pub improved_bound: BigUint,
    pub violations: u64,
    pub improved_violations: u64,
    /// Pair code (see [`Graph::from_pair_code`]) of the first violating graph.
    pub first_violation: Option<u64>,
}

#[derive(Clone, Default)]
struct ComboTally {
    qualifying: u64,
    max_count: u64,
    violations: u64,
    improved_violations: u64,
    first_violation: Option<u64>,
}

impl ComboTally {
    fn merge(mut self, other: &ComboTally) -> ComboTally {
        self.qualifying += other.qualifying;
        self.max_count = self.max_count.max(other.max_count);
        self.violations += other.violations;
        self.improved_violations += other.improved_violations;
        self.first_violation = match (self.first_violation, other.first_violation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn graph_masks_from_code(n: usize, code: u64) -> [u64; SWEEP_MAX_N] {
    let mut adj = [0u64; SWEEP_MAX_N];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if (code >> bit) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    adj
}

/// Checks the graph container bound against exact counts for every labeled
/// graph on `n <= 7` vertices and every `(ε, u, k)` in the grid, with `ℓ`
/// minimal for `(n, ε, u)`. Combinations with `ℓ > k` are skipped.
pub fn graph_soundness_sweep(n: usize, eps_grid: &[Rational], u_grid: &[usize], k_grid: &[usize]) -> Result<Vec<SweepRow>> {
    if n > SWEEP_MAX_N {
        return Err(Error::capability(format!("soundness sweep is limited to {SWEEP_MAX_N} vertices (got {n})")));
    }
    // (ε, u) pairs with their thresholds, then the k values each admits
    struct Pair {
        thresholds: Vec<Option<u64>>,
        ks: Vec<(usize, u64, u64, usize)>, // (k, bound, improved, row index)
    }
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for eps in eps_grid {
        for &u in u_grid {
            let ell = minimal_ell(n, eps, u)?;
            let mut ks = Vec::new();
            for &k in k_grid {
                if ell > k {
                    continue;
                }
                let params = ContainerParams::new(eps.clone(), u, ell, k)?;
                let bound = kw_bound(n, &params)?;
                let improved = kw_bound_improved(n, &params)?;
                let as_u64 = |b: &BigUint| b.to_u64().unwrap_or(u64::MAX);
                ks.push((k, as_u64(&bound), as_u64(&improved), rows.len()));
                rows.push(SweepRow {
                    n,
                    epsilon: eps.clone(),
                    u,
                    ell,
                    k,
                    graphs: 0,
                    qualifying: 0,
                    max_count: 0,
                    bound,
                    improved_bound: improved,
                    violations: 0,
                    improved_violations: 0,
                    first_violation: None,
                });
            }
            pairs.push(Pair { thresholds: degree_thresholds(n, 2, eps, u, DegreeVariant::Graph), ks });
        }
    }
    let pair_bits = n * n.saturating_sub(1) / 2;
    let total: u64 = 1 << pair_bits;
    let subsets = 1usize << n;
    let row_count = rows.len();

    let tallies = (0..total)
        .into_par_iter()
        .fold(
            || vec![ComboTally::default(); row_count],
            |mut acc, code| {
                let adj = graph_masks_from_code(n, code);
                let mut is_count = [0u64; SWEEP_MAX_N + 1];
                let mut min_maxdeg = [u64::MAX; SWEEP_MAX_N + 1];
                for s in 0..subsets as u64 {
                    let size = s.count_ones() as usize;
                    let mut maxdeg = 0u32;
                    for v in mask_bits(s) {
                        maxdeg = maxdeg.max((adj[v] & s).count_ones());
                    }
                    if maxdeg == 0 {
                        is_count[size] += 1;
                    }
                    min_maxdeg[size] = min_maxdeg[size].min(maxdeg as u64);
                }
                for pair in &pairs {
                    let holds = pair
                        .thresholds
                        .iter()
                        .zip(min_maxdeg.iter())
                        .all(|(need, &have)| need.is_none_or(|need| have >= need));
                    if !holds {
                        continue;
                    }
                    for &(k, bound, improved, row) in &pair.ks {
                        let count = is_count[k];
                        let t = &mut acc[row];
                        t.qualifying += 1;
                        t.max_count = t.max_count.max(count);
                        if count > bound {
                            t.violations += 1;
                            t.first_violation = Some(t.first_violation.map_or(code, |c| c.min(code)));
                        }
                        if count > improved {
                            t.improved_violations += 1;
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![ComboTally::default(); row_count],
            |a, b| a.into_iter().zip(&b).map(|(x, y)| x.merge(y)).collect(),
        );

    for (row, tally) in rows.iter_mut().zip(tallies) {
        row.graphs = total;
        row.qualifying = tally.qualifying;
        row.max_count = tally.max_count;
        row.violations = tally.violations;
        row.improved_violations = tally.improved_violations;
        row.first_violation = tally.first_violation;
    }
    Ok(rows)
}
