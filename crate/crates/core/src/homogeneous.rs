//! Homogeneous sets: exact `hom(G)`, homogeneous k-set counts, the
//! (t, k)-homogeneous property, distance to a family, ε-homogeneous search
//! and greedy clique extraction.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{derive_seed, gnp, two_coloring};
use crate::containers::CheckMode;
use crate::error::{Error, Result};
use crate::exact::{binomial, rat_int, rational, rational_pow, uint_to_rational, Rational};
use crate::graph::Graph;
use crate::induced::count_induced_copies;
use crate::vertex_set::{for_each_k_subset, mask_bits, VertexSet};

/// Default search-node budget for [`hom_exact`].
pub const HOM_NODE_BUDGET: u64 = 200_000_000;

/// Largest graph accepted by the exhaustive ε-homogeneous search.
pub const EXACT_SEARCH_MAX_N: usize = 20;

/// Largest `t` for which all labeled graphs on `t` vertices are enumerated.
pub const TK_EXHAUSTIVE_MAX_T: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomKind {
    Clique,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousWitness {
    pub set: VertexSet,
    pub kind: HomKind,
}

impl HomogeneousWitness {
    pub fn validate(&self, g: &Graph) -> bool {
        match self.kind {
            HomKind::Clique => g.is_clique(&self.set),
            HomKind::Independent => g.is_independent(&self.set),
        }
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "size": self.set.len(),
            "kind": self.kind,
            "vertices": self.set.to_vec(),
            "validated": self.validate(g),
        })
    }
}

// ---------------------------------------------------------------------------
// Maximum clique
// ---------------------------------------------------------------------------

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `p` in ascending vertex order; returns vertices and
    /// their colour numbers, colours nondecreasing.
    fn color(&self, p: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(self.g.neighbors(v));
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, mut p: VertexSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::capability(format!("maximum-clique search exceeded {} nodes", self.budget)));
        }
        let (order, colors) = self.color(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colors[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            self.current.push(v);
            let next = p.intersection(self.g.neighbors(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next)?;
            }
            self.current.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique by branch and bound with greedy-colouring bounds.
pub fn max_clique(g: &Graph, budget: u64) -> Result<VertexSet> {
    let mut search = CliqueSearch { g, best: Vec::new(), current: Vec::new(), nodes: 0, budget };
    if g.n() > 0 {
        search.expand(g.vertex_set())?;
    }
    VertexSet::from_vertices(g.n(), search.best)
}

/// `hom(G)` with a witness: the larger of a maximum clique and a maximum
/// independent set (clique on ties).
pub fn hom_exact(g: &Graph) -> Result<(usize, HomogeneousWitness)> {
    hom_exact_with_budget(g, HOM_NODE_BUDGET)
}

pub fn hom_exact_with_budget(g: &Graph, budget: u64) -> Result<(usize, HomogeneousWitness)> {
    let clique = max_clique(g, budget)?;
    let independent = max_clique(&g.complement(), budget)?;
    let witness = if clique.len() >= independent.len() {
        HomogeneousWitness { set: clique, kind: HomKind::Clique }
    } else {
        HomogeneousWitness { set: independent, kind: HomKind::Independent }
    };
    debug_assert!(witness.validate(g));
    Ok((witness.set.len(), witness))
}

// ---------------------------------------------------------------------------
// Homogeneous k-sets
// ---------------------------------------------------------------------------

fn count_cliques_masks(adj: &[u64], cand: u64, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return cand.count_ones() as u64;
    }
    let mut total = 0;
    let mut rest = cand;
    while rest.count_ones() as usize >= k {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += count_cliques_masks(adj, rest & adj[v], k - 1);
    }
    total
}

fn count_cliques_sets(g: &Graph, cand: &VertexSet, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return cand.len() as u128;
    }
    let mut total = 0;
    let mut rest = cand.clone();
    while rest.len() >= k {
        let v = rest.first().expect("nonempty");
        rest.remove(v);
        total += count_cliques_sets(g, &rest.intersection(g.neighbors(v)), k - 1);
    }
    total
}

/// Number of `k`-cliques, by neighbourhood intersection.
pub fn count_cliques(g: &Graph, k: usize) -> BigUint {
    match g.masks() {
        Some(adj) => {
            let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
            BigUint::from(count_cliques_masks(&adj, full, k))
        }
        None => BigUint::from(count_cliques_sets(g, &g.vertex_set(), k)),
    }
}

/// Number of `k`-subsets that are cliques or independent sets, `k >= 2`.
pub fn count_homogeneous_k(g: &Graph, k: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::param(format!("homogeneous k-set counts need k >= 2, got {k}")));
    }
    Ok(count_cliques(g, k) + count_cliques(&g.complement(), k))
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// A graph family given by a membership predicate.
#[derive(Clone)]
pub struct FamilyOracle {
    membership: Arc<dyn Fn(&Graph) -> bool + Send + Sync>,
    /// Declared by the caller; see [`FamilyOracle::spot_check_hereditary`].
    pub hereditary: bool,
    pub description: String,
}

impl std::fmt::Debug for FamilyOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FamilyOracle").field("description", &self.description).field("hereditary", &self.hereditary).finish()
    }
}

/// Induced `P4` test by scanning 4-subsets: a 4-vertex graph is a path iff it
/// has three edges and degrees between 1 and 2.
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let vs = [a, b, c, d];
                    let mut deg = [0u8; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if g.has_edge(vs[i], vs[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    if edges == 3 && deg.iter().all(|&x| x == 1 || x == 2) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

impl FamilyOracle {
    pub fn new(description: impl Into<String>, hereditary: bool, membership: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        FamilyOracle { membership: Arc::new(membership), hereditary, description: description.into() }
    }

    pub fn all_graphs() -> Self {
        Self::new("all graphs", true, |_| true)
    }

    /// Graphs without an induced copy of `h`.
    pub fn h_free(h: Graph) -> Self {
        let desc = format!("induced-{}-vertex-pattern-free", h.n());
        Self::new(desc, true, move |g| !crate::induced::contains_induced(g, &h))
    }

    pub fn p4_free() -> Self {
        Self::new("P4-free", true, |g| !has_induced_p4(g))
    }

    pub fn bipartite() -> Self {
        Self::new("bipartite", true, |g| two_coloring(g).is_some())
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "all" => Some(Self::all_graphs()),
            "p4-free" | "P4-free" | "cograph" => Some(Self::p4_free()),
            "bipartite" => Some(Self::bipartite()),
            _ => None,
        }
    }

    pub fn contains(&self, g: &Graph) -> bool {
        (self.membership)(g)
    }

    /// For members among `graphs`, tests `samples_per_graph` random induced
    /// subgraphs each. Returns a member with a non-member induced subgraph.
    pub fn spot_check_hereditary(&self, graphs: &[Graph], samples_per_graph: usize, seed: u64) -> Option<(Graph, VertexSet)> {
        use rand::Rng;
        for (i, g) in graphs.iter().enumerate() {
            if !self.contains(g) {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            for _ in 0..samples_per_graph {
                let mask: Vec<usize> = (0..g.n()).filter(|_| rng.gen_range(0..2u32) == 1).collect();
                let set = VertexSet::from_vertices(g.n(), mask).expect("in range");
                let sub = g.induced_subgraph(&set).expect("in range");
                if !self.contains(&sub) {
                    return Some((g.clone(), set));
                }
            }
        }
        None
    }
}

/// Outcome of a (t, k)-homogeneous property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TkReport {
    pub family: String,
    pub t: usize,
    pub k: usize,
    pub holds: bool,
    pub exhaustive: bool,
    pub graphs_checked: u64,
    pub members: u64,
    /// First member (by pair code, or sample order) with `hom < k`.
    pub counterexample: Option<Graph>,
}

/// Whether every `t`-vertex member of `family` has `hom >= k`.
pub fn check_tk_property(family: &FamilyOracle, t: usize, k: usize, mode: CheckMode) -> Result<TkReport> {
    let mut report = TkReport {
        family: family.description.clone(),
        t,
        k,
        holds: true,
        exhaustive: matches!(mode, CheckMode::Exhaustive),
        graphs_checked: 0,
        members: 0,
        counterexample: None,
    };
    let mut visit = |g: Graph| -> Result<bool> {
        report.graphs_checked += 1;
        if !family.contains(&g) {
            return Ok(true);
        }
        report.members += 1;
        if hom_exact(&g)?.0 < k {
            report.holds = false;
            report.counterexample = Some(g);
            return Ok(false);
        }
        Ok(true)
    };
    match mode {
        CheckMode::Exhaustive => {
            if t > TK_EXHAUSTIVE_MAX_T {
                return Err(Error::capability(format!(
                    "exhaustive (t,k) check is limited to t <= {TK_EXHAUSTIVE_MAX_T}; use sampled mode"
                )));
            }
            let pairs = t * t.saturating_sub(1) / 2;
            for code in 0..(1u64 << pairs) {
                if !visit(Graph::from_pair_code(t, code))? {
                    break;
                }
            }
        }
        CheckMode::Sampled { samples, seed } => {
            for i in 0..samples {
                if !visit(gnp(t, &rational(1, 2), derive_seed(seed, i))?)? {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// `⌊n^h / (2^(h+1) t^(h-1))⌋`, the admissible labeled induced-copy count.
pub fn nikiforov_premise_threshold(n: usize, h: usize, t: usize) -> Result<BigUint> {
    if t == 0 || n < 2 * t {
        return Err(Error::param(format!("need n >= 2t with t >= 1, got n = {n}, t = {t}")));
    }
    let num = num_traits::pow(BigUint::from(n), h);
    let den = (BigUint::one() << (h + 1)) * num_traits::pow(BigUint::from(t), h.saturating_sub(1));
    Ok(num / den)
}

/// `(1/2) (n / 2t)^k`.
pub fn homogeneous_lower_bound(n: usize, t: usize, k: usize) -> Rational {
    rational(1, 2) * rational_pow(&Rational::new((n as i64).into(), (2 * t as i64).into()), k as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PremiseViolated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    /// The (t, k) property was established exhaustively for the matching `t`, `k`.
    pub tk_premise: bool,
    pub size_premise: bool,
    pub embeddings: BigUint,
    pub threshold: Option<BigUint>,
    pub copies_premise: bool,
    pub homogeneous: BigUint,
    pub lower_bound: Rational,
    pub bound_holds: bool,
    pub verdict: Verdict,
}

/// Counts homogeneous `k`-sets of `g` and compares them with `(1/2)(n/2t)^k`,
/// reporting each premise (the `(t,k)` property of `H`-free graphs, `n >= 2t`,
/// and at most the threshold number of labeled induced copies of `h`).
pub fn verify_count_lower_bound(g: &Graph, h: &Graph, t: usize, k: usize, tk: &TkReport) -> Result<LowerBoundReport> {
    let n = g.n();
    let tk_premise = tk.holds && tk.exhaustive && tk.t == t && tk.k == k;
    let size_premise = t >= 1 && n >= 2 * t;
    let embeddings = count_induced_copies(g, h).embeddings;
    let threshold = if size_premise { Some(nikiforov_premise_threshold(n, h.n(), t)?) } else { None };
    let copies_premise = threshold.as_ref().is_some_and(|th| embeddings <= *th);
    let homogeneous = count_homogeneous_k(g, k)?;
    let lower_bound = if t >= 1 { homogeneous_lower_bound(n, t, k) } else { Rational::zero() };
    let bound_holds = uint_to_rational(&homogeneous) >= lower_bound;
    let verdict = if !(tk_premise && size_premise && copies_premise) {
        Verdict::PremiseViolated
    } else if bound_holds {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(LowerBoundReport { n, t, k, tk_premise, size_premise, embeddings, threshold, copies_premise, homogeneous, lower_bound, bound_holds, verdict })
}

// ---------------------------------------------------------------------------
// Distance to a family
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    ExceedsBudget,
}

/// Largest graph for which any flip budget is accepted.
pub const DISTANCE_MAX_N: usize = 8;
/// Largest budget accepted on bigger graphs.
pub const DISTANCE_MAX_BUDGET: usize = 3;

/// Fewest edge flips turning `g` into a member of `family`, searching flip
/// sets by increasing size up to `budget`.
pub fn distance_to_family(g: &Graph, family: &FamilyOracle, budget: usize) -> Result<Distance> {
    let n = g.n();
    if n > DISTANCE_MAX_N && budget > DISTANCE_MAX_BUDGET {
        return Err(Error::capability(format!(
            "flip search needs n <= {DISTANCE_MAX_N} or budget <= {DISTANCE_MAX_BUDGET} (got n = {n}, budget = {budget})"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    for d in 0..=budget.min(pairs.len()) {
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let mut h = g.clone();
            for &i in &idx {
                let (u, v) = pairs[i];
                h.toggle_edge(u, v);
            }
            if family.contains(&h) {
                return Ok(Distance::Exact(d));
            }
            let m = pairs.len();
            let Some(i) = (0..d).rev().find(|&i| idx[i] < m - d + i) else { break };
            idx[i] += 1;
            for j in (i + 1)..d {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(Distance::ExceedsBudget)
}

// ---------------------------------------------------------------------------
// ε-homogeneous sets
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Sparse,
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsMode {
    /// Edge density at most `ε` (sparse) or at least `1-ε` (dense).
    Density,
    /// Max degree at most `ε(|S|-1)` (sparse) or min degree at least `(1-ε)(|S|-1)` (dense).
    Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exact,
    GreedyPeel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsHomogeneousWitness {
    pub set: VertexSet,
    pub side: Side,
    pub mode: EpsMode,
    pub epsilon: Rational,
}

/// Whether `s` satisfies the `(side, mode)` condition at `ε`.
pub fn is_eps_homogeneous(g: &Graph, s: &VertexSet, epsilon: &Rational, side: Side, mode: EpsMode) -> bool {
    let size = s.len();
    if size <= 1 {
        return true;
    }
    let eps = epsilon.clone();
    let one_minus = Rational::one() - epsilon;
    match mode {
        EpsMode::Density => {
            let pairs = rat_int((size * (size - 1) / 2) as i64);
            let edges = rat_int(g.edges_within(s) as i64);
            match side {
                Side::Sparse => edges <= eps * pairs,
                Side::Dense => edges >= one_minus * pairs,
            }
        }
        EpsMode::Degree => {
            let span = rat_int(size as i64 - 1);
            let degrees = s.iter().map(|v| g.degree_within(v, s));
            match side {
                Side::Sparse => rat_int(degrees.max().unwrap_or(0) as i64) <= eps * span,
                Side::Dense => rat_int(degrees.min().unwrap_or(0) as i64) >= one_minus * span,
            }
        }
    }
}

impl EpsHomogeneousWitness {
    pub fn validate(&self, g: &Graph) -> bool {
        !self.set.is_empty() && is_eps_homogeneous(g, &self.set, &self.epsilon, self.side, self.mode)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "size": self.set.len(),
            "side": self.side,
            "mode": self.mode,
            "vertices": self.set.to_vec(),
            "epsilon": self.epsilon.to_string(),
            "validated": self.validate(g),
        })
    }
}

/// Mask-level check used by the exhaustive search.
fn mask_eps_ok(adj: &[u64], s: u64, num: u64, den: u64, side: Side, mode: EpsMode) -> bool {
    let size = s.count_ones() as u64;
    if size <= 1 {
        return true;
    }
    // compare x against ε·y (sparse) or (1-ε)·y (dense) as x·den vs num·y
    let (num, flip) = match side {
        Side::Sparse => (num, false),
        Side::Dense => (den - num, true),
    };
    let cmp = |x: u64, y: u64| if flip { x * den >= num * y } else { x * den <= num * y };
    match mode {
        EpsMode::Density => {
            let twice: u64 = mask_bits(s).map(|v| (adj[v] & s).count_ones() as u64).sum();
            cmp(twice / 2, size * (size - 1) / 2)
        }
        EpsMode::Degree => {
            let degs = mask_bits(s).map(|v| (adj[v] & s).count_ones() as u64);
            let d = if flip { degs.min().unwrap_or(0) } else { degs.max().unwrap_or(0) };
            cmp(d, size - 1)
        }
    }
}

fn check_unit_epsilon(epsilon: &Rational) -> Result<()> {
    if epsilon.is_negative() || *epsilon > Rational::one() {
        return Err(Error::param(format!("epsilon must lie in [0, 1], got {epsilon}")));
    }
    Ok(())
}

/// Largest ε-homogeneous set found by `strategy`. Exact search scans subsets
/// by decreasing size (sparse side first, then smallest mask); greedy peeling
/// deletes max-degree vertices of `G` (sparse side) or of its complement
/// (dense side) and keeps the first valid set along each trajectory.
pub fn find_eps_homogeneous(g: &Graph, epsilon: &Rational, mode: EpsMode, strategy: Strategy) -> Result<EpsHomogeneousWitness> {
    check_unit_epsilon(epsilon)?;
    let n = g.n();
    if n == 0 {
        return Err(Error::Degenerate("graph has no vertices".into()));
    }
    let witness = match strategy {
        Strategy::Exact => {
            if n > EXACT_SEARCH_MAX_N {
                return Err(Error::capability(format!("exact ε-homogeneous search is limited to {EXACT_SEARCH_MAX_N} vertices")));
            }
            let adj = g.masks().expect("small graph");
            let (num, den) = match (epsilon.numer().to_u64(), epsilon.denom().to_u64()) {
                (Some(a), Some(b)) if b < (1 << 24) => (a, b),
                _ => return Err(Error::param("epsilon denominator too large for exhaustive search")),
            };
            let mut found = None;
            for size in (1..=n).rev() {
                for_each_k_subset(n, size, |mask| {
                    for side in [Side::Sparse, Side::Dense] {
                        if mask_eps_ok(&adj, mask, num, den, side, mode) {
                            found = Some((mask, side));
                            return false;
                        }
                    }
                    true
                });
                if found.is_some() {
                    break;
                }
            }
            let (mask, side) = found.expect("singletons always qualify");
            EpsHomogeneousWitness { set: VertexSet::from_mask(n, mask), side, mode, epsilon: epsilon.clone() }
        }
        Strategy::GreedyPeel => {
            let complement = g.complement();
            let peel = |h: &Graph, side: Side| -> VertexSet {
                let mut s = h.vertex_set();
                loop {
                    if is_eps_homogeneous(g, &s, epsilon, side, mode) {
                        return s;
                    }
                    let mut best = None;
                    let mut best_deg = 0;
                    for v in s.iter() {
                        let d = h.degree_within(v, &s);
                        if best.is_none() || d > best_deg {
                            best = Some(v);
                            best_deg = d;
                        }
                    }
                    s.remove(best.expect("nonempty until a singleton qualifies"));
                }
            };
            let sparse = peel(g, Side::Sparse);
            let dense = peel(&complement, Side::Dense);
            let (set, side) = if sparse.len() >= dense.len() { (sparse, Side::Sparse) } else { (dense, Side::Dense) };
            EpsHomogeneousWitness { set, side, mode, epsilon: epsilon.clone() }
        }
    };
    if !witness.validate(g) {
        return Err(Error::Consistency("ε-homogeneous witness failed its own check".into()));
    }
    Ok(witness)
}

// ---------------------------------------------------------------------------
// Greedy clique
// ---------------------------------------------------------------------------

/// Clique built by repeatedly taking the candidate with fewest non-neighbours
/// among the candidates (lowest index on ties) and keeping its neighbours.
/// Its size is at least `n / (d̄ + 1)`, `d̄` the average degree of the complement.
pub fn turan_clique(g: &Graph) -> VertexSet {
    let complement = g.complement();
    let mut cand = g.vertex_set();
    let mut clique = VertexSet::empty(g.n());
    while !cand.is_empty() {
        let mut best = None;
        let mut best_deg = usize::MAX;
        for v in cand.iter() {
            let d = complement.degree_within(v, &cand);
            if d < best_deg {
                best = Some(v);
                best_deg = d;
            }
        }
        let v = best.expect("nonempty");
        clique.insert(v);
        cand.intersect_with(g.neighbors(v));
    }
    assert!(g.is_clique(&clique), "greedy clique is not complete");
    clique
}

/// `n / (d̄ + 1) = n² / (2|E(Ḡ)| + n)`.
pub fn turan_guarantee(g: &Graph) -> Rational {
    let n = g.n();
    if n == 0 {
        return Rational::zero();
    }
    let missing = binomial(n as u64, 2) - BigUint::from(g.edge_count());
    Rational::new(((n * n) as i64).into(), 1.into()) / (uint_to_rational(&missing) * rat_int(2) + rat_int(n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::complete_multipartite;
    use crate::graph::named::{cycle, path, petersen};
    use crate::induced::is_isomorphic;

    #[test]
    fn hom_examples() {
        assert_eq!(hom_exact(&Graph::complete(7)).unwrap().0, 7);
        assert_eq!(hom_exact(&cycle(5)).unwrap().0, 2);
        let (h, w) = hom_exact(&petersen()).unwrap();
        assert_eq!(h, 4);
        assert_eq!(w.kind, HomKind::Independent);
        assert!(w.validate(&petersen()));
        assert_eq!(hom_exact(&Graph::empty(0)).unwrap().0, 0);
        assert!(matches!(hom_exact_with_budget(&petersen(), 2), Err(Error::Capability(_))));
    }

    #[test]
    fn homogeneous_counts() {
        assert_eq!(count_homogeneous_k(&Graph::empty(6), 3).unwrap(), BigUint::from(20u32));
        assert_eq!(count_homogeneous_k(&cycle(5), 2).unwrap(), BigUint::from(10u32));
        assert!(count_homogeneous_k(&cycle(5), 1).is_err());
        assert_eq!(count_cliques(&Graph::complete(6), 3), BigUint::from(20u32));
    }

    #[test]
    fn tk_examples() {
        let rep = check_tk_property(&FamilyOracle::p4_free(), 5, 3, CheckMode::Exhaustive).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.graphs_checked, 1024);
        let rep = check_tk_property(&FamilyOracle::all_graphs(), 5, 3, CheckMode::Exhaustive).unwrap();
        assert!(!rep.holds);
        assert!(is_isomorphic(rep.counterexample.as_ref().unwrap(), &cycle(5)));
        assert!(check_tk_property(&FamilyOracle::all_graphs(), 6, 3, CheckMode::Exhaustive).unwrap().holds);
        assert!(matches!(
            check_tk_property(&FamilyOracle::all_graphs(), 7, 3, CheckMode::Exhaustive),
            Err(Error::Capability(_))
        ));
        let sampled = check_tk_property(&FamilyOracle::all_graphs(), 9, 3, CheckMode::Sampled { samples: 20, seed: 1 }).unwrap();
        assert!(sampled.holds && !sampled.exhaustive);
    }

    #[test]
    fn thresholds() {
        assert_eq!(nikiforov_premise_threshold(40, 4, 5).unwrap(), BigUint::from(640u32));
        assert!(nikiforov_premise_threshold(10, 4, 5).is_ok());
        assert!(nikiforov_premise_threshold(9, 4, 5).is_err());
        let a = nikiforov_premise_threshold(40, 4, 5).unwrap();
        let b = nikiforov_premise_threshold(80, 4, 5).unwrap();
        assert_eq!(b, a * BigUint::from(16u32));
        assert_eq!(homogeneous_lower_bound(40, 5, 3), rat_int(32));
    }

    #[test]
    fn lower_bound_report_flags_premises() {
        let tk = check_tk_property(&FamilyOracle::p4_free(), 5, 3, CheckMode::Exhaustive).unwrap();
        // ten induced P4s in C10, far above the threshold of 2
        let g = cycle(10);
        let rep = verify_count_lower_bound(&g, &path(4), 5, 3, &tk).unwrap();
        assert!(rep.size_premise);
        assert_eq!(rep.threshold, Some(BigUint::from(2u32)));
        assert_eq!(rep.embeddings, BigUint::from(20u32));
        assert_eq!(rep.verdict, Verdict::PremiseViolated);
        let rep = verify_count_lower_bound(&Graph::empty(10), &path(4), 5, 3, &tk).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn distances() {
        let p4free = FamilyOracle::p4_free();
        assert_eq!(distance_to_family(&Graph::complete(5), &p4free, 2).unwrap(), Distance::Exact(0));
        assert_eq!(distance_to_family(&path(4), &p4free, 2).unwrap(), Distance::Exact(1));
        assert_eq!(distance_to_family(&cycle(5), &p4free, 0).unwrap(), Distance::ExceedsBudget);
        assert!(matches!(distance_to_family(&Graph::empty(10), &p4free, 4), Err(Error::Capability(_))));
    }

    #[test]
    fn eps_homogeneous_examples() {
        let g = complete_multipartite(&[2, 2, 2, 2]).unwrap();
        for strategy in [Strategy::Exact, Strategy::GreedyPeel] {
            let w = find_eps_homogeneous(&g, &rational(3, 10), EpsMode::Density, strategy).unwrap();
            assert_eq!((w.set.len(), w.side), (8, Side::Dense));
        }
        let w = find_eps_homogeneous(&cycle(5), &rat_int(0), EpsMode::Degree, Strategy::Exact).unwrap();
        assert_eq!(w.set.len(), 2);
        assert!(w.to_json(&cycle(5))["validated"].as_bool().unwrap());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_clique(&Graph::complete(6)).len(), 6);
        // complement is a perfect matching on 10 vertices: average degree 1
        let g = Graph::from_edges(10, (0..5).map(|i| (2 * i, 2 * i + 1))).unwrap().complement();
        assert_eq!(turan_guarantee(&g), rat_int(5));
        assert!(turan_clique(&g).len() >= 5);
    }
}
