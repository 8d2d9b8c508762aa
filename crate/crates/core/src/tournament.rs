//! Tournaments: cyclic triangles, exact distance to transitivity and the
//! triangle hypergraph.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::construct::{derive_seed, random_tournament};
use crate::error::{Error, Result};
use crate::exact::{binomial, rat_int, uint_to_rational, Rational};
use crate::graph::UniformHypergraph;
use crate::vertex_set::VertexSet;

/// Largest tournament handled by the subset dynamic program.
pub const DIST_MAX_N: usize = 20;

/// A complete orientation of `K_n`, stored as out-neighbourhoods.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    out: Vec<VertexSet>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tournament").field("n", &self.n()).field("out", &self.out).finish()
    }
}

impl Tournament {
    /// Transitive tournament in which `i` beats `j` whenever `i < j`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |u, v| u < v)
    }

    /// Orientation with `beats(u, v)` decided by `f(u, v)` for each pair `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = vec![VertexSet::empty(n); n];
        for u in 0..n {
            for v in (u + 1)..n {
                if f(u, v) {
                    out[u].insert(v);
                } else {
                    out[v].insert(u);
                }
            }
        }
        Tournament { out }
    }

    /// The cyclic triangle `0 → 1 → 2 → 0`.
    pub fn cyclic_triangle() -> Self {
        Self::from_fn(3, |u, v| !(u == 0 && v == 2))
    }

    /// Builds a tournament from an adjacency matrix (`rows[v][u]` iff `v` beats `u`).
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut out = vec![VertexSet::empty(n); n];
        for (v, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!("row {v} has {} entries, expected {n}", row.len())));
            }
            if row[v] {
                return Err(Error::input(format!("vertex {v} beats itself")));
            }
            for (u, &b) in row.iter().enumerate() {
                if b {
                    out[v].insert(u);
                }
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if rows[u][v] == rows[v][u] {
                    return Err(Error::input(format!("pair ({u}, {v}) must be oriented exactly one way")));
                }
            }
        }
        Ok(Tournament { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n()).map(|v| (0..self.n()).map(|u| self.beats(v, u)).collect()).collect()
    }

    /// Every edge reversed.
    pub fn reverse(&self) -> Tournament {
        let n = self.n();
        Self::from_fn(n, |u, v| self.beats(v, u))
    }

    /// Subtournament on `members`, relabeled in the given order.
    pub fn induced_on(&self, members: &[usize]) -> Result<Tournament> {
        if let Some(&bad) = members.iter().find(|&&v| v >= self.n()) {
            return Err(Error::input(format!("vertex {bad} out of range for {} vertices", self.n())));
        }
        Ok(Self::from_fn(members.len(), |i, j| self.beats(members[i], members[j])))
    }

    /// Whether `{a, b, c}` is a directed cycle.
    #[inline]
    pub fn is_cyclic_triple(&self, a: usize, b: usize, c: usize) -> bool {
        let ab = self.beats(a, b);
        ab == self.beats(b, c) && ab == self.beats(c, a)
    }

    /// Transitive iff out-degrees are pairwise distinct.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n()];
        (0..self.n()).all(|v| !std::mem::replace(&mut seen[self.out_degree(v)], true))
    }
}

/// Number of cyclic triples, by enumeration, cross-checked against
/// `C(n,3) - Σ_v C(outdeg v, 2)`.
pub fn cyclic_triangle_count(t: &Tournament) -> Result<BigUint> {
    let n = t.n();
    let mut enumerated = 0u64;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if t.is_cyclic_triple(a, b, c) {
                    enumerated += 1;
                }
            }
        }
    }
    let transitive: BigUint = (0..n).map(|v| binomial(t.out_degree(v) as u64, 2)).sum();
    let identity = binomial(n as u64, 3) - transitive;
    if identity != BigUint::from(enumerated) {
        return Err(Error::Consistency(format!(
            "cyclic triangles: enumeration gives {enumerated}, out-degree identity gives {identity}"
        )));
    }
    Ok(identity)
}

/// An ordering of the vertices and its number of backward edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityWitness {
    /// Dominators first: a pair is a reversal when the later vertex beats the earlier one.
    pub ordering: Vec<usize>,
    pub reversals: usize,
}

/// Backward edges of `ordering`.
pub fn count_reversals(t: &Tournament, ordering: &[usize]) -> usize {
    let mut count = 0;
    for (i, &a) in ordering.iter().enumerate() {
        for &b in &ordering[i + 1..] {
            if t.beats(b, a) {
                count += 1;
            }
        }
    }
    count
}

/// Minimum number of edge reversals making `t` transitive, with an optimal
/// ordering.
///
/// `dp[S]` is the cheapest ordering of `S` as a prefix. Appending `v` after
/// `S` reverses exactly the pairs `(u, v)`, `u ∈ S`, that `v` wins, so it
/// costs `|out(v) ∩ S|`. Ties pick the lowest-index last vertex.
pub fn dist_to_transitive_exact(t: &Tournament) -> Result<TransitivityWitness> {
    let n = t.n();
    if n > DIST_MAX_N {
        return Err(Error::capability(format!("exact transitivity distance is limited to {DIST_MAX_N} vertices (got {n})")));
    }
    if n == 0 {
        return Ok(TransitivityWitness { ordering: Vec::new(), reversals: 0 });
    }
    let out: Vec<u32> = (0..n).map(|v| t.out_neighbors(v).mask() as u32).collect();
    let states = 1usize << n;
    let mut dp = vec![u16::MAX; states];
    let mut last = vec![0u8; states];
    dp[0] = 0;
    for s in 1..states {
        let mut best = u16::MAX;
        let mut arg = 0u8;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = dp[prev] + (out[v] & prev as u32).count_ones() as u16;
            if cost < best {
                best = cost;
                arg = v as u8;
            }
        }
        dp[s] = best;
        last[s] = arg;
    }
    let mut ordering = Vec::with_capacity(n);
    let mut s = states - 1;
    while s != 0 {
        let v = last[s] as usize;
        ordering.push(v);
        s &= !(1 << v);
    }
    ordering.reverse();
    let reversals = dp[states - 1] as usize;
    debug_assert_eq!(count_reversals(t, &ordering), reversals);
    Ok(TransitivityWitness { ordering, reversals })
}

/// `dist(t) <= ε·C(n,2)`, compared exactly.
pub fn is_eps_transitive(t: &Tournament, epsilon: &Rational) -> Result<bool> {
    let dist = dist_to_transitive_exact(t)?.reversals;
    Ok(rat_int(dist as i64) <= epsilon * uint_to_rational(&binomial(t.n() as u64, 2)))
}

/// 3-uniform hypergraph whose edges are the cyclic triples.
pub fn triangle_hypergraph(t: &Tournament) -> UniformHypergraph {
    let n = t.n();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if t.is_cyclic_triple(a, b, c) {
                    edges.push(vec![a, b, c]);
                }
            }
        }
    }
    UniformHypergraph::new(3, n, edges).expect("cyclic triples are valid edges")
}

/// Number of `k`-subsets inducing a transitive subtournament. A subset is
/// transitive iff it contains no cyclic triple, which prunes the search.
pub fn count_transitive_subtournaments(t: &Tournament, k: usize) -> BigUint {
    fn walk(t: &Tournament, k: usize, chosen: &mut Vec<usize>, start: usize) -> u64 {
        if chosen.len() == k {
            return 1;
        }
        let mut total = 0;
        for v in start..=(t.n() - (k - chosen.len())) {
            let creates_cycle = chosen
                .iter()
                .enumerate()
                .any(|(i, &a)| chosen[i + 1..].iter().any(|&b| t.is_cyclic_triple(a, b, v)));
            if creates_cycle {
                continue;
            }
            chosen.push(v);
            total += walk(t, k, chosen, v + 1);
            chosen.pop();
        }
        total
    }
    if k > t.n() {
        return BigUint::zero();
    }
    BigUint::from(walk(t, k, &mut Vec::with_capacity(k), 0))
}

/// One sampled tournament in a triangle-versus-distance scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub m: usize,
    /// Seed of this instance (derived from the scan seed and the sample index).
    pub seed: u64,
    pub triangles: u64,
    pub dist: usize,
    /// `triangles / m³`.
    pub triangle_density: Rational,
    /// `dist / C(m,2)`.
    pub dist_fraction: Rational,
    /// `(dist/C(m,2))² · m³ / triangles`; `None` without triangles.
    pub ratio: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Largest ratio observed.
    pub max_ratio: Option<Rational>,
}

fn scan_row(t: &Tournament, seed: u64) -> Result<ScanRow> {
    let m = t.n();
    let triangles = cyclic_triangle_count(t)?;
    let tri = u64::try_from(&triangles).expect("cubic count fits");
    let dist = dist_to_transitive_exact(t)?.reversals;
    let pairs = uint_to_rational(&binomial(m as u64, 2));
    let m3 = rat_int((m * m * m) as i64);
    let dist_fraction = if m < 2 { Rational::zero() } else { rat_int(dist as i64) / &pairs };
    let triangle_density = if m == 0 { Rational::zero() } else { rat_int(tri as i64) / &m3 };
    let ratio = (tri > 0).then(|| &dist_fraction * &dist_fraction * &m3 / rat_int(tri as i64));
    Ok(ScanRow { m, seed, triangles: tri, dist, triangle_density, dist_fraction, ratio })
}

/// Samples random tournaments on `m` vertices and records the triangle
/// density against the normalised distance to transitivity. Report only.
pub fn triangle_distance_scan(m: usize, samples: usize, seed: u64) -> Result<ScanReport> {
    use rayon::prelude::*;
    if m > DIST_MAX_N {
        return Err(Error::capability(format!("scan needs exact distances, limited to {DIST_MAX_N} vertices")));
    }
    let rows = (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i as u64);
            scan_row(&random_tournament(m, s), s)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_ratio = rows.iter().filter_map(|r| r.ratio.clone()).max();
    Ok(ScanReport { rows, max_ratio })
}

/// Scan row for a caller-supplied tournament.
pub fn scan_tournament(t: &Tournament) -> Result<ScanRow> {
    scan_row(t, 0)
}
