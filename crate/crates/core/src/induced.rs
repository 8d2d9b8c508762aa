//! Induced-copy counting and small-graph isomorphism.

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Largest pattern for which the labeled orbit of the pattern is tabulated.
const ORBIT_TABLE_MAX: usize = 8;

/// Induced copies of a pattern `H` in a host `G`, in both conventions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedCopies {
    /// Vertex subsets `S` with `G[S] ≅ H`.
    #[serde(with = "crate::exact::biguint_str")]
    pub subsets: BigUint,
    /// Injective maps preserving adjacency and non-adjacency; `subsets · |Aut(H)|`.
    #[serde(with = "crate::exact::biguint_str")]
    pub embeddings: BigUint,
}

/// Backtracking isomorphism search with degree pruning. Returns `map` with
/// `a`'s vertex `v` sent to `b`'s vertex `map[v]`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    let mut found = None;
    extend_maps(a, b, &sa, &sb, 0, &mut map, &mut used, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// `|Aut(h)|` by exhaustive backtracking.
pub fn automorphism_count(h: &Graph) -> u64 {
    let deg: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; h.n()];
    let mut count = 0u64;
    extend_maps(h, h, &deg, &deg, 0, &mut map, &mut used, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Visits every adjacency-preserving bijection extending `map[..depth]`.
/// The visitor returns `false` to stop the search.
#[allow(clippy::too_many_arguments)]
fn extend_maps(
    a: &Graph,
    b: &Graph,
    deg_a: &[usize],
    deg_b: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == a.n() {
        return visit(map);
    }
    for target in 0..b.n() {
        if used[target] || deg_b[target] != deg_a[depth] {
            continue;
        }
        let consistent = (0..depth).all(|prev| a.has_edge(prev, depth) == b.has_edge(map[prev], target));
        if !consistent {
            continue;
        }
        map[depth] = target;
        used[target] = true;
        let keep_going = extend_maps(a, b, deg_a, deg_b, depth + 1, map, used, visit);
        used[target] = false;
        map[depth] = usize::MAX;
        if !keep_going {
            return false;
        }
    }
    true
}

#[inline]
fn pair_bit(i: usize, j: usize) -> u32 {
    // pairs (i, j) with i < j, ordered by j then i
    debug_assert!(i < j);
    (j * (j - 1) / 2 + i) as u32
}

/// Adjacency pattern code of an ordered vertex tuple.
fn pattern_code(g: &Graph, vertices: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..vertices.len() {
        for i in 0..j {
            if g.has_edge(vertices[i], vertices[j]) {
                code |= 1 << pair_bit(i, j);
            }
        }
    }
    code
}

/// Set of pattern codes of all relabelings of `h`.
fn labeled_orbit(h: &Graph) -> HashSet<u64> {
    let k = h.n();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut orbit = HashSet::new();
    // Heap's algorithm over all k! orderings
    let mut c = vec![0usize; k];
    let record = |perm: &[usize], orbit: &mut HashSet<u64>| {
        orbit.insert(pattern_code(h, perm));
    };
    record(&perm, &mut orbit);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm, &mut orbit);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    orbit
}

enum Matcher {
    Table(Vec<bool>),
    Set(HashSet<u64>),
    Search(Graph),
}

impl Matcher {
    fn new(h: &Graph) -> Self {
        let k = h.n();
        if k > ORBIT_TABLE_MAX {
            return Matcher::Search(h.clone());
        }
        let orbit = labeled_orbit(h);
        let bits = k * k.saturating_sub(1) / 2;
        if bits <= 21 {
            let mut table = vec![false; 1 << bits];
            for code in orbit {
                table[code as usize] = true;
            }
            Matcher::Table(table)
        } else {
            Matcher::Set(orbit)
        }
    }

    #[inline]
    fn matches(&self, g: &Graph, vertices: &[usize], code: u64) -> bool {
        match self {
            Matcher::Table(t) => t[code as usize],
            Matcher::Set(s) => s.contains(&code),
            Matcher::Search(h) => {
                let sub = g.induced_on(vertices).expect("vertices in range");
                is_isomorphic(&sub, h)
            }
        }
    }
}

/// Counts `k`-subsets extending `chosen` (all later vertices greater than the
/// last chosen one) whose pattern matches.
fn count_extensions(g: &Graph, matcher: &Matcher, k: usize, chosen: &mut Vec<usize>, code: u64, stop_at_first: bool) -> u64 {
    let depth = chosen.len();
    if depth == k {
        return matcher.matches(g, chosen, code) as u64;
    }
    let start = chosen.last().map_or(0, |&v| v + 1);
    let remaining = k - depth;
    let mut total = 0u64;
    for v in start..=(g.n() - remaining) {
        let mut next = code;
        for (i, &u) in chosen.iter().enumerate() {
            if g.has_edge(u, v) {
                next |= 1 << pair_bit(i, depth);
            }
        }
        chosen.push(v);
        total += count_extensions(g, matcher, k, chosen, next, stop_at_first);
        chosen.pop();
        if stop_at_first && total > 0 {
            break;
        }
    }
    total
}

/// Induced copies of `h` in `g`, counted over vertex subsets and as labeled
/// embeddings. The first vertex of each subset is distributed over the rayon
/// pool; the sum is order-independent so the result is deterministic.
pub fn count_induced_copies(g: &Graph, h: &Graph) -> InducedCopies {
    let k = h.n();
    if k > g.n() {
        return InducedCopies { subsets: BigUint::default(), embeddings: BigUint::default() };
    }
    if k == 0 {
        return InducedCopies { subsets: BigUint::from(1u32), embeddings: BigUint::from(1u32) };
    }
    let matcher = Matcher::new(h);
    let subsets: u64 = (0..=(g.n() - k))
        .into_par_iter()
        .map(|first| {
            let mut chosen = Vec::with_capacity(k);
            chosen.push(first);
            count_extensions(g, &matcher, k, &mut chosen, 0, false)
        })
        .sum();
    let aut = automorphism_count(h);
    InducedCopies { subsets: BigUint::from(subsets), embeddings: BigUint::from(subsets) * BigUint::from(aut) }
}

/// Whether `g` contains `h` as an induced subgraph (stops at the first copy).
pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    let k = h.n();
    if k > g.n() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let matcher = Matcher::new(h);
    let mut chosen = Vec::with_capacity(k);
    count_extensions(g, &matcher, k, &mut chosen, 0, true) > 0
}

/// Vertex subsets inducing a copy of `h`, in lexicographic order. Intended for
/// small hosts and audits.
pub fn induced_copy_sets(g: &Graph, h: &Graph) -> Vec<Vec<usize>> {
    let k = h.n();
    let mut out = Vec::new();
    if k > g.n() || k == 0 {
        return out;
    }
    let matcher = Matcher::new(h);
    fn walk(g: &Graph, matcher: &Matcher, k: usize, chosen: &mut Vec<usize>, code: u64, out: &mut Vec<Vec<usize>>) {
        let depth = chosen.len();
        if depth == k {
            if matcher.matches(g, chosen, code) {
                out.push(chosen.clone());
            }
            return;
        }
        let start = chosen.last().map_or(0, |&v| v + 1);
        for v in start..=(g.n() - (k - depth)) {
            let mut next = code;
            for (i, &u) in chosen.iter().enumerate() {
                if g.has_edge(u, v) {
                    next |= 1 << pair_bit(i, depth);
                }
            }
            chosen.push(v);
            walk(g, matcher, k, chosen, next, out);
            chosen.pop();
        }
    }
    walk(g, &matcher, k, &mut Vec::new(), 0, &mut out);
    out
}
