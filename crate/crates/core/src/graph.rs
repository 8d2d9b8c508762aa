//! Simple undirected graphs and uniform hypergraphs.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::vertex_set::VertexSet;

/// Simple undirected graph on vertices `0..n` with bitset adjacency rows.
///
/// Rows are symmetric and loop-free; every constructor enforces this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::empty(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| {
                let mut row = VertexSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        Graph { adj }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from `u64` adjacency masks. Requires `n <= 64`; the
    /// masks must already be symmetric and loop-free.
    pub fn from_masks(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        if n > 64 {
            return Err(Error::input("mask rows support at most 64 vertices"));
        }
        for (v, &row) in rows.iter().enumerate() {
            if (row >> v) & 1 == 1 {
                return Err(Error::input(format!("loop at vertex {v}")));
            }
            if n < 64 && row >> n != 0 {
                return Err(Error::input(format!("row {v} has bits beyond n")));
            }
            for u in crate::vertex_set::mask_bits(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(Error::input(format!("asymmetric adjacency at ({v}, {u})")));
                }
            }
        }
        Ok(Graph { adj: rows.iter().map(|&m| VertexSet::from_mask(n, m)).collect() })
    }

    /// Graph number `code` in the lexicographic enumeration of labeled graphs
    /// on `n` vertices: bit `i` of `code` is the `i`-th pair `(u, v)`, `u < v`.
    pub fn from_pair_code(n: usize, code: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                if (code >> bit) & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Adds `uv` if absent and removes it otherwise.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        if self.adj[u].contains(v) {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        } else {
            self.add_edge(u, v);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree of `v` inside `within`.
    #[inline]
    pub fn degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.adj[v].intersection_len(within)
    }

    /// Adjacency rows as `u64` masks, available when `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n() <= 64).then(|| self.adj.iter().map(VertexSet::mask).collect())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// `|E| / C(n, 2)` as an exact rational.
    pub fn edge_density(&self) -> Result<Rational> {
        let n = self.n();
        if n < 2 {
            return Err(Error::Degenerate(format!("edge density undefined on {n} vertices")));
        }
        let pairs = n * (n - 1) / 2;
        Ok(Rational::new(BigInt::from(self.edge_count()), BigInt::from(pairs)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph { adj }
    }

    /// Subgraph induced by `s`, relabeled `0..|s|` in ascending original order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        if s.universe() != self.n() {
            if let Some(bad) = s.iter().find(|&v| v >= self.n()) {
                return Err(Error::input(format!("vertex {bad} out of range for {} vertices", self.n())));
            }
        }
        let members = s.to_vec();
        self.induced_on(&members)
    }

    /// Subgraph induced by an ascending, duplicate-free vertex list.
    pub fn induced_on(&self, members: &[usize]) -> Result<Graph> {
        if let Some(&bad) = members.iter().find(|&&v| v >= self.n()) {
            return Err(Error::input(format!("vertex {bad} out of range for {} vertices", self.n())));
        }
        let m = members.len();
        let mut g = Graph::empty(m);
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn max_degree(&self) -> Result<usize> {
        if self.n() == 0 {
            return Err(Error::Degenerate("maximum degree of the empty vertex set".into()));
        }
        Ok(self.adj.iter().map(VertexSet::len).max().unwrap_or(0))
    }

    pub fn min_degree(&self) -> Result<usize> {
        if self.n() == 0 {
            return Err(Error::Degenerate("minimum degree of the empty vertex set".into()));
        }
        Ok(self.adj.iter().map(VertexSet::len).min().unwrap_or(0))
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.adj[v].intersection_len(s)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let k = s.len();
        s.iter().all(|v| self.adj[v].intersection_len(s) == k - 1)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::input("relabeling is not a permutation"));
        }
        Graph::from_edges(n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Checks that the symmetric, loop-free invariants hold.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for v in 0..n {
            if self.adj[v].universe() != n {
                return Err(Error::Consistency(format!("row {v} has wrong universe")));
            }
            if self.adj[v].contains(v) {
                return Err(Error::Consistency(format!("loop at {v}")));
            }
            for u in self.adj[v].iter() {
                if !self.adj[u].contains(v) {
                    return Err(Error::Consistency(format!("asymmetric pair ({v}, {u})")));
                }
            }
        }
        Ok(())
    }
}

/// Small named graphs used by tests, presets and the CLI.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    pub fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("valid star")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
    }

    /// Looks up a preset by name: `P<n>`, `C<n>`, `K<n>`, `E<n>` (edgeless),
    /// `S<n>` (star) or `petersen`.
    pub fn by_name(name: &str) -> Option<Graph> {
        if name.eq_ignore_ascii_case("petersen") {
            return Some(petersen());
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        let n: usize = tail.parse().ok()?;
        match head {
            "P" | "p" => Some(path(n)),
            "C" | "c" if n >= 3 => Some(cycle(n)),
            "K" | "k" => Some(Graph::complete(n)),
            "E" | "e" => Some(Graph::empty(n)),
            "S" | "s" if n >= 1 => Some(star(n)),
            _ => None,
        }
    }
}

/// An `r`-uniform hypergraph on `0..n` with canonically sorted edges.
#[derive(Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    edge_sets: Vec<VertexSet>,
}

impl std::fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniformHypergraph(r={}, n={}, edges={:?})", self.r, self.n, self.edges)
    }
}

impl UniformHypergraph {
    /// Validates and canonicalizes an edge list. Each edge is sorted; the
    /// edge list is sorted and must be duplicate-free.
    pub fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::input(format!("uniformity must be at least 2, got {r}")));
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != r {
                return Err(Error::input(format!("edge {e:?} does not have {r} vertices")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::input(format!("vertex {bad} out of range for {n} vertices")));
            }
            canonical.push(e);
        }
        canonical.sort();
        if canonical.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("duplicate edge"));
        }
        let edge_sets = canonical
            .iter()
            .map(|e| VertexSet::from_vertices(n, e.iter().copied()).expect("checked range"))
            .collect();
        Ok(UniformHypergraph { r, n, edges: canonical, edge_sets })
    }

    /// The 2-uniform hypergraph with the same edges as `g`.
    pub fn from_graph(g: &Graph) -> Self {
        let edges = g.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
        UniformHypergraph::new(2, g.n(), edges).expect("graph edges are valid")
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_sets(&self) -> &[VertexSet] {
        &self.edge_sets
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges of `G[within]` containing `v`.
    pub fn degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.edge_sets.iter().filter(|e| e.contains(v) && e.is_subset(within)).count()
    }

    pub fn max_degree_within(&self, within: &VertexSet) -> usize {
        within.iter().map(|v| self.degree_within(v, within)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        !self.edge_sets.iter().any(|e| e.is_subset(s))
    }
}
