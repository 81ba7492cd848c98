//! Small simple graphs on at most 64 vertices.
//!
//! Each vertex owns one `u64` adjacency row, so induced subgraphs, degree
//! queries and complements are word operations. Everything in this module is
//! a pure function of immutable values.

mod blocks;
mod canon;
mod families;
mod graph6;

pub use blocks::{block_decomposition, BlockDecomposition};
pub use canon::{automorphism_count, canonical_form, is_isomorphic, CanonicalCode};
pub use families::{basic_family, Family};
pub use graph6::{parse_graph6, write_graph6};

pub(crate) use canon::{canonical_labeling, canonical_labeling_colored};

use crate::error::{Error, Result};
use std::fmt;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Coarse connectivity classification used by the reconstruction routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectivityClass {
    Disconnected,
    ConnectedWithCutVertex,
    TwoConnected,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows. Rows must be symmetric, loop-free
    /// and confined to the low `rows.len()` bits.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (row & !mask).trailing_zeros() as usize,
                    n,
                });
            }
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            for w in Bits(row) {
                if rows[w] & bit(v) == 0 {
                    return Err(Error::InvalidParams(format!(
                        "adjacency not symmetric at ({v}, {w})"
                    )));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        Self {
            n: rows.len(),
            adj: rows,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Degrees sorted nonincreasingly.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// `counts[i]` is the number of vertices of degree `i`, for `i` in `0..n`.
    pub fn degree_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n];
        for v in 0..self.n {
            counts[self.degree(v)] += 1;
        }
        counts
    }

    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & mask & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Disjoint union of `copies` copies of `self`.
    pub fn times(&self, copies: usize) -> Result<Graph> {
        if copies == 0 {
            return Err(Error::InvalidParams("zero copies".into()));
        }
        let mut g = self.clone();
        for _ in 1..copies {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// Induced subgraph on a vertex set given as a bit mask; the vertices keep
    /// their relative order.
    pub fn induced_mask(&self, set: u64) -> Result<Graph> {
        if set == 0 {
            return Err(Error::EmptyVertexSet);
        }
        if set & !low_mask(self.n) != 0 {
            return Err(Error::VertexOutOfRange {
                vertex: (set & !low_mask(self.n)).trailing_zeros() as usize,
                n: self.n,
            });
        }
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: u64) -> Graph {
        let adj = Bits(set).map(|v| compress(self.adj[v], set)).collect();
        Graph::from_rows_unchecked(adj)
    }

    /// Induced subgraph on the listed vertices (duplicates ignored).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut set = 0u64;
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            set |= bit(v);
        }
        self.induced_mask(set)
    }

    /// Applies a relabeling: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParams("permutation length".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::InvalidParams("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach(s, low_mask(self.n));
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `within`.
    pub(crate) fn reach(&self, s: usize, within: u64) -> u64 {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, low_mask(self.n)) == low_mask(self.n)
    }

    /// Whether the subgraph induced by `set` is connected (empty sets are not).
    pub(crate) fn is_connected_within(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        self.reach(set.trailing_zeros() as usize, set) == set
    }

    pub fn has_cut_vertex(&self) -> bool {
        let all = low_mask(self.n);
        (0..self.n).any(|v| {
            let rest = all & !bit(v);
            rest != 0 && !self.is_connected_within(rest)
        })
    }

    /// Disconnected graphs first; a single vertex counts as two-connected.
    pub fn connectivity_class(&self) -> ConnectivityClass {
        if !self.is_connected() {
            ConnectivityClass::Disconnected
        } else if self.n > 2 && self.has_cut_vertex() {
            ConnectivityClass::ConnectedWithCutVertex
        } else {
            ConnectivityClass::TwoConnected
        }
    }

    pub fn canonical_form(&self) -> CanonicalCode {
        canonical_form(self)
    }

    /// This graph relabeled into canonical order.
    pub fn canonical(&self) -> Graph {
        canonical_form(self).to_graph()
    }

    pub fn graph6(&self) -> String {
        write_graph6(self).expect("graph6 is defined for n <= 62")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Gathers the bits of `word` selected by `mask` into the low bits.
#[inline]
pub(crate) fn compress(word: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut i = 0;
    for v in Bits(mask) {
        out |= ((word >> v) & 1) << i;
        i += 1;
    }
    out
}

/// `make_graph` under its contract name.
pub fn make_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(n, edges)
}
