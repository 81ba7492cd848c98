//! Canonical labeling by individualization and refinement.
//!
//! The vertex set is split into an ordered, equitable partition: cells are
//! refined by how many neighbours each vertex has in every other cell, starting
//! from degrees, until stable. When the partition is not discrete the first
//! non-singleton cell is branched on by individualizing each of its vertices in
//! turn. Every leaf of this tree is a vertex ordering; the canonical labeling is
//! the leaf whose (refinement invariants, row-major upper-triangle bit string)
//! is lexicographically smallest. The code is that bit string prefixed by `n`.
//!
//! Branches are skipped when an automorphism fixing every individualized vertex
//! on the current path maps them onto a branch already explored. Twin
//! transpositions are known up front; further automorphisms come from leaves
//! whose codes tie with the best one.

use super::{bit, Bits, Graph};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

const MAX_GENERATORS: usize = 96;

/// Permutation-invariant byte string: byte 0 is `n`, followed by the
/// row-major upper-triangle adjacency bits `x(0,1), x(0,2), ..., x(n-2,n-1)`
/// of the canonically labeled graph, packed most-significant bit first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    fn from_words(n: usize, words: &[u64]) -> Self {
        let nbits = n * (n - 1) / 2;
        let mut bytes = Vec::with_capacity(1 + nbits.div_ceil(8));
        bytes.push(n as u8);
        for &w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        bytes.truncate(1 + nbits.div_ceil(8));
        CanonicalCode(bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let Some(&n) = bytes.first() else {
            return Err(Error::InvalidParams("empty canonical code".into()));
        };
        let n = n as usize;
        if n == 0 || n > super::MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let nbits = n * (n - 1) / 2;
        if bytes.len() != 1 + nbits.div_ceil(8) {
            return Err(Error::InvalidParams("canonical code length".into()));
        }
        let code = CanonicalCode(bytes.to_vec());
        if canonical_form(&code.to_graph()) != code {
            return Err(Error::InvalidParams("bytes are not a canonical code".into()));
        }
        Ok(code)
    }

    /// Number of vertices of the encoded graph.
    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The graph in canonical labeling.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut adj = vec![0u64; n];
        let mut pos = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + pos / 8] & (0x80 >> (pos % 8)) != 0 {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
                pos += 1;
            }
        }
        Graph::from_rows_unchecked(adj)
    }

    pub fn graph6(&self) -> String {
        self.to_graph().graph6()
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.hex())
    }
}

/// Row-major upper-triangle bits of `adj` under `lab` (`lab[pos]` = vertex),
/// packed most-significant first into words.
fn code_words(adj: &[u64], lab: &[u8], out: &mut Vec<u64>) {
    out.clear();
    let n = lab.len();
    let mut word = 0u64;
    let mut filled = 0;
    for i in 0..n {
        let row = adj[lab[i] as usize];
        for &v in &lab[i + 1..] {
            word = (word << 1) | ((row >> v) & 1);
            filled += 1;
            if filled == 64 {
                out.push(word);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(word << (64 - filled));
    }
}

/// Splits cells by neighbour counts into each splitter until stable. New
/// fragments are ordered by increasing count.
fn refine(adj: &[u64], cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(8);
    while let Some(splitter) = queue.pop_front() {
        if cells.len() == adj.len() {
            return;
        }
        let mut out = Vec::with_capacity(cells.len() + 4);
        for &cell in cells.iter() {
            if cell & (cell - 1) == 0 {
                out.push(cell);
                continue;
            }
            groups.clear();
            for v in Bits(cell) {
                let c = (adj[v] & splitter).count_ones();
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= bit(v),
                    None => groups.push((c, bit(v))),
                }
            }
            if groups.len() == 1 {
                out.push(cell);
            } else {
                groups.sort_unstable_by_key(|&(c, _)| c);
                for &(_, m) in &groups {
                    out.push(m);
                    queue.push_back(m);
                }
            }
        }
        *cells = out;
    }
}

/// Isomorphism-invariant summary of an equitable partition: cell count, cell
/// sizes and the quotient matrix, folded into one word.
fn partition_invariant(adj: &[u64], cells: &[u64]) -> u64 {
    let mut h = cells.len() as u64;
    for &cell in cells {
        let rep = cell.trailing_zeros() as usize;
        h = mix(h, cell.count_ones() as u64);
        for &other in cells {
            h = mix(h, (adj[rep] & other).count_ones() as u64);
        }
    }
    h
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95)
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    best_inv: Vec<u64>,
    best_code: Vec<u64>,
    best_lab: Vec<u8>,
    have_best: bool,
    version: u64,
    path_inv: Vec<u64>,
    fixed: Vec<u8>,
    scratch: Vec<u64>,
    lab: Vec<u8>,
    gens: Vec<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], color: &[u8]) -> Self {
        let n = adj.len();
        let mut s = Search {
            n,
            adj,
            best_inv: vec![0; n + 1],
            best_code: Vec::new(),
            best_lab: (0..n as u8).collect(),
            have_best: false,
            version: 0,
            path_inv: vec![0; n + 1],
            fixed: vec![0; n],
            scratch: Vec::new(),
            lab: vec![0; n],
            gens: Vec::new(),
        };
        s.seed_twins(color);
        s
    }

    /// Swapping two same-colored twins is an automorphism. Each twin class is
    /// seeded as a chain of adjacent transpositions, so the members left after
    /// fixing a prefix of the class still form one orbit.
    fn seed_twins(&mut self, color: &[u8]) {
        let n = self.n;
        let mut claimed = 0u64;
        for u in 0..n {
            if claimed & bit(u) != 0 {
                continue;
            }
            let mut prev = u;
            for w in u + 1..n {
                if claimed & bit(w) != 0 || color[u] != color[w] {
                    continue;
                }
                if (self.adj[u] ^ self.adj[w]) & !(bit(u) | bit(w)) == 0 {
                    claimed |= bit(w);
                    let mut g: Vec<u8> = (0..n as u8).collect();
                    g.swap(prev, w);
                    self.gens.push(g);
                    prev = w;
                }
            }
        }
    }

    fn run(&mut self, color: &[u8]) {
        let ncolors = color.iter().copied().max().map_or(0, |c| c as usize + 1);
        let mut cells = vec![0u64; ncolors];
        for (v, &c) in color.iter().enumerate() {
            cells[c as usize] |= bit(v);
        }
        cells.retain(|&c| c != 0);
        let queue = cells.iter().copied().collect();
        refine(self.adj, &mut cells, queue);
        self.node(0, cells, true);
    }

    fn node(&mut self, depth: usize, cells: Vec<u64>, mut equal: bool) {
        let inv = partition_invariant(self.adj, &cells);
        if self.have_best && equal {
            match inv.cmp(&self.best_inv[depth]) {
                Ordering::Greater => return,
                Ordering::Less => equal = false,
                Ordering::Equal => {}
            }
        }
        self.path_inv[depth] = inv;

        let Some(target) = cells.iter().position(|c| c & (c - 1) != 0) else {
            self.leaf(depth, &cells, equal);
            return;
        };

        let mut explored = 0u64;
        let mut active: Vec<usize> = Vec::new();
        let mut gens_seen = usize::MAX;
        for v in Bits(cells[target]) {
            if explored != 0 {
                if gens_seen != self.gens.len() {
                    gens_seen = self.gens.len();
                    active = self.fixing_generators(depth);
                }
                if self.orbit_meets(v, explored, &active) {
                    continue;
                }
            }
            explored |= bit(v);
            self.fixed[depth] = v as u8;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(bit(v));
            next.push(cells[target] & !bit(v));
            next.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut next, VecDeque::from([bit(v)]));
            let before = self.version;
            self.node(depth + 1, next, equal);
            if self.version != before {
                // The new best passes through this node.
                equal = true;
            }
        }
    }

    fn leaf(&mut self, depth: usize, cells: &[u64], equal: bool) {
        for (pos, &c) in cells.iter().enumerate() {
            self.lab[pos] = c.trailing_zeros() as u8;
        }
        let mut code = std::mem::take(&mut self.scratch);
        code_words(self.adj, &self.lab, &mut code);
        let ord = if !self.have_best || !equal {
            Ordering::Less
        } else {
            code.cmp(&self.best_code)
        };
        match ord {
            Ordering::Less => {
                self.best_inv[..=depth].copy_from_slice(&self.path_inv[..=depth]);
                std::mem::swap(&mut self.best_code, &mut code);
                self.best_lab.copy_from_slice(&self.lab);
                self.have_best = true;
                self.version += 1;
            }
            Ordering::Equal if self.gens.len() < MAX_GENERATORS => {
                let mut g = vec![0u8; self.n];
                for (b, c) in self.best_lab.iter().zip(&self.lab) {
                    g[*b as usize] = *c;
                }
                if g.iter().enumerate().any(|(i, &x)| i != x as usize) {
                    self.gens.push(g);
                }
            }
            _ => {}
        }
        self.scratch = code;
    }

    fn fixing_generators(&self, depth: usize) -> Vec<usize> {
        let prefix = &self.fixed[..depth];
        self.gens
            .iter()
            .enumerate()
            .filter(|(_, g)| prefix.iter().all(|&v| g[v as usize] == v))
            .map(|(i, _)| i)
            .collect()
    }

    fn orbit_meets(&self, u: usize, targets: u64, active: &[usize]) -> bool {
        let mut orbit = bit(u);
        let mut frontier = bit(u);
        while frontier != 0 {
            let mut next = 0u64;
            for w in Bits(frontier) {
                for &gi in active {
                    next |= bit(self.gens[gi][w] as usize);
                }
            }
            next &= !orbit;
            if next & targets != 0 {
                return true;
            }
            orbit |= next;
            frontier = next;
        }
        false
    }
}

fn search<'a>(g: &'a Graph, color: &[u8]) -> Search<'a> {
    let mut s = Search::new(g.rows(), color);
    s.run(color);
    s
}

/// Canonical code together with the labeling that realises it:
/// `labeling[pos]` is the original vertex placed at position `pos`.
pub(crate) fn canonical_labeling(g: &Graph) -> (CanonicalCode, Vec<usize>) {
    canonical_labeling_colored(g, &vec![0; g.order()])
}

/// Canonical labeling of a vertex-colored graph; colors are ordered and only
/// color-preserving relabelings are considered.
pub(crate) fn canonical_labeling_colored(g: &Graph, color: &[u8]) -> (CanonicalCode, Vec<usize>) {
    let s = search(g, color);
    let code = CanonicalCode::from_words(g.order(), &s.best_code);
    (code, s.best_lab.iter().map(|&v| v as usize).collect())
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_labeling(g).0
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
        && canonical_form(g) == canonical_form(h)
}

pub const AUTOMORPHISM_LIMIT: usize = 16;

/// Order of the automorphism group, by orbit-stabilizer over a chain of
/// individualized vertices. Orbits are decided by comparing canonical codes
/// of vertex-colored graphs.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    if g.order() > AUTOMORPHISM_LIMIT {
        return Err(Error::CostGuard {
            what: "automorphism_count",
            n: g.order(),
            limit: AUTOMORPHISM_LIMIT,
        });
    }
    let n = g.order();
    let mut color = vec![0u8; n];
    let mut total = 1u64;
    loop {
        let ncolors = color.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut sizes = vec![0usize; ncolors];
        for &c in &color {
            sizes[c as usize] += 1;
        }
        let Some(target) = sizes.iter().position(|&s| s > 1) else {
            return Ok(total);
        };
        let members: Vec<usize> = (0..n).filter(|&v| color[v] as usize == target).collect();
        let base = individualize(&color, members[0]);
        let base_code = search(g, &base).best_code;
        let orbit = 1 + members[1..]
            .iter()
            .filter(|&&w| search(g, &individualize(&color, w)).best_code == base_code)
            .count() as u64;
        total *= orbit;
        color = base;
    }
}

/// Moves `v` into a singleton class placed just before the rest of its class.
fn individualize(color: &[u8], v: usize) -> Vec<u8> {
    let c = color[v];
    color
        .iter()
        .enumerate()
        .map(|(w, &cw)| if cw > c || (cw == c && w != v) { cw + 1 } else { cw })
        .collect()
}
