//! One graph per isomorphism class, by canonical augmentation.
//!
//! A graph on `n + 1` vertices is produced from its parent, the graph left
//! after deleting its canonical deletion vertex: the maximum-degree vertex
//! placed last by the canonical labeling. A child is kept only when the added
//! vertex lies in the orbit of that vertex, so each class has exactly one
//! parent class. Children of one parent that coincide up to isomorphism are
//! merged by code. All graphs are emitted in canonical labeling.

use crate::error::{Error, Result};
use crate::graph::{bit, canonical_labeling, canonical_labeling_colored, CanonicalCode, Graph};
use std::collections::BTreeMap;

pub const ENUMERATION_LIMIT: usize = 10;

/// Optional pruning for [`for_each_graph`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    /// Skip graphs with more edges; subtrees are cut early since edge counts
    /// only grow along the tree.
    pub max_edges: Option<usize>,
}

fn check_guard(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::CostGuard {
            what: "graph enumeration",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Accepted children of `parent` (in canonical labeling), sorted by code.
pub(crate) fn children(parent: &Graph, opts: EnumOptions) -> Vec<(CanonicalCode, Graph)> {
    let n = parent.order();
    let v = n;
    let rows = parent.rows();
    let parent_edges = parent.edge_count();
    let parent_max = parent.max_degree();
    let mut kept: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    for set in 0..(1u64 << n) {
        let deg = set.count_ones() as usize;
        // the new vertex must reach the child's maximum degree
        if deg < parent_max {
            continue;
        }
        if let Some(m) = opts.max_edges {
            if parent_edges + deg > m {
                continue;
            }
        }
        if (0..n).any(|u| rows[u].count_ones() as usize + (set >> u & 1) as usize > deg) {
            continue;
        }
        let mut adj: Vec<u64> = rows.to_vec();
        for u in crate::graph::Bits(set) {
            adj[u] |= bit(v);
        }
        adj.push(set);
        let child = Graph::from_rows_unchecked(adj);
        let (code, lab) = canonical_labeling(&child);
        if kept.contains_key(&code) {
            continue;
        }
        let last_max = *lab
            .iter()
            .rev()
            .find(|&&x| child.degree(x) == deg)
            .expect("the new vertex has maximum degree");
        if last_max != v && !same_orbit(&child, v, last_max) {
            continue;
        }
        kept.insert(code.clone(), code.to_graph());
    }
    kept.into_iter().collect()
}

fn same_orbit(g: &Graph, a: usize, b: usize) -> bool {
    let na: Vec<usize> = {
        let mut d: Vec<usize> = crate::graph::Bits(g.neighbors(a)).map(|x| g.degree(x)).collect();
        d.sort_unstable();
        d
    };
    let nb: Vec<usize> = {
        let mut d: Vec<usize> = crate::graph::Bits(g.neighbors(b)).map(|x| g.degree(x)).collect();
        d.sort_unstable();
        d
    };
    if na != nb {
        return false;
    }
    let mark = |x: usize| {
        let mut c = vec![1u8; g.order()];
        c[x] = 0;
        c
    };
    canonical_labeling_colored(g, &mark(a)).0 == canonical_labeling_colored(g, &mark(b)).0
}

/// Depth-first walk of the subtree below `root`, visiting every graph of order
/// `n` in it. `root` must be in canonical labeling.
pub(crate) fn walk_subtree(root: &Graph, n: usize, opts: EnumOptions, visit: &mut dyn FnMut(&Graph)) {
    if let Some(m) = opts.max_edges {
        if root.edge_count() > m {
            return;
        }
    }
    if root.order() == n {
        visit(root);
        return;
    }
    for (_, child) in children(root, opts) {
        walk_subtree(&child, n, opts, visit);
    }
}

/// All graphs of order `m`, sorted by code.
pub(crate) fn level(m: usize, opts: EnumOptions) -> Vec<Graph> {
    let mut out = Vec::new();
    walk_subtree(&Graph::empty(1).expect("K1"), m, opts, &mut |g| out.push(g.clone()));
    out
}

/// Order at which the tree is cut into independent work units.
pub(crate) fn split_level(n: usize) -> usize {
    n.saturating_sub(2).max(1).min(7)
}

/// Calls `visit` once per isomorphism class of `n`-vertex graphs, in a fixed
/// order: depth first, siblings by increasing canonical code.
pub fn for_each_graph(n: usize, opts: EnumOptions, mut visit: impl FnMut(&Graph)) -> Result<()> {
    check_guard(n)?;
    walk_subtree(&Graph::empty(1)?, n, opts, &mut visit);
    Ok(())
}

pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_graph(n, EnumOptions::default(), |g| out.push(g.clone()))?;
    Ok(out)
}

/// Number of isomorphism classes, without keeping the graphs.
pub fn count_graphs(n: usize, opts: EnumOptions) -> Result<u64> {
    let mut count = 0;
    for_each_graph(n, opts, |_| count += 1)?;
    Ok(count)
}
