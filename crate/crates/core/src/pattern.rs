//! Lookup tables from labeled graphs on at most seven vertices to their
//! isomorphism class.
//!
//! A labeled graph on `k` vertices is keyed by its column-major upper-triangle
//! bits, `x(0,1)` lowest. Class ids follow canonical-code order, so a vector
//! of per-class counts is already a sorted deck.

use crate::graph::{bit, compress, low_mask, Bits, CanonicalCode, Graph};
use std::sync::OnceLock;

pub const TABLE_MAX_ORDER: usize = 7;

pub struct PatternTable {
    k: usize,
    class_of: Vec<u16>,
    codes: Vec<CanonicalCode>,
}

static TABLES: [OnceLock<PatternTable>; TABLE_MAX_ORDER + 1] = [const { OnceLock::new() }; TABLE_MAX_ORDER + 1];

/// The table for `k`-vertex graphs, built on first use; `None` above seven.
pub fn table(k: usize) -> Option<&'static PatternTable> {
    if k == 0 || k > TABLE_MAX_ORDER {
        return None;
    }
    Some(TABLES[k].get_or_init(|| PatternTable::build(k)))
}

/// Key of the subgraph induced by `set`, vertices taken in increasing order.
#[inline]
pub fn pattern_key(rows: &[u64], set: u64) -> usize {
    let mut key = 0usize;
    let mut offset = 0;
    for (j, v) in Bits(set).enumerate() {
        key |= ((compress(rows[v], set) & low_mask(j)) as usize) << offset;
        offset += j;
    }
    key
}

fn key_graph(k: usize, key: usize) -> Graph {
    let mut adj = vec![0u64; k];
    let mut pos = 0;
    for j in 1..k {
        for i in 0..j {
            if key >> pos & 1 == 1 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            pos += 1;
        }
    }
    Graph::from_rows_unchecked(adj)
}

#[inline]
fn pair_pos(a: usize, b: usize) -> usize {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    j * (j - 1) / 2 + i
}

impl PatternTable {
    fn build(k: usize) -> Self {
        let size = 1usize << (k * (k - 1) / 2);
        let mut class_of = vec![u16::MAX; size];
        let mut codes = Vec::new();
        let mut perm: Vec<usize> = (0..k).collect();
        for key in 0..size {
            if class_of[key] != u16::MAX {
                continue;
            }
            let g = key_graph(k, key);
            let id = codes.len() as u16;
            codes.push(g.canonical_form());
            let edges = g.edges();
            // Heap's algorithm over all relabelings
            let mut c = vec![0usize; k];
            let mut stamp = |p: &[usize]| {
                let mut image = 0usize;
                for &(u, v) in &edges {
                    image |= 1 << pair_pos(p[u], p[v]);
                }
                class_of[image] = id;
            };
            perm.iter_mut().enumerate().for_each(|(i, p)| *p = i);
            stamp(&perm);
            let mut i = 1;
            while i < k {
                if c[i] < i {
                    if i % 2 == 0 {
                        perm.swap(0, i);
                    } else {
                        perm.swap(c[i], i);
                    }
                    stamp(&perm);
                    c[i] += 1;
                    i = 1;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..codes.len()).collect();
        order.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
        let mut rank = vec![0u16; codes.len()];
        for (r, &old) in order.iter().enumerate() {
            rank[old] = r as u16;
        }
        for c in &mut class_of {
            *c = rank[*c as usize];
        }
        let codes = order.into_iter().map(|i| codes[i].clone()).collect();
        PatternTable { k, class_of, codes }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn class_count(&self) -> usize {
        self.codes.len()
    }

    #[inline]
    pub fn class_of_key(&self, key: usize) -> usize {
        self.class_of[key] as usize
    }

    /// Class of the subgraph of `rows` induced by `set` (`|set| = k`).
    #[inline]
    pub fn class_of_set(&self, rows: &[u64], set: u64) -> usize {
        debug_assert_eq!(set.count_ones() as usize, self.k);
        self.class_of[pattern_key(rows, set)] as usize
    }

    pub fn code(&self, class: usize) -> &CanonicalCode {
        &self.codes[class]
    }

    pub fn codes(&self) -> &[CanonicalCode] {
        &self.codes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{basic_family, Family};

    #[test]
    fn class_counts() {
        // numbers of unlabeled graphs on 1..=7 vertices
        let expected = [1, 2, 4, 11, 34, 156, 1044];
        for k in 1..=6 {
            assert_eq!(table(k).unwrap().class_count(), expected[k - 1], "k={k}");
        }
        assert!(table(8).is_none());
    }

    #[test]
    fn lookups_agree_with_canonical_form() {
        let t = table(5).unwrap();
        let host = basic_family(Family::Spider, &[3, 2, 2]).unwrap();
        for set in crate::subsets::Subsets::new(low_mask(host.order()), 5) {
            let card = host.induced_mask(set).unwrap();
            assert_eq!(t.code(t.class_of_set(host.rows(), set)), &card.canonical_form());
        }
        assert!(t.codes().windows(2).all(|w| w[0] < w[1]));
    }
}
