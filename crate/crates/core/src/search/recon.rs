//! Per-graph questions answered against all graphs of the same order.

use super::enumerate::{for_each_graph, EnumOptions};
use crate::deck::{class_counts, compute_deck};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, is_isomorphic, low_mask, CanonicalCode, Graph};
use crate::pattern::TABLE_MAX_ORDER;
use crate::subsets::Subsets;
use std::collections::{BTreeMap, HashSet};

pub const MAX_RECON_LIMIT: usize = 9;
pub const DISTINGUISHING_LIMIT: usize = 12;

enum DeckKey {
    Table(Vec<u32>),
    Full(crate::deck::Deck),
}

fn deck_key(g: &Graph, k: usize) -> DeckKey {
    if k <= TABLE_MAX_ORDER {
        DeckKey::Table(class_counts(g, k))
    } else {
        DeckKey::Full(compute_deck(g, k).expect("k in range"))
    }
}

fn same_key(a: &DeckKey, b: &DeckKey) -> bool {
    match (a, b) {
        (DeckKey::Table(x), DeckKey::Table(y)) => x == y,
        (DeckKey::Full(x), DeckKey::Full(y)) => x == y,
        _ => false,
    }
}

/// Largest `ℓ` such that no other graph on `n` vertices shares the
/// `(n-ℓ)`-deck of `g`.
///
/// Equal `k`-decks imply equal `(k-1)`-decks, so for every rival `H` it is
/// enough to find the largest `k` at which the decks still agree. Rivals must
/// share the edge count once `k >= 2`, and complements share the answer, so
/// only graphs with `min(m, C(n,2) - m)` edges are scanned.
pub fn max_reconstructibility(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > MAX_RECON_LIMIT {
        return Err(Error::CostGuard {
            what: "max_reconstructibility",
            n,
            limit: MAX_RECON_LIMIT,
        });
    }
    if n == 1 {
        return Ok(0);
    }
    let pairs = n * (n - 1) / 2;
    let g = if g.edge_count() * 2 > pairs { g.complement() } else { g.clone() };
    let m = g.edge_count();
    let ours: Vec<DeckKey> = (0..n).map(|k| if k == 0 { DeckKey::Table(vec![]) } else { deck_key(&g, k) }).collect();
    // every other graph shares the 1-deck
    let mut best_shared = 1;
    let code = g.canonical_form();
    for_each_graph(n, EnumOptions { max_edges: Some(m) }, |h| {
        if h.edge_count() != m || h.canonical_form() == code {
            return;
        }
        let mut k = best_shared + 1;
        while k < n && same_key(&deck_key(h, k), &ours[k]) {
            k += 1;
        }
        best_shared = best_shared.max(k - 1);
    })?;
    Ok(n - 1 - best_shared)
}

/// Whether every induced subgraph on `n - ℓ - 1` vertices is asymmetric and
/// no two of them are isomorphic.
pub fn check_distinguishing(g: &Graph, ell: usize) -> Result<bool> {
    let n = g.order();
    if n > DISTINGUISHING_LIMIT {
        return Err(Error::CostGuard {
            what: "check_distinguishing",
            n,
            limit: DISTINGUISHING_LIMIT,
        });
    }
    if ell == 0 || ell + 2 > n {
        return Err(Error::InvalidParams(format!("need 1 <= ℓ <= n - 2, got ℓ = {ell}, n = {n}")));
    }
    let p = n - ell - 1;
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    for set in Subsets::new(low_mask(n), p) {
        let card = g.induced_mask(set)?;
        if !seen.insert(card.canonical_form()) || automorphism_count(&card)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First graph on `n` vertices, in enumeration order, passing
/// [`check_distinguishing`].
pub fn find_distinguishing(n: usize, ell: usize) -> Result<Option<Graph>> {
    let mut found = None;
    let mut failure = None;
    for_each_graph(n, EnumOptions::default(), |g| {
        if found.is_some() || failure.is_some() {
            return;
        }
        match check_distinguishing(g, ell) {
            Ok(true) => found = Some(g.clone()),
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// One selected card: the deleted vertices and the card's class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedCard {
    pub deleted: Vec<usize>,
    pub code: CanonicalCode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardSelection {
    pub base: Vec<usize>,
    pub cards: Vec<SelectedCard>,
}

impl CardSelection {
    pub fn multiset(&self) -> BTreeMap<CanonicalCode, u64> {
        let mut m = BTreeMap::new();
        for c in &self.cards {
            *m.entry(c.code.clone()).or_insert(0) += 1;
        }
        m
    }
}

/// `C(ℓ+2, 2)` cards of order `n - ℓ` built around a base set `S` of `ℓ + 1`
/// vertices: the `ℓ + 1` cards deleting `ℓ` vertices of `S`, and for each pair
/// `{u, v}` in `S` the card deleting `S - {u, v}` and the lowest vertex
/// outside `S`.
pub fn sw_card_multiset(g: &Graph, base: &[usize], ell: usize) -> Result<CardSelection> {
    let n = g.order();
    if ell < 2 {
        return Err(Error::InvalidParams("the selection needs ℓ >= 2".into()));
    }
    let mut s = 0u64;
    for &v in base {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        s |= 1 << v;
    }
    if s.count_ones() as usize != ell + 1 || base.len() != ell + 1 {
        return Err(Error::InvalidParams(format!("base set must have ℓ + 1 = {} distinct vertices", ell + 1)));
    }
    if n < ell + 2 {
        return Err(Error::InvalidParams(format!("need n >= ℓ + 2, got n = {n}")));
    }
    let all = low_mask(n);
    let outside = (all & !s).trailing_zeros() as u64;
    let card = |deleted: u64| -> Result<SelectedCard> {
        Ok(SelectedCard {
            deleted: crate::graph::Bits(deleted).collect(),
            code: g.induced_mask(all & !deleted)?.canonical_form(),
        })
    };
    let mut cards = Vec::new();
    for t in Subsets::new(s, ell) {
        cards.push(card(t)?);
    }
    for pair in Subsets::new(s, 2) {
        cards.push(card((s & !pair) | 1 << outside)?);
    }
    let mut sorted = base.to_vec();
    sorted.sort_unstable();
    Ok(CardSelection { base: sorted, cards })
}

/// Whether `g` and `h` are distinct graphs with the same `k`-deck.
pub fn is_same_deck_pair(g: &Graph, h: &Graph, k: usize) -> Result<bool> {
    Ok(compute_deck(g, k)? == compute_deck(h, k)? && !is_isomorphic(g, h))
}
