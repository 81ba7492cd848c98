//! k-decks: the multiset of isomorphism classes of k-vertex induced subgraphs.

use crate::error::{Error, Result};
use crate::graph::{low_mask, parse_graph6, CanonicalCode, Graph};
use crate::pattern;
use crate::subsets::{binomial, Subsets};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};

/// Card multiset of a host graph on `n` vertices, cards of order `k`.
///
/// Nothing forces a `Deck` to be complete or consistent; [`validate_deck`]
/// reports whether it could be the deck of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deck {
    n: usize,
    k: usize,
    cards: BTreeMap<CanonicalCode, u64>,
}

#[derive(Serialize, Deserialize)]
struct DeckFile {
    n: usize,
    k: usize,
    cards: Vec<CardEntry>,
}

#[derive(Serialize, Deserialize)]
struct CardEntry {
    g6: String,
    count: u64,
}

impl Deck {
    /// Builds a deck from explicit cards; repeated classes are merged and
    /// zero counts dropped.
    pub fn from_cards<I>(n: usize, k: usize, cards: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CanonicalCode, u64)>,
    {
        if k == 0 || k > n || n > crate::graph::MAX_VERTICES {
            return Err(Error::CardSize { k, n });
        }
        let mut map = BTreeMap::new();
        for (code, count) in cards {
            if count > 0 {
                *map.entry(code).or_insert(0) += count;
            }
        }
        Ok(Deck { n, k, cards: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of deleted vertices, `n - k`.
    pub fn ell(&self) -> usize {
        self.n - self.k
    }

    pub fn cards(&self) -> &BTreeMap<CanonicalCode, u64> {
        &self.cards
    }

    pub fn total(&self) -> u128 {
        self.cards.values().map(|&c| c as u128).sum()
    }

    pub fn count(&self, code: &CanonicalCode) -> u64 {
        self.cards.get(code).copied().unwrap_or(0)
    }

    pub fn count_of(&self, card: &Graph) -> u64 {
        self.count(&card.canonical_form())
    }

    /// Cards as graphs in canonical labeling, with their counts.
    pub fn card_graphs(&self) -> impl Iterator<Item = (Graph, u64)> + '_ {
        self.cards.iter().map(|(c, &m)| (c.to_graph(), m))
    }

    /// First 16 bytes of SHA-256 over the sorted binary serialization.
    pub fn fingerprint(&self) -> [u8; 16] {
        let mut h = Sha256::new();
        h.update((self.n as u32).to_le_bytes());
        h.update((self.k as u32).to_le_bytes());
        for (code, count) in &self.cards {
            h.update(code.as_bytes());
            h.update(count.to_le_bytes());
        }
        let digest = h.finalize();
        let mut out = [0u8; 16];
        out.copy_from_slice(&digest[..16]);
        out
    }

    /// JSON with cards sorted by graph6 string.
    pub fn to_json(&self) -> String {
        let mut cards: Vec<CardEntry> = self
            .cards
            .iter()
            .map(|(code, &count)| CardEntry {
                g6: code.graph6(),
                count,
            })
            .collect();
        cards.sort_by(|a, b| a.g6.cmp(&b.g6));
        let file = DeckFile {
            n: self.n,
            k: self.k,
            cards,
        };
        let mut s = serde_json::to_string_pretty(&file).expect("deck serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DeckFile =
            serde_json::from_str(text).map_err(|e| Error::DeckFormat(e.to_string()))?;
        if file.k == 0 || file.k > file.n || file.n > crate::graph::MAX_VERTICES {
            return Err(Error::DeckFormat(format!("bad sizes n = {}, k = {}", file.n, file.k)));
        }
        let mut cards = Vec::with_capacity(file.cards.len());
        for entry in file.cards {
            if entry.count == 0 {
                return Err(Error::DeckFormat(format!("zero count for card {}", entry.g6)));
            }
            cards.push((parse_graph6(&entry.g6)?.canonical_form(), entry.count));
        }
        Deck::from_cards(file.n, file.k, cards)
    }
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || k > g.order() {
        Err(Error::CardSize { k, n: g.order() })
    } else {
        Ok(())
    }
}

/// Work above this many subsets is split across the rayon pool.
const PARALLEL_SUBSETS: u128 = 4096;

/// Runs `f` on every `k`-subset of `0..n`, folding per-thread maps and merging
/// them by addition, so the result does not depend on scheduling.
fn fold_subsets<K, F>(n: usize, k: usize, f: F) -> HashMap<K, u64>
where
    K: std::hash::Hash + Eq + Send,
    F: Fn(u64) -> K + Sync,
{
    let all = low_mask(n);
    let run = |lowest: usize| {
        let mut local: HashMap<K, u64> = HashMap::new();
        let above = all & !low_mask(lowest + 1);
        for rest in Subsets::new(above, k - 1) {
            *local.entry(f(rest | 1 << lowest)).or_insert(0) += 1;
        }
        local
    };
    let merge = |mut a: HashMap<K, u64>, b: HashMap<K, u64>| {
        for (key, c) in b {
            *a.entry(key).or_insert(0) += c;
        }
        a
    };
    if binomial(n as u64, k as u64) > PARALLEL_SUBSETS {
        (0..=n - k).into_par_iter().map(run).reduce(HashMap::new, merge)
    } else {
        (0..=n - k).map(run).fold(HashMap::new(), merge)
    }
}

/// Per-class card counts for `k <= 7`, indexed by pattern class id.
pub(crate) fn class_counts(g: &Graph, k: usize) -> Vec<u32> {
    let table = pattern::table(k).expect("k <= 7");
    let rows = g.rows();
    let mut counts = vec![0u32; table.class_count()];
    for set in Subsets::new(low_mask(g.order()), k) {
        counts[table.class_of_set(rows, set)] += 1;
    }
    counts
}

/// Same value as [`Deck::fingerprint`] for a deck given as pattern class counts.
pub(crate) fn fingerprint_counts(n: usize, k: usize, counts: &[u32]) -> [u8; 16] {
    let table = pattern::table(k).expect("k <= 7");
    let mut h = Sha256::new();
    h.update((n as u32).to_le_bytes());
    h.update((k as u32).to_le_bytes());
    for (class, &count) in counts.iter().enumerate() {
        if count > 0 {
            h.update(table.code(class).as_bytes());
            h.update((count as u64).to_le_bytes());
        }
    }
    let digest = h.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&digest[..16]);
    out
}

pub fn compute_deck(g: &Graph, k: usize) -> Result<Deck> {
    check_k(g, k)?;
    let n = g.order();
    if let Some(table) = pattern::table(k) {
        let counts = fold_subsets(n, k, |set| table.class_of_set(g.rows(), set));
        return Deck::from_cards(
            n,
            k,
            counts.into_iter().map(|(c, m)| (table.code(c).clone(), m)),
        );
    }
    let counts = fold_subsets(n, k, |set| g.induced_unchecked(set).canonical_form());
    Deck::from_cards(n, k, counts)
}

pub fn decks_equal(a: &Deck, b: &Deck) -> bool {
    a == b
}

fn card_code(card: &Graph, set: u64) -> CanonicalCode {
    match pattern::table(set.count_ones() as usize) {
        Some(t) => t.code(t.class_of_set(card.rows(), set)).clone(),
        None => card.induced_unchecked(set).canonical_form(),
    }
}

/// The `(k-1)`-deck implied by a complete `k`-deck: every `(k-1)`-card appears
/// in exactly `n - k + 1` of the `k`-cards.
pub fn derive_subdeck(d: &Deck) -> Result<Deck> {
    if d.k < 2 {
        return Err(Error::CardSize { k: d.k, n: d.n });
    }
    let mut agg: BTreeMap<CanonicalCode, u128> = BTreeMap::new();
    for (code, &count) in &d.cards {
        let card = code.to_graph();
        if card.order() != d.k {
            return Err(Error::InconsistentDeck(format!(
                "card of order {} in a {}-deck",
                card.order(),
                d.k
            )));
        }
        let all = low_mask(d.k);
        for v in 0..d.k {
            *agg.entry(card_code(&card, all & !(1 << v))).or_insert(0) += count as u128;
        }
    }
    let divisor = (d.n - d.k + 1) as u128;
    let mut cards = Vec::with_capacity(agg.len());
    for (code, total) in agg {
        if total % divisor != 0 {
            return Err(Error::InconsistentDeck(format!(
                "level {}: a card occurs {total} times, not a multiple of {divisor}",
                d.k - 1
            )));
        }
        cards.push((code, (total / divisor) as u64));
    }
    Deck::from_cards(d.n, d.k - 1, cards)
}

/// Derives downward until the card size is `k`.
pub fn derive_to(d: &Deck, k: usize) -> Result<Deck> {
    if k == 0 || k > d.k {
        return Err(Error::CardSize { k, n: d.n });
    }
    let mut cur = d.clone();
    while cur.k > k {
        cur = derive_subdeck(&cur)?;
    }
    Ok(cur)
}

pub fn deck_complement(d: &Deck) -> Deck {
    let cards = d
        .cards
        .iter()
        .map(|(code, &c)| (code.to_graph().complement().canonical_form(), c));
    Deck::from_cards(d.n, d.k, cards).expect("sizes unchanged")
}

/// Number of `p`-subsets of `host` inducing a copy of `f`.
pub fn induced_copies(host: &Graph, f: &Graph) -> u128 {
    let p = f.order();
    if p > host.order() {
        return 0;
    }
    let edges = f.edge_count() as u32;
    let degrees = f.degree_sequence();
    let table = pattern::table(p);
    let target_class = table.map(|t| t.class_of_key(pattern::pattern_key(f.rows(), low_mask(p))));
    let target_code = if table.is_none() { Some(f.canonical_form()) } else { None };
    let rows = host.rows();
    let mut total = 0u128;
    let mut degs = Vec::with_capacity(p);
    for set in Subsets::new(low_mask(host.order()), p) {
        degs.clear();
        let mut twice = 0u32;
        for v in crate::graph::Bits(set) {
            let d = (rows[v] & set).count_ones();
            twice += d;
            degs.push(d as usize);
        }
        if twice != 2 * edges {
            continue;
        }
        degs.sort_unstable_by(|a, b| b.cmp(a));
        if degs != degrees {
            continue;
        }
        let hit = match (table, target_class) {
            (Some(t), Some(c)) => t.class_of_set(rows, set) == c,
            _ => host.induced_unchecked(set).canonical_form() == *target_code.as_ref().unwrap(),
        };
        total += hit as u128;
    }
    total
}

/// Induced copies of `f` in the host, recovered from a complete deck: each copy
/// lies in `C(n - p, n - k)` cards.
pub fn count_induced(d: &Deck, f: &Graph) -> Result<u128> {
    let p = f.order();
    if p > d.k {
        return Err(Error::InvalidParams(format!(
            "pattern has {p} vertices but cards have {}",
            d.k
        )));
    }
    let t: u128 = d
        .cards
        .iter()
        .map(|(code, &c)| c as u128 * induced_copies(&code.to_graph(), f))
        .sum();
    let divisor = binomial((d.n - p) as u64, (d.n - d.k) as u64);
    if t % divisor != 0 {
        return Err(Error::InconsistentDeck(format!(
            "{t} appearances of a {p}-vertex pattern do not divide by {divisor}"
        )));
    }
    Ok(t / divisor)
}

/// Multiset intersection.
pub fn deck_common(a: &Deck, b: &Deck) -> Result<Deck> {
    if a.k != b.k || a.n != b.n {
        return Err(Error::DeckMismatch(format!(
            "(n, k) = ({}, {}) vs ({}, {})",
            a.n, a.k, b.n, b.k
        )));
    }
    let cards = a
        .cards
        .iter()
        .filter_map(|(code, &c)| b.cards.get(code).map(|&m| (code.clone(), c.min(m))));
    Deck::from_cards(a.n, a.k, cards)
}

/// Outcome of [`validate_deck`]; the reason names the first failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Checks card orders, the total `C(n,k)`, and that every derived deck down
/// to single vertices divides exactly and has the right total.
pub fn validate_deck(d: &Deck) -> Validity {
    let mut cur = d.clone();
    loop {
        if let Some(bad) = cur.cards.keys().find(|c| c.order() != cur.k) {
            return Validity::Invalid(format!(
                "level {}: card with {} vertices",
                cur.k,
                bad.order()
            ));
        }
        let expected = binomial(cur.n as u64, cur.k as u64);
        if cur.total() != expected {
            return Validity::Invalid(format!(
                "level {}: {} cards, expected {expected}",
                cur.k,
                cur.total()
            ));
        }
        if cur.k == 1 {
            return Validity::Valid;
        }
        cur = match derive_subdeck(&cur) {
            Ok(next) => next,
            Err(e) => return Validity::Invalid(e.to_string()),
        };
    }
}

/// The `k`-deck of `G + extra·K_1` from the `k`-deck of `G`. A card holding
/// `j` of the added vertices is a `(k-j)`-card of `G` plus `j` isolated
/// vertices, and `C(extra, j)` choices of added vertices give it.
pub fn deck_with_isolated(d: &Deck, extra: usize) -> Result<Deck> {
    let (n, k) = (d.n, d.k);
    if n + extra > crate::graph::MAX_VERTICES {
        return Err(Error::VertexCount(n + extra));
    }
    let mut cards: BTreeMap<CanonicalCode, u64> = BTreeMap::new();
    let mut level = d.clone();
    for j in 0..=extra.min(k) {
        let mult = binomial(extra as u64, j as u64) as u64;
        if j == k {
            *cards.entry(Graph::empty(k)?.canonical_form()).or_insert(0) += mult;
            break;
        }
        if j == 0 {
            for (code, &c) in &level.cards {
                *cards.entry(code.clone()).or_insert(0) += c;
            }
            continue;
        }
        level = derive_subdeck(&level)?;
        let isolated = Graph::empty(j)?;
        for (code, &c) in &level.cards {
            let card = code.to_graph().disjoint_union(&isolated)?.canonical_form();
            *cards.entry(card).or_insert(0) += c * mult;
        }
    }
    Deck::from_cards(n + extra, k, cards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{basic_family, Family};

    fn fam(kind: Family, p: &[usize]) -> Graph {
        basic_family(kind, p).unwrap()
    }

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn c4p1() -> Graph {
        fam(Family::Cycle, &[4]).disjoint_union(&Graph::empty(1).unwrap()).unwrap()
    }

    #[test]
    fn census_of_c4_plus_p1() {
        let d = compute_deck(&c4p1(), 3).unwrap();
        assert_eq!(d.cards().len(), 3);
        assert_eq!(d.count_of(&fam(Family::Path, &[3])), 4);
        assert_eq!(d.count_of(&g(3, &[(0, 1)])), 4);
        assert_eq!(d.count_of(&Graph::empty(3).unwrap()), 2);
    }

    #[test]
    fn small_decks() {
        let d = compute_deck(&fam(Family::Path, &[3]), 2).unwrap();
        assert_eq!(d.count_of(&fam(Family::Complete, &[2])), 2);
        assert_eq!(d.count_of(&Graph::empty(2).unwrap()), 1);

        let s = fam(Family::Spider, &[3, 2, 1]);
        let whole = compute_deck(&s, s.order()).unwrap();
        assert_eq!(whole.total(), 1);
        assert_eq!(whole.count_of(&s), 1);
        assert!(compute_deck(&s, 0).is_err());
        assert!(compute_deck(&s, 8).is_err());
    }

    #[test]
    fn table_and_generic_paths_agree() {
        // eight-vertex cards take the canonical-form path
        let h = fam(Family::Spider, &[4, 3, 2]);
        let d8 = compute_deck(&h, 8).unwrap();
        let d7 = compute_deck(&h, 7).unwrap();
        assert_eq!(derive_subdeck(&d8).unwrap(), d7);
    }

    #[test]
    fn equality_examples() {
        let s211 = fam(Family::Spider, &[2, 1, 1]);
        assert!(decks_equal(&compute_deck(&c4p1(), 3).unwrap(), &compute_deck(&s211, 3).unwrap()));
        let c4p2 = fam(Family::Cycle, &[4]).disjoint_union(&fam(Family::Path, &[2])).unwrap();
        assert!(decks_equal(
            &compute_deck(&fam(Family::Path, &[6]), 3).unwrap(),
            &compute_deck(&c4p2, 3).unwrap()
        ));
        assert!(!decks_equal(
            &compute_deck(&fam(Family::Complete, &[3]), 2).unwrap(),
            &compute_deck(&fam(Family::Path, &[3]), 2).unwrap()
        ));
    }

    #[test]
    fn subdeck_examples() {
        let p4 = fam(Family::Path, &[4]);
        let d2 = derive_subdeck(&compute_deck(&p4, 3).unwrap()).unwrap();
        assert_eq!(d2, compute_deck(&p4, 2).unwrap());
        assert_eq!(d2.count_of(&fam(Family::Complete, &[2])), 3);
        assert_eq!(d2.count_of(&Graph::empty(2).unwrap()), 3);

        let d = compute_deck(&p4, 3).unwrap();
        let mut cards: Vec<_> = d.cards().iter().map(|(c, &m)| (c.clone(), m)).collect();
        cards[0].1 += 1;
        let bad = Deck::from_cards(4, 3, cards).unwrap();
        let err = derive_subdeck(&bad).unwrap_err();
        assert!(err.to_string().contains("level 2"), "{err}");
    }

    #[test]
    fn complement_examples() {
        let k743 = fam(Family::CompleteMultipartite, &[7, 4, 3]);
        let union = fam(Family::Complete, &[7])
            .disjoint_union(&fam(Family::Complete, &[4]))
            .unwrap()
            .disjoint_union(&fam(Family::Complete, &[3]))
            .unwrap();
        let d = compute_deck(&k743, 3).unwrap();
        assert_eq!(deck_complement(&d), compute_deck(&union, 3).unwrap());
        assert_eq!(deck_complement(&deck_complement(&d)), d);
    }

    #[test]
    fn kelly_examples() {
        let d = compute_deck(&c4p1(), 3).unwrap();
        assert_eq!(count_induced(&d, &fam(Family::Path, &[3])).unwrap(), 4);
        assert_eq!(count_induced(&d, &Graph::empty(1).unwrap()).unwrap(), 5);
        let e = compute_deck(&fam(Family::CompleteMultipartite, &[7, 4, 3]), 3).unwrap();
        assert_eq!(count_induced(&e, &fam(Family::Complete, &[3])).unwrap(), 84);
        assert!(count_induced(&d, &fam(Family::Path, &[4])).is_err());
    }

    #[test]
    fn common_cards() {
        let a = compute_deck(&fam(Family::CompleteMultipartite, &[3, 3]), 5).unwrap();
        let b = compute_deck(&fam(Family::CompleteMultipartite, &[4, 2]), 5).unwrap();
        let common = deck_common(&a, &b).unwrap();
        assert_eq!(common.total(), 4);
        assert_eq!(common.cards().len(), 1);
        assert_eq!(common.count_of(&fam(Family::CompleteMultipartite, &[3, 2])), 4);
        assert_eq!(deck_common(&a, &a).unwrap(), a);
        let k3 = compute_deck(&fam(Family::Complete, &[3]), 2).unwrap();
        let e3 = compute_deck(&Graph::empty(3).unwrap(), 2).unwrap();
        assert_eq!(deck_common(&k3, &e3).unwrap().total(), 0);
        assert!(deck_common(&k3, &a).is_err());
    }

    #[test]
    fn validation() {
        let p = fam(Family::Spider, &[2, 2, 1]);
        let d = compute_deck(&p, 4).unwrap();
        assert!(validate_deck(&d).is_valid());

        let mut cards: Vec<_> = d.cards().iter().map(|(c, &m)| (c.clone(), m)).collect();
        cards[0].1 -= 1;
        let short = Deck::from_cards(6, 4, cards.clone()).unwrap();
        assert!(!validate_deck(&short).is_valid());

        cards[0].1 += 1;
        cards.push((fam(Family::Path, &[5]).canonical_form(), 1));
        let extra = Deck::from_cards(6, 4, cards).unwrap();
        match validate_deck(&extra) {
            Validity::Invalid(reason) => assert!(reason.contains("5 vertices"), "{reason}"),
            Validity::Valid => panic!("accepted a 5-vertex card"),
        }
    }

    #[test]
    fn json_roundtrip_is_sorted_and_stable() {
        let d = compute_deck(&fam(Family::Spider, &[2, 2, 1]), 4).unwrap();
        let text = d.to_json();
        let back = Deck::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let g6s: Vec<&str> = v["cards"].as_array().unwrap().iter().map(|c| c["g6"].as_str().unwrap()).collect();
        let mut sorted = g6s.clone();
        sorted.sort();
        assert_eq!(g6s, sorted);
        assert!(Deck::from_json("{\"n\":3,\"k\":4,\"cards\":[]}").is_err());
        assert!(Deck::from_json("{\"n\":3,\"k\":2,\"cards\":[{\"g6\":\"A_\",\"count\":0}]}").is_err());
        assert!(Deck::from_json("not json").is_err());
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = compute_deck(&c4p1(), 3).unwrap();
        let b = compute_deck(&fam(Family::Spider, &[2, 1, 1]), 3).unwrap();
        let c = compute_deck(&fam(Family::Path, &[5]), 3).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn fast_fingerprint_matches_deck_fingerprint() {
        let g = fam(Family::Spider, &[3, 3, 2]);
        for k in 1..=7 {
            let d = compute_deck(&g, k).unwrap();
            assert_eq!(fingerprint_counts(g.order(), k, &class_counts(&g, k)), d.fingerprint());
        }
    }

    #[test]
    fn large_decks_use_the_parallel_fold() {
        let g = fam(Family::Cycle, &[14]);
        let d = compute_deck(&g, 7).unwrap();
        assert_eq!(d.total(), 3432);
        // cards of C_14 on 7 vertices are linear forests
        assert!(d.card_graphs().all(|(c, _)| c.edge_count() < 7));
        assert_eq!(d.count_of(&fam(Family::Path, &[7])), 14);
    }

    #[test]
    fn isolated_vertices_extend_the_deck() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bull = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]).unwrap();
        for g in [p4, bull] {
            for k in 1..=g.order() {
                for extra in 0..=3 {
                    let big = g.disjoint_union(&Graph::empty(extra.max(1)).unwrap()).unwrap();
                    let big = if extra == 0 { g.clone() } else { big };
                    let want = compute_deck(&big, k).unwrap();
                    assert_eq!(deck_with_isolated(&compute_deck(&g, k).unwrap(), extra).unwrap(), want);
                }
            }
        }
    }
}
