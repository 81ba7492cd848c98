//! Reconstruction for a few families: complete multipartite graphs and their
//! complements, graphs whose components fit on a card, and regular graphs
//! that are not 2-connected.
//!
//! Every count these algorithms need is read from derived decks: the number
//! of induced copies of a `p`-vertex graph `F` is the multiplicity of `F` in
//! the `p`-deck.

use crate::deck::{compute_deck, deck_complement, derive_subdeck, induced_copies, Deck};
use crate::degree::{observed_max_degree, solve_degree_list};
use crate::error::{Error, Result};
use crate::graph::{basic_family, bit, low_mask, Bits, CanonicalCode, Family, Graph};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// The deck and all its derived decks down to card size `low`.
struct Levels {
    top: usize,
    decks: Vec<Deck>,
}

impl Levels {
    fn new(d: &Deck, low: usize) -> Result<Self> {
        let mut decks = vec![d.clone()];
        while decks.last().expect("nonempty").k() > low.max(1) {
            let next = derive_subdeck(decks.last().expect("nonempty"))?;
            decks.push(next);
        }
        Ok(Levels { top: d.k(), decks })
    }

    fn at(&self, p: usize) -> &Deck {
        &self.decks[self.top - p]
    }
}

fn code_of(kind: Family, p: usize) -> CanonicalCode {
    basic_family(kind, &[p]).expect("small family member").canonical_form()
}

/// Whether the 3-deck has a `P_3`, a `K_2 + K_1`, and only edgeless cards.
fn forbidden_cards(d: &Deck) -> Result<(bool, bool, bool)> {
    let levels = Levels::new(d, 3)?;
    let d3 = levels.at(3);
    let p3 = d3.count(&code_of(Family::Path, 3)) > 0;
    let k2k1 = d3.count(&Graph::from_edges(3, &[(0, 1)])?.canonical_form()) > 0;
    let edgeless = d3.count(&Graph::empty(3)?.canonical_form()) as u128 == d3.total();
    Ok((p3, k2k1, edgeless))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HereditaryClass {
    CliqueUnion,
    CompleteMultipartite,
    Neither,
}

impl HereditaryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HereditaryClass::CliqueUnion => "clique_union",
            HereditaryClass::CompleteMultipartite => "complete_multipartite",
            HereditaryClass::Neither => "neither",
        }
    }
}

impl fmt::Display for HereditaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reads the 3-cards: no `P_3` means a union of cliques, no `K_2 + K_1` means
/// complete multipartite. An edgeless host satisfies both and is reported as
/// complete multipartite (one part), a complete host as a clique union (one
/// clique), so the answer always has the fewest parts.
pub fn recognize_hereditary_class(d: &Deck) -> Result<HereditaryClass> {
    if d.k() < 3 {
        return Err(Error::InvalidParams(format!("recognition needs k >= 3, got {}", d.k())));
    }
    let (p3, k2k1, edgeless) = forbidden_cards(d)?;
    Ok(match (p3, k2k1) {
        (false, false) if edgeless => HereditaryClass::CompleteMultipartite,
        (false, _) => HereditaryClass::CliqueUnion,
        (true, false) => HereditaryClass::CompleteMultipartite,
        (true, true) => HereditaryClass::Neither,
    })
}

/// Part sizes of a complete multipartite graph (or clique orders of a clique
/// union) with the elementary symmetric values they were read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSizes {
    /// Nonincreasing.
    pub parts: Vec<usize>,
    /// `e_1, ..., e_r`.
    pub elementary: Vec<u128>,
}

impl PartSizes {
    fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let elementary = elementary_symmetric(&parts);
        PartSizes { parts, elementary }
    }
}

/// `e_1, ..., e_r` of the given values.
pub fn elementary_symmetric(values: &[usize]) -> Vec<u128> {
    let mut e = vec![0u128; values.len() + 1];
    e[0] = 1;
    for (i, &q) in values.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += e[j - 1] * q as u128;
        }
    }
    e.remove(0);
    e
}

/// Roots of `x^r - e_1 x^{r-1} + e_2 x^{r-2} - ...`, all of which must be
/// positive integers. Candidates are divisors of the constant term no larger
/// than 64; roots come out nonincreasing.
pub fn integer_roots(e: &[u128]) -> Result<Vec<usize>> {
    let mut poly: Vec<BigInt> = vec![BigInt::from(1)];
    for (j, &x) in e.iter().enumerate() {
        poly.push(if j % 2 == 0 { -BigInt::from(x) } else { BigInt::from(x) });
    }
    let top = e.first().map_or(0, |&e1| e1.min(64) as usize);
    let mut roots = Vec::new();
    let mut d = top;
    while poly.len() > 1 && d >= 1 {
        let root = BigInt::from(d);
        let constant = poly.last().expect("nonempty");
        if (constant % &root).is_zero() {
            // synthetic division by (x - d)
            let mut quotient = Vec::with_capacity(poly.len() - 1);
            let mut acc = BigInt::zero();
            for c in &poly {
                acc = acc * &root + c;
                quotient.push(acc.clone());
            }
            if acc.is_zero() {
                quotient.pop();
                poly = quotient;
                roots.push(d);
                continue;
            }
        }
        d -= 1;
    }
    if poly.len() > 1 {
        return Err(Error::Reconstruction(format!(
            "part polynomial has {} roots that are not positive integers",
            poly.len() - 1
        )));
    }
    Ok(roots)
}

/// Part sizes read straight off a graph: the components of its complement,
/// each of which must be edgeless in the graph itself.
fn parts_of(g: &Graph) -> Result<PartSizes> {
    let comp = g.complement();
    let mut parts = Vec::new();
    for c in comp.components() {
        let size = c.count_ones() as usize;
        if Bits(c).any(|v| (comp.neighbors(v) & c).count_ones() as usize != size - 1) {
            return Err(Error::Hypothesis("the card is not complete multipartite".into()));
        }
        parts.push(size);
    }
    Ok(PartSizes::from_parts(parts))
}

/// Part sizes from any deck with `k >= r + 1`, where `r` is the largest order
/// of a complete card. `e_j` is the number of complete `j`-cards in the
/// derived `j`-deck.
pub fn reconstruct_complete_multipartite(d: &Deck) -> Result<PartSizes> {
    let (n, k) = (d.n(), d.k());
    if k == n {
        let (code, _) = d.cards().iter().next().expect("a full deck has one card");
        return parts_of(&code.to_graph());
    }
    if k >= 3 && forbidden_cards(d)?.1 {
        return Err(Error::Hypothesis("a K_2 + K_1 card rules out complete multipartite".into()));
    }
    let levels = Levels::new(d, 1)?;
    let mut e = Vec::new();
    for j in 1..=k {
        match levels.at(j).count(&code_of(Family::Complete, j)) {
            0 => break,
            c => e.push(c as u128),
        }
    }
    let r = e.len();
    if r >= k {
        return Err(Error::Hypothesis(format!(
            "a complete {r}-card is present, so {r}-partiteness needs k >= {}, got {k}",
            r + 1
        )));
    }
    let parts = integer_roots(&e)?;
    if parts.len() != r || parts.iter().sum::<usize>() != n {
        return Err(Error::Reconstruction(format!("part sizes {parts:?} do not sum to {n}")));
    }
    Ok(PartSizes { parts, elementary: e })
}

/// Clique orders of a union of cliques, through the complementary deck.
pub fn reconstruct_clique_union(d: &Deck) -> Result<PartSizes> {
    if d.k() >= 3 && forbidden_cards(d)?.0 {
        return Err(Error::Hypothesis("a P_3 card rules out a union of cliques".into()));
    }
    reconstruct_complete_multipartite(&deck_complement(d))
}

/// One connected induced subgraph seen in the deck.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Length of the longest chain of connected induced subgraphs starting here.
    pub depth: usize,
    /// Induced copies in the host.
    pub occurrences: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthIndex {
    pub candidates: BTreeMap<CanonicalCode, Candidate>,
}

/// Connected cards of every derived deck with their depths.
///
/// A connected induced subgraph of a connected graph can be grown one vertex
/// at a time without losing connectivity, so a longest chain steps up one
/// vertex at a time and depth only needs one-vertex deletions of the cards.
pub fn depth_index(d: &Deck) -> Result<DepthIndex> {
    let levels = Levels::new(d, 1)?;
    let mut candidates = BTreeMap::new();
    let mut below: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
    for p in (1..=d.k()).rev() {
        let here = std::mem::take(&mut below);
        let connected: Vec<(&CanonicalCode, u64)> = levels
            .at(p)
            .cards()
            .iter()
            .filter(|(code, _)| code.to_graph().is_connected())
            .map(|(code, &c)| (code, c))
            .collect();
        let deletions: Vec<Vec<CanonicalCode>> = connected
            .par_iter()
            .map(|(code, _)| {
                let f = code.to_graph();
                if p == 1 {
                    return Vec::new();
                }
                (0..p)
                    .map(|v| low_mask(p) & !bit(v))
                    .filter(|&set| f.is_connected_within(set))
                    .map(|set| f.induced_unchecked(set).canonical_form())
                    .collect()
            })
            .collect();
        for ((code, occurrences), subs) in connected.into_iter().zip(deletions) {
            let depth = here.get(code).map_or(0, |&d| d + 1);
            candidates.insert(code.clone(), Candidate { depth, occurrences });
            for sub in subs {
                let e = below.entry(sub).or_insert(0);
                *e = (*e).max(depth);
            }
        }
    }
    Ok(DepthIndex { candidates })
}

/// Components with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentMultiset {
    pub components: BTreeMap<CanonicalCode, u64>,
}

impl ComponentMultiset {
    pub fn order(&self) -> usize {
        self.components.iter().map(|(c, &m)| c.order() * m as usize).sum()
    }

    /// Disjoint union, components in code order.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g: Option<Graph> = None;
        for (code, &m) in &self.components {
            for _ in 0..m {
                let f = code.to_graph();
                g = Some(match g {
                    None => f,
                    Some(acc) => acc.disjoint_union(&f)?,
                });
            }
        }
        g.ok_or(Error::EmptyVertexSet)
    }
}

/// Components of a host whose components all have at most `k` vertices.
///
/// With `s_F` the induced copies of `F` and `c_F` the components isomorphic
/// to `F`, `s_F = Σ_H s_F(H) c_H` over connected `H`. Every `H ≠ F` with
/// `s_F(H) > 0` has smaller depth, so solving in order of increasing depth
/// gives each `c_F` from values already known.
pub fn reconstruct_components(d: &Deck) -> Result<ComponentMultiset> {
    let n = d.n();
    if d.k() == n {
        let (code, _) = d.cards().iter().next().expect("a full deck has one card");
        let g = code.to_graph();
        let mut components = BTreeMap::new();
        for c in g.components() {
            *components.entry(g.induced_unchecked(c).canonical_form()).or_insert(0) += 1;
        }
        return Ok(ComponentMultiset { components });
    }
    let index = depth_index(d)?;
    let mut order: Vec<(&CanonicalCode, &Candidate)> = index.candidates.iter().collect();
    order.sort_by(|a, b| (a.1.depth, a.0).cmp(&(b.1.depth, b.0)));
    let mut found: Vec<(Graph, u64)> = Vec::new();
    let mut components = BTreeMap::new();
    for (code, cand) in order {
        let f = code.to_graph();
        let mut rest = cand.occurrences as i128;
        for (h, c) in &found {
            if h.order() > f.order() {
                rest -= induced_copies(h, &f) as i128 * *c as i128;
            }
        }
        if rest < 0 {
            return Err(Error::Reconstruction(format!(
                "negative component count {rest} for a {}-vertex subgraph",
                f.order()
            )));
        }
        if rest > 0 {
            found.push((f, rest as u64));
            components.insert(code.clone(), rest as u64);
        }
    }
    let out = ComponentMultiset { components };
    if out.order() != n {
        return Err(Error::Reconstruction(format!(
            "components cover {} of {n} vertices; some component has more than {} vertices",
            out.order(),
            d.k()
        )));
    }
    Ok(out)
}

/// Leaf blocks with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafBlockMultiset {
    pub blocks: BTreeMap<CanonicalCode, u64>,
}

impl LeafBlockMultiset {
    pub fn total(&self) -> u64 {
        self.blocks.values().sum()
    }
}

/// Exactly one vertex of degree below `r`, none above.
fn near_regular(g: &Graph, r: usize) -> Option<usize> {
    if g.max_degree() > r {
        return None;
    }
    let mut low = (0..g.order()).filter(|&v| g.degree(v) < r);
    match (low.next(), low.next()) {
        (Some(v), None) => Some(v),
        _ => None,
    }
}

fn leaf_block_shape(b: &Graph, r: usize) -> bool {
    b.order() >= r + 2 && near_regular(b, r).is_some() && b.is_connected() && !b.has_cut_vertex()
}

/// Near `r`-regular induced subgraphs without a cut vertex inside a graph of
/// maximum degree `r`. Such an `X` with deficient vertex `v` is `v` plus a
/// whole component of the full-degree vertices other than `v`, since those
/// keep all their neighbours inside `X`.
fn leaf_pieces(h: &Graph, r: usize) -> BTreeMap<CanonicalCode, u64> {
    let m = h.order();
    let full: u64 = (0..m).filter(|&v| h.degree(v) == r).fold(0, |acc, v| acc | bit(v));
    let mut out = BTreeMap::new();
    for v in 0..m {
        let mut left = full & !bit(v);
        while left != 0 {
            let comp = h.reach(left.trailing_zeros() as usize, full & !bit(v));
            left &= !comp;
            let outside = Bits(comp).fold(0, |acc, u| acc | h.neighbors(u)) & !comp;
            if outside != bit(v) {
                continue;
            }
            let x = h.induced_unchecked(comp | bit(v));
            if leaf_block_shape(&x, r) {
                *out.entry(x.canonical_form()).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Checks that the deck belongs to an `r`-regular graph. Degrees of `k - 1`
/// or more cannot be solved for, so `a_r = n` is supplied when `r` is that
/// large and the solve confirms it.
fn check_regular(d: &Deck, r: usize) -> Result<()> {
    let n = d.n();
    if r >= n {
        return Err(Error::InvalidParams(format!("degree {r} impossible on {n} vertices")));
    }
    let seen = observed_max_degree(d);
    if seen > r {
        return Err(Error::Hypothesis(format!("a card has a vertex of degree {seen} > {r}")));
    }
    let mut known = BTreeMap::new();
    if r + 1 >= d.k() {
        known.insert(r, n as u64);
    }
    let list = solve_degree_list(d, &known).map_err(|e| Error::Hypothesis(format!("not {r}-regular: {e}")))?;
    if list.counts.get(r).copied() != Some(n as u64) {
        return Err(Error::Hypothesis(format!(
            "degree list {:?} is not {r}-regular",
            list.sequence()
        )));
    }
    Ok(())
}

fn card_size(d: &Deck, r: usize) -> Result<usize> {
    let n = d.n();
    if r + 2 > n {
        return Err(Error::InvalidParams(format!("need n >= r + 2, got n = {n}, r = {r}")));
    }
    let k = n - r - 1;
    if d.k() < k {
        return Err(Error::Hypothesis(format!(
            "needs cards with n - r - 1 = {k} vertices, got {}",
            d.k()
        )));
    }
    Ok(k)
}

fn blocks_from_levels(levels: &Levels, r: usize, k: usize) -> LeafBlockMultiset {
    let mut blocks = BTreeMap::new();
    for p in r + 2..=k {
        for (code, &count) in levels.at(p).cards() {
            if leaf_block_shape(&code.to_graph(), r) {
                blocks.insert(code.clone(), count);
            }
        }
    }
    LeafBlockMultiset { blocks }
}

/// Leaf blocks of an `r`-regular host, read from a deck with cards of at
/// least `n - r - 1` vertices. Every near `r`-regular induced subgraph
/// without a cut vertex is a leaf block, and all of them fit on such a card.
pub fn find_leaf_blocks(d: &Deck, r: usize) -> Result<LeafBlockMultiset> {
    let k = card_size(d, r)?;
    check_regular(d, r)?;
    let levels = Levels::new(d, (r + 2).min(k))?;
    Ok(blocks_from_levels(&levels, r, k))
}

/// Identifies vertex `hv` of `h` with vertex `bv` of `b`.
fn attach(h: &Graph, hv: usize, b: &Graph, bv: usize) -> Result<Graph> {
    let m = h.order();
    let mut map = vec![0; b.order()];
    let mut next = m;
    for (v, slot) in map.iter_mut().enumerate() {
        if v == bv {
            *slot = hv;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = h.edges();
    edges.extend(b.edges().into_iter().map(|(x, y)| (map[x], map[y])));
    Graph::from_edges(next, &edges)
}

/// Rebuilds an `r`-regular graph that is not 2-connected from its deck.
///
/// Without leaf blocks the host is disconnected and its components are
/// recovered directly. Otherwise, with `B` a smallest leaf block on `s`
/// vertices, some `(n - s + 1)`-card is the host with `B` cut off at its cut
/// vertex; its own leaf blocks are the host's minus one copy of `B`. Cards
/// passing that test are tried in code order and the first whose completion
/// reproduces the deck wins.
pub fn reconstruct_regular_cutvertex(d: &Deck, r: usize) -> Result<Graph> {
    let n = d.n();
    let k = card_size(d, r)?;
    check_regular(d, r)?;
    let levels = Levels::new(d, (r + 2).min(k))?;
    let blocks = blocks_from_levels(&levels, r, k);
    let matches = |g: &Graph| -> Result<bool> {
        Ok((0..g.order()).all(|v| g.degree(v) == r) && compute_deck(g, d.k())? == *d)
    };

    if blocks.blocks.is_empty() {
        let g = reconstruct_components(levels.at(k))?.to_graph()?;
        if !matches(&g)? {
            return Err(Error::Reconstruction("component union does not reproduce the deck".into()));
        }
        return Ok(g.canonical());
    }

    let smallest = blocks
        .blocks
        .keys()
        .min_by(|a, b| (a.order(), *a).cmp(&(b.order(), *b)))
        .expect("nonempty")
        .clone();
    let s = smallest.order();
    let mut rest = blocks.blocks.clone();
    match rest.get_mut(&smallest) {
        Some(c) if *c > 1 => *c -= 1,
        _ => {
            rest.remove(&smallest);
        }
    }
    let b = smallest.to_graph();
    let bv = near_regular(&b, r).expect("leaf blocks are near regular");
    let cards: Vec<&CanonicalCode> = levels.at(n - s + 1).cards().keys().collect();
    let found = cards
        .par_iter()
        .map(|code| -> Result<Option<Graph>> {
            let h = code.to_graph();
            let Some(hv) = near_regular(&h, r) else {
                return Ok(None);
            };
            if leaf_pieces(&h, r) != rest {
                return Ok(None);
            }
            let g = attach(&h, hv, &b, bv)?;
            Ok(if matches(&g)? { Some(g) } else { None })
        })
        .find_map_first(|res| match res {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some(g))) => Ok(g.canonical()),
        Some(Err(e)) => Err(e),
        _ => Err(Error::Reconstruction(format!(
            "no {}-card completes to a graph with this deck",
            n - s + 1
        ))),
    }
}
