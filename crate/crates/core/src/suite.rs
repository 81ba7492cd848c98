//! The acceptance checks, one function per criterion, shared by the
//! `acceptance` test target and `deckforge verify-paper`.

use crate::constructions::{verify_construction, FamilySpec};
use crate::deck::{
    compute_deck, count_induced, deck_complement, deck_with_isolated, derive_subdeck, Deck,
};
use crate::degree::degree_list_from_deck;
use crate::error::Result;
use crate::family::{reconstruct_complete_multipartite, reconstruct_components, reconstruct_regular_cutvertex};
use crate::graph::{basic_family, is_isomorphic, low_mask, CanonicalCode, Family, Graph};
use crate::search::{enumerate_graphs, for_each_graph, max_reconstructibility, same_deck_classes, EnumOptions, SearchOptions};
use crate::subsets::{binomial, Subsets};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

/// Criteria whose exact statement is known not to hold. Their lines still
/// print FAIL; a change in this set is what the test target reports.
pub const KNOWN_FAILURES: [&str; 3] = ["4", "5", "14"];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget: f64,
}

impl CriterionResult {
    /// One table line; `with_time` off gives output that is identical between
    /// runs.
    pub fn line(&self, with_time: bool) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("[{status}] {:<4} {:<34} {}", self.id, self.title, self.detail);
        if with_time {
            s.push_str(&format!(" ({:.2} s of {} s)", self.seconds, self.budget));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Seed for the random graphs of criterion 12.
    pub seed: u64,
}

type Check = fn(&SuiteOptions) -> Result<(bool, String)>;

/// `(id, title, budget in seconds, check)`.
const CRITERIA: [(&str, &str, f64, Check); 15] = [
    ("1", "3-deck census of K_{7,4,3}", 1.0, erpart_census),
    ("2", "5-vertex pairs sharing a 3-deck", 5.0, five_vertex_pairs),
    ("3", "2-reconstructible for n = 6..8", 600.0, two_recon_window),
    ("3s", "2-reconstructible for n = 9", 14400.0, two_recon_stretch),
    ("4", "7-vertex pairs sharing a 4-deck", 120.0, seven_vertex_pairs),
    ("5", "two-component identities", 60.0, two_component_sweep),
    ("6", "spider pairs k = 3..7", 60.0, spider_pairs),
    ("7", "star forests k = 3, 4", 60.0, star_forests),
    ("8", "degree lists from decks", 900.0, degree_lists),
    ("9", "complete multipartite roundtrip", 120.0, multipartite_roundtrip),
    ("10", "components roundtrip", 1200.0, components_roundtrip),
    ("11", "regular cut-vertex roundtrip", 300.0, regular_roundtrip),
    ("12", "deck algebra on random graphs", 300.0, deck_algebra),
    ("13", "common cards of K_{t,t}", 60.0, common_cards),
    ("14", "maximum reconstructibility of C_n", 14400.0, cycle_reconstructibility),
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.0).collect()
}

pub fn run_criterion(id: &str, opts: &SuiteOptions) -> Option<CriterionResult> {
    let &(id, title, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (exact, detail) = match check(opts) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let passed = exact && seconds <= budget;
    let detail = if exact && !passed { format!("{detail}; over budget") } else { detail };
    Some(CriterionResult { id, title, passed, detail, seconds, budget })
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|c| run_criterion(c.0, opts).expect("listed id"))
        .collect()
}

fn fam(kind: Family, p: &[usize]) -> Graph {
    basic_family(kind, p).expect("valid family parameters")
}

fn union(a: &Graph, b: &Graph) -> Graph {
    a.disjoint_union(b).expect("small union")
}

fn erpart_census(_: &SuiteOptions) -> Result<(bool, String)> {
    let a = compute_deck(&fam(Family::CompleteMultipartite, &[7, 4, 3]), 3)?;
    let b = compute_deck(&fam(Family::CompleteMultipartite, &[6, 6, 1, 1]), 3)?;
    let counts = (
        a.count_of(&fam(Family::Complete, &[3])),
        a.count_of(&fam(Family::Path, &[3])),
        a.count_of(&Graph::empty(3)?),
    );
    let ok = a == b && counts == (84, 240, 40) && a.cards().len() == 3;
    Ok((ok, format!("equal: {}, K_3/P_3/3K_1 = {}/{}/{}", a == b, counts.0, counts.1, counts.2)))
}

fn five_vertex_pairs(_: &SuiteOptions) -> Result<(bool, String)> {
    let r = same_deck_classes(5, 3, &SearchOptions::default())?;
    let c4p1 = union(&fam(Family::Cycle, &[4]), &fam(Family::Path, &[1]));
    let s211 = fam(Family::Spider, &[2, 1, 1]);
    let is_pair = |class: &Vec<Graph>, a: &Graph, b: &Graph| {
        class.len() == 2
            && class.iter().any(|g| is_isomorphic(g, a))
            && class.iter().any(|g| is_isomorphic(g, b))
    };
    let classes = r.class_graphs();
    let ok = classes.len() == 2
        && classes.iter().any(|c| is_pair(c, &c4p1, &s211))
        && classes.iter().any(|c| is_pair(c, &c4p1.complement(), &s211.complement()));
    Ok((ok, format!("{} classes: {:?}", classes.len(), r.classes)))
}

fn empty_windows(ns: &[usize]) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for &n in ns {
        let r = same_deck_classes(n, n - 2, &SearchOptions::default())?;
        ok &= r.classes.is_empty();
        parts.push(format!("n={n}: {} classes over {} graphs", r.classes.len(), r.graphs_enumerated));
    }
    Ok((ok, parts.join(", ")))
}

fn two_recon_window(_: &SuiteOptions) -> Result<(bool, String)> {
    empty_windows(&[6, 7, 8])
}

fn two_recon_stretch(_: &SuiteOptions) -> Result<(bool, String)> {
    empty_windows(&[9])
}

fn seven_vertex_pairs(_: &SuiteOptions) -> Result<(bool, String)> {
    let r = same_deck_classes(7, 4, &SearchOptions::default())?;
    let classes = r.class_graphs();
    let all_pairs = classes.iter().all(|c| c.len() == 2);
    let mixed = classes
        .iter()
        .filter(|c| c.iter().any(|g| g.is_connected()) && c.iter().any(|g| !g.is_connected()))
        .count();
    let ok = classes.len() == 3 && all_pairs && mixed == 0;
    Ok((
        ok,
        format!(
            "{} classes (claim: 3), all of size 2: {all_pairs}, mixing connected and disconnected: {mixed}",
            classes.len()
        ),
    ))
}

fn two_component_sweep(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut trivial = 0;
    let mut failed = Vec::new();
    for k in 3..=6usize {
        for q in 1..=14usize {
            for r in 1..=14usize {
                let mut specs = Vec::new();
                if q > k && r > k && q + r <= 14 {
                    specs.push(FamilySpec::CycleSplit { k, q, r });
                }
                if q > k && r + 1 >= k && q + r <= 14 {
                    specs.push(FamilySpec::CyclePath { k, q, r });
                }
                if q >= k && r >= k && q + r - 1 <= 14 {
                    specs.push(FamilySpec::PathShift { k, q, r });
                }
                for spec in specs {
                    checked += 1;
                    // the identity is deck equality; q = r path shifts are the same graph
                    let (g, h) = spec.build()?;
                    trivial += is_isomorphic(&g, &h) as usize;
                    if compute_deck(&g, k)? != compute_deck(&h, k)? {
                        failed.push(spec.to_string());
                    }
                }
            }
        }
    }
    let c5p1 = union(&fam(Family::Cycle, &[5]), &fam(Family::Path, &[1]));
    let triple = [c5p1, fam(Family::Spider, &[2, 2, 1]), fam(Family::Spider, &[3, 1, 1])];
    let decks: Vec<Deck> = triple.iter().map(|g| compute_deck(g, 3)).collect::<Result<_>>()?;
    let same = decks.windows(2).all(|w| w[0] == w[1]);
    let lists: Vec<Vec<usize>> = triple.iter().map(|g| g.degree_sequence()).collect();
    let distinct = lists[0] != lists[1] && lists[1] != lists[2] && lists[0] != lists[2];
    let ok = failed.is_empty() && same && distinct;
    Ok((
        ok,
        format!(
            "{checked} instances ({trivial} with isomorphic sides), {} failed {failed:?}; C_5+P_1, S_2,2,1, S_3,1,1 share D_3: {same}, degree lists {lists:?} pairwise distinct: {distinct}",
            failed.len()
        ),
    ))
}

fn spider_pairs(_: &SuiteOptions) -> Result<(bool, String)> {
    let bad: Vec<usize> = (3..=7).filter(|&k| !verify_construction(&FamilySpec::SpiderPair { k }).holds).collect();
    Ok((bad.is_empty(), format!("k = 3..7, failing: {bad:?}")))
}

fn star_forests(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [3usize, 4] {
        let spec = FamilySpec::ManvelStars { k };
        let (g, h) = spec.build()?;
        let v = verify_construction(&spec);
        let degrees = (g.max_degree(), h.max_degree());
        ok &= v.holds && degrees == (k, k - 1);
        parts.push(format!("k={k}: {} on {} vertices, Δ = {}/{}", v.diagnostic, g.order(), degrees.0, degrees.1));
    }
    Ok((ok, parts.join("; ")))
}

fn degree_lists(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut checked = 0u64;
    let mut wrong = 0u64;
    for n in 1..=8 {
        for_each_graph(n, EnumOptions::default(), |g| {
            let want = g.degree_sequence();
            for k in g.max_degree() + 2..=n {
                checked += 1;
                let got = compute_deck(g, k).and_then(|d| degree_list_from_deck(&d));
                if got.map(|l| l.sequence()).ok().as_ref() != Some(&want) {
                    wrong += 1;
                }
            }
        })?;
    }
    let r = same_deck_classes(7, 4, &SearchOptions::default())?;
    let split = r
        .class_graphs()
        .iter()
        .filter(|c| c.iter().any(|g| g.degree_sequence() != c[0].degree_sequence()))
        .count();
    let ok = wrong == 0 && split == 0;
    Ok((
        ok,
        format!(
            "{checked} (graph, k) cases, {wrong} wrong; 4-deck classes at n=7 with unequal lists: {split} of {}",
            r.classes.len()
        ),
    ))
}

fn multipartite_roundtrip(_: &SuiteOptions) -> Result<(bool, String)> {
    fn vectors(r: usize, max: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for q in (1..=max.min(budget)).rev() {
            cur.push(q);
            vectors(r, q, budget - q, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    for r in 1..=4 {
        vectors(r, 12, 12, &mut Vec::new(), &mut all);
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in all {
        let n: usize = q.iter().sum();
        // the (r+1)-deck needs r + 1 <= n
        if n <= q.len() {
            continue;
        }
        checked += 1;
        let d = compute_deck(&fam(Family::CompleteMultipartite, &q), q.len() + 1)?;
        match reconstruct_complete_multipartite(&d) {
            Ok(p) if p.parts == q => {}
            _ => bad.push(q),
        }
    }
    let a = compute_deck(&fam(Family::CompleteMultipartite, &[7, 4, 3]), 3)?;
    let b = compute_deck(&fam(Family::CompleteMultipartite, &[6, 6, 1, 1]), 3)?;
    let ok = bad.is_empty() && a == b;
    Ok((ok, format!("{checked} part vectors, failing: {bad:?}; K_7,4,3 and K_6,6,1,1 share D_3: {}", a == b)))
}

fn components_of(g: &Graph) -> BTreeMap<CanonicalCode, u64> {
    let mut out = BTreeMap::new();
    for c in g.components() {
        *out.entry(g.induced_mask(c).expect("in range").canonical_form()).or_insert(0) += 1;
    }
    out
}

fn components_roundtrip(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in 3..=8 {
        for_each_graph(n, EnumOptions::default(), |g| {
            if g.components().iter().any(|c| c.count_ones() as usize > n - 2) {
                return;
            }
            checked += 1;
            let got = compute_deck(g, n - 2).and_then(|d| reconstruct_components(&d));
            if got.map(|c| c.components).ok() != Some(components_of(g)) {
                bad.push(g.graph6());
            }
        })?;
    }
    Ok((bad.is_empty(), format!("{checked} graphs, failing: {bad:?}")))
}

/// Two copies of `K_4` with one edge subdivided, joined by an edge between
/// the subdivision vertices.
pub fn cubic_bridge_graph() -> Graph {
    let block = [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut edges: Vec<(usize, usize)> = block.to_vec();
    edges.extend(block.iter().map(|&(a, b)| (a + 5, b + 5)));
    edges.push((4, 9));
    Graph::from_edges(10, &edges).expect("valid")
}

fn regular_roundtrip(_: &SuiteOptions) -> Result<(bool, String)> {
    let bridge = cubic_bridge_graph();
    let got = reconstruct_regular_cutvertex(&compute_deck(&bridge, 6)?, 3)?;
    let a = is_isomorphic(&got, &bridge);
    let two_k4 = fam(Family::Complete, &[4]).times(2)?;
    let got = reconstruct_regular_cutvertex(&compute_deck(&two_k4, 4)?, 3)?;
    let b = is_isomorphic(&got, &two_k4);
    Ok((a && b, format!("bridge graph from D_6: {a}, 2K_4 from D_4: {b}")))
}

/// Induced copies of `f` in `g` by canonical forms of all subsets.
fn brute_induced(g: &Graph, f: &Graph) -> u128 {
    let code = f.canonical_form();
    Subsets::new(low_mask(g.order()), f.order())
        .filter(|&s| g.induced_mask(s).expect("in range").canonical_form() == code)
        .count() as u128
}

/// The augmented deck written out card by card: `C(ℓ-1, ℓ-i)` copies of
/// `C + (i-1)K_1` for each card `C` of `D_{n-i}(G)`, `i = 1..ℓ`.
fn union_identity_deck(g: &Graph, ell: usize) -> Result<Deck> {
    let n = g.order();
    let mut cards: BTreeMap<CanonicalCode, u64> = BTreeMap::new();
    for i in 1..=ell {
        let copies = binomial(ell as u64 - 1, (ell - i) as u64) as u64;
        for (card, c) in compute_deck(g, n - i)?.card_graphs() {
            let card = if i == 1 { card } else { card.disjoint_union(&Graph::empty(i - 1)?)? };
            *cards.entry(card.canonical_form()).or_insert(0) += c * copies;
        }
    }
    Deck::from_cards(n + ell - 1, n - 1, cards)
}

fn deck_algebra(opts: &SuiteOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let small: Vec<Graph> = (1..=5).flat_map(|p| enumerate_graphs(p).expect("small")).collect();
    let (mut down, mut comp, mut kelly, mut unions) = (0u32, 0u32, 0u32, 0u32);
    let mut failures = Vec::new();
    for _ in 0..120 {
        let n = rng.gen_range(3..=8usize);
        let p: f64 = rng.gen_range(0.15..0.85);
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        let decks: Vec<Deck> = (1..=n).map(|k| compute_deck(&g, k)).collect::<Result<_>>()?;
        for k in 2..=n {
            down += 1;
            if derive_subdeck(&decks[k - 1])? != decks[k - 2] {
                failures.push(format!("derivation {} k={k}", g.graph6()));
            }
        }
        for k in 1..=n {
            comp += 1;
            if compute_deck(&g.complement(), k)? != deck_complement(&decks[k - 1]) {
                failures.push(format!("complement {} k={k}", g.graph6()));
            }
        }
        for ell in 0..=3.min(n - 1) {
            let d = &decks[n - ell - 1];
            for f in small.iter().filter(|f| f.order() <= n - ell) {
                kelly += 1;
                if count_induced(d, f)? != brute_induced(&g, f) {
                    failures.push(format!("count {} ℓ={ell} F={}", g.graph6(), f.graph6()));
                }
            }
        }
        if n <= 7 {
            for ell in 2..=3usize.min(n - 1) {
                unions += 1;
                let big = g.disjoint_union(&Graph::empty(ell - 1)?)?;
                let direct = compute_deck(&big, n - 1)?;
                if union_identity_deck(&g, ell)? != direct || deck_with_isolated(&decks[n - 2], ell - 1)? != direct {
                    failures.push(format!("union {} ℓ={ell}", g.graph6()));
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "seed {}: 120 graphs; {down} derivations, {comp} complements, {kelly} counts, {unions} unions; failures: {failures:?}",
            opts.seed
        ),
    ))
}

fn common_cards(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut ok = true;
    let mut totals = Vec::new();
    for t in 2..=5usize {
        let v = verify_construction(&FamilySpec::MyrvoldCommon { t });
        let total = v.deck.map_or(0, |d| d.total());
        ok &= total == t as u128 + 1;
        totals.push(format!("t={t}: {total}"));
    }
    Ok((ok, totals.join(", ")))
}

fn cycle_reconstructibility(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=9usize {
        let got = max_reconstructibility(&fam(Family::Cycle, &[n]))?;
        let want = n.div_ceil(2);
        ok &= got == want;
        parts.push(format!("C_{n}: {got} (claim {want})"));
    }
    Ok((ok, parts.join(", ")))
}
