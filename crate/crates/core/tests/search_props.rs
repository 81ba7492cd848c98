mod common;

use common::{fam, graphs};
use deckforge::constructions::{same_deck_pair, verify_construction, FamilySpec};
use deckforge::deck::compute_deck;
use deckforge::graph::{canonical_form, is_isomorphic, Family, Graph};
use deckforge::search::{
    count_graphs, enumerate_graphs, for_each_graph, max_reconstructibility, same_deck_classes, EnumOptions,
    SearchOptions,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn brute_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        seen.insert(canonical_form(&Graph::from_edges(n, &edges).unwrap()));
    }
    seen.len()
}

#[test]
fn enumeration_matches_labeled_filter() {
    for n in 1..=6 {
        let all = enumerate_graphs(n).unwrap();
        assert_eq!(all.len(), brute_count(n), "n={n}");
        let codes: BTreeSet<_> = all.iter().map(canonical_form).collect();
        assert_eq!(codes.len(), all.len());
    }
    assert_eq!(count_graphs(7, EnumOptions::default()).unwrap(), 1044);
    assert_eq!(count_graphs(8, EnumOptions::default()).unwrap(), 12346);
    assert!(enumerate_graphs(11).is_err());
}

#[test]
fn classes_are_sound_and_closed_under_complement() {
    for (n, k) in [(5, 3), (6, 3), (7, 4)] {
        let r = same_deck_classes(n, k, &SearchOptions::default()).unwrap();
        let classes = r.class_graphs();
        let mut keys = BTreeSet::new();
        for class in &classes {
            assert!(class.len() >= 2);
            let d = compute_deck(&class[0], k).unwrap();
            for (i, g) in class.iter().enumerate() {
                assert_eq!(compute_deck(g, k).unwrap(), d);
                assert!(class[..i].iter().all(|h| !is_isomorphic(g, h)));
            }
            keys.insert(class.iter().map(canonical_form).collect::<BTreeSet<_>>());
        }
        for class in &classes {
            let comp: BTreeSet<_> = class.iter().map(|g| canonical_form(&g.complement())).collect();
            assert!(keys.contains(&comp), "n={n} k={k}");
        }
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| same_deck_classes(6, 3, &SearchOptions::default()).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.classes, b.classes);
    assert_eq!(a.graphs_enumerated, b.graphs_enumerated);
}

#[test]
fn interrupted_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let opts = SearchOptions { checkpoint_dir: Some(dir.path().to_path_buf()), resume: false };
    let first = same_deck_classes(7, 4, &opts).unwrap();
    let again = same_deck_classes(7, 4, &SearchOptions { resume: true, ..opts }).unwrap();
    assert_eq!(first.classes, again.classes);
    assert_eq!(again.units_resumed, again.units);
}

/// Smallest `k` at which the deck of `C_n` is unique is `⌊n/2⌋` from `n = 6` on.
#[test]
fn cycles_are_determined_by_half_size_cards() {
    for n in 6..=9usize {
        let c = fam(Family::Cycle, &[n]);
        assert_eq!(max_reconstructibility(&c).unwrap(), n - n / 2, "C_{n}");
    }
    // n = 10 is past the cost guard; scan its rivals directly. Any graph with
    // the same 5-deck has ten edges.
    let c = fam(Family::Cycle, &[10]);
    let ours = compute_deck(&c, 5).unwrap();
    let code = canonical_form(&c);
    let mut rivals = 0;
    for_each_graph(10, EnumOptions { max_edges: Some(10) }, |h| {
        if h.edge_count() == 10 && canonical_form(h) != code && compute_deck(h, 5).unwrap() == ours {
            rivals += 1;
        }
    })
    .unwrap();
    assert_eq!(rivals, 0);
    let split = fam(Family::Cycle, &[5]).times(2).unwrap();
    assert_eq!(compute_deck(&split, 4).unwrap(), compute_deck(&c, 4).unwrap());
}

#[test]
fn small_cycles_fall_short_of_half() {
    // the 2-deck of a 5-vertex graph only records the edge count
    assert_eq!(max_reconstructibility(&fam(Family::Cycle, &[5])).unwrap(), 2);
}

fn sweep() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for k in 1..=7usize {
        for q in 1..=14usize {
            for r in 1..=14usize {
                specs.push(FamilySpec::CycleSplit { k, q, r });
                specs.push(FamilySpec::CyclePath { k, q, r });
                if q != r {
                    specs.push(FamilySpec::PathShift { k, q, r });
                }
            }
        }
        specs.push(FamilySpec::SpiderPair { k });
        specs.push(FamilySpec::ManvelStars { k });
    }
    for t in 4..=14usize {
        for a in 1..t {
            for b in 1..t - a {
                specs.push(FamilySpec::CycleVsSpider { a, b, c: t - a - b });
            }
        }
    }
    for ell in 1..=7 {
        specs.push(FamilySpec::PathVsCyclePath { ell });
    }
    for t in 2..=7 {
        specs.push(FamilySpec::MyrvoldCommon { t });
    }
    specs.push(FamilySpec::ErpartPair);
    specs
}

#[test]
fn every_family_in_bounds_verifies() {
    let mut checked = 0;
    for spec in sweep() {
        let Ok(pair) = same_deck_pair(&spec) else { continue };
        if pair.g.order().max(pair.h.order()) > 14 && !matches!(spec, FamilySpec::ErpartPair) {
            continue;
        }
        let v = verify_construction(&spec);
        assert!(v.holds, "{spec}: {}", v.diagnostic);
        checked += 1;
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn bounds_are_needed() {
    let shifted = FamilySpec::PathShift { k: 4, q: 3, r: 4 };
    assert!(same_deck_pair(&shifted).is_err());
    assert!(!verify_construction(&shifted).holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adding_a_graph_keeps_decks_equal(h in graphs(1, 6), pick in 0..4usize) {
        let pairs = [
            (fam(Family::Cycle, &[4]).disjoint_union(&fam(Family::Path, &[1])).unwrap(), fam(Family::Spider, &[2, 1, 1]), 3),
            (fam(Family::Cycle, &[5]).disjoint_union(&fam(Family::Path, &[1])).unwrap(), fam(Family::Spider, &[2, 2, 1]), 3),
            (fam(Family::Cycle, &[6]), fam(Family::Cycle, &[3]).times(2).unwrap(), 2),
            (fam(Family::Path, &[4]), fam(Family::Cycle, &[3]).disjoint_union(&fam(Family::Path, &[1])).unwrap(), 2),
        ];
        let (g, g2, k) = &pairs[pick];
        prop_assume!(g.order() + h.order() <= 12);
        prop_assert_eq!(compute_deck(g, *k).unwrap(), compute_deck(g2, *k).unwrap());
        let a = compute_deck(&g.disjoint_union(&h).unwrap(), *k).unwrap();
        let b = compute_deck(&g2.disjoint_union(&h).unwrap(), *k).unwrap();
        prop_assert_eq!(a, b);
    }
}
