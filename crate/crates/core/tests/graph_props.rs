mod common;

use common::{fam, graphs, permutation};
use deckforge::graph::{block_decomposition, canonical_form, is_isomorphic, parse_graph6, CanonicalCode, Family, Graph};
use proptest::prelude::*;

proptest! {
    #[test]
    fn canonical_form_ignores_labels((g, perm) in graphs(1, 14).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
        let c = g.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert_eq!(c.canonical_form().to_graph(), c);
    }

    #[test]
    fn complement_is_an_involution(g in graphs(1, 20)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.order();
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn graph6_roundtrip(g in graphs(1, 40)) {
        prop_assert_eq!(parse_graph6(&g.graph6()).unwrap(), g.clone());
        let code = g.canonical_form();
        prop_assert_eq!(CanonicalCode::from_bytes(code.as_bytes()).unwrap(), code);
    }

    #[test]
    fn blocks_cover_edges_and_meet_at_cut_vertices(g in graphs(2, 14)) {
        prop_assume!(g.is_connected());
        let b = block_decomposition(&g).unwrap();
        // each edge lies in exactly one block
        for (u, v) in g.edges() {
            let holding = b.blocks.iter().filter(|&&m| m >> u & 1 == 1 && m >> v & 1 == 1).count();
            prop_assert_eq!(holding, 1);
        }
        // cut vertices are the ones in two or more blocks, and the ones whose removal disconnects
        for v in 0..g.order() {
            let in_blocks = b.blocks.iter().filter(|&&m| m >> v & 1 == 1).count();
            let cut = b.cut_vertices >> v & 1 == 1;
            prop_assert_eq!(cut, in_blocks >= 2);
            let rest: Vec<usize> = (0..g.order()).filter(|&u| u != v).collect();
            prop_assert_eq!(cut, !g.induced_subgraph(&rest).unwrap().is_connected());
        }
        prop_assert_eq!(g.has_cut_vertex(), b.cut_vertices != 0);
        for (i, &m) in b.blocks.iter().enumerate() {
            let block = g.induced_mask(m).unwrap();
            prop_assert!(block.order() == 2 || !block.has_cut_vertex());
            let cuts = (m & b.cut_vertices).count_ones();
            prop_assert_eq!(b.leaf[i], cuts <= 1);
        }
        // block-cut tree: blocks + cut vertices - 1 edges
        let incidences: u32 = b.blocks.iter().map(|m| (m & b.cut_vertices).count_ones()).sum();
        prop_assert_eq!(incidences as usize, b.blocks.len() + b.cut_vertices.count_ones() as usize - 1);
    }
}

#[test]
fn families_have_expected_sizes() {
    assert_eq!(fam(Family::Cycle, &[7]).edge_count(), 7);
    assert_eq!(fam(Family::Path, &[7]).edge_count(), 6);
    assert_eq!(fam(Family::CompleteMultipartite, &[7, 4, 3]).edge_count(), 28 + 21 + 12);
    assert_eq!(fam(Family::Spider, &[2, 2, 1]).order(), 6);
    assert_eq!(fam(Family::StarForest, &[3, 0, 2]).order(), 8);
    assert!(Graph::empty(65).is_err());
    assert!(block_decomposition(&Graph::empty(2).unwrap()).is_err());
}
