mod common;

use common::{arb_connected_graph, arb_graph, relabel};
use minorforge::decomposition::{block_cut_tree, blocks, cut_vertices};
use minorforge::graph::{named, Graph, VertexSet};
use minorforge::io::{format_edge_list, parse_edge_list};
use minorforge::iso::{are_isomorphic, canonical_form};
use proptest::prelude::*;

#[test]
fn edge_list_rejects_malformed_input() {
    assert!(parse_edge_list("3 1\n0 3\n").is_err());
    assert!(parse_edge_list("3 2\n0 1\n").is_err());
    assert!(parse_edge_list("3 1\n1 0\n").is_err());
    assert!(parse_edge_list("3 2\n0 1\n0 1\n").is_err());
    let g = parse_edge_list("# triangle\n3 3\n0 1\n0 2\n\n1 2\n").unwrap();
    assert!(are_isomorphic(&g, &named::cycle(3)));
}

#[test]
fn named_graph_shapes() {
    assert_eq!(named::banner().degree_sequence(), vec![3, 2, 2, 2, 1]);
    assert_eq!(named::cricket().degree_sequence(), vec![4, 2, 2, 1, 1]);
    assert_eq!(named::chair().degree_sequence(), vec![3, 2, 1, 1, 1]);
    assert_eq!(named::butterfly().degree_sequence(), vec![4, 2, 2, 2, 2]);
    assert_eq!(named::grid(3, 3).num_edges(), 12);
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph(8)) {
        let text = format_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labelling(g in arb_graph(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn cut_vertices_split_components(g in arb_graph(8)) {
        let cuts = cut_vertices(&g);
        let base = g.connected_components().len();
        for v in g.vertices() {
            let (rest, _) = g.remove_vertices(&VertexSet::from([v])).unwrap();
            let after = rest.connected_components().len();
            if cuts.contains(v) {
                prop_assert!(after > base);
            } else {
                // an isolated vertex disappears along with its component
                prop_assert!(after <= base);
            }
        }
    }

    #[test]
    fn blocks_cover_and_meet_at_cut_vertices(g in arb_connected_graph(8)) {
        prop_assume!(g.n() >= 2);
        let bs = blocks(&g);
        let cuts = cut_vertices(&g);
        let covered = bs.iter().fold(VertexSet::new(), |acc, b| acc.union(b));
        prop_assert_eq!(covered, g.all_vertices());
        for (x, a) in bs.iter().enumerate() {
            for b in &bs[x + 1..] {
                let common = a.intersection(b);
                prop_assert!(common.len() <= 1);
                if let Some(v) = common.first() {
                    prop_assert!(cuts.contains(v));
                }
            }
        }
        // every edge lies in exactly one block
        for (u, v) in g.edges() {
            let hits = bs.iter().filter(|b| b.contains(u) && b.contains(v)).count();
            prop_assert_eq!(hits, 1);
        }
        let tree = block_cut_tree(&g).unwrap();
        prop_assert_eq!(tree.tree_edges.len(), tree.blocks.len() + tree.cut_vertices.len() - 1);
    }

    #[test]
    fn cycle_rank_matches_components(g in arb_graph(8)) {
        prop_assert_eq!(g.cycle_rank() + g.n(), g.num_edges() + g.connected_components().len());
    }

    #[test]
    fn induced_subgraph_keeps_exactly_inner_edges(g in arb_graph(8), mask in any::<u16>()) {
        let keep: VertexSet = g.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let (sub, remap) = g.induced_subgraph(&keep).unwrap();
        let inner = g.edges().into_iter().filter(|&(u, v)| keep.contains(u) && keep.contains(v)).count();
        prop_assert_eq!(sub.num_edges(), inner);
        for (u, v) in sub.edges() {
            prop_assert!(g.has_edge(remap.new_to_old[u][0], remap.new_to_old[v][0]));
        }
    }

    #[test]
    fn i_connectivity_is_monotone(g in arb_connected_graph(7)) {
        let levels: Vec<bool> = (1..=4).map(|i| g.is_i_connected(i)).collect();
        for w in levels.windows(2) {
            prop_assert!(w[0] || !w[1]);
        }
    }
}

#[test]
fn complete_graph_connectivity() {
    let k5: Graph = named::complete(5);
    assert!(k5.is_i_connected(4));
    assert!(!k5.is_i_connected(5));
    assert!(!named::path(4).is_i_connected(2));
}
