#![allow(dead_code)]

use minorforge::graph::Graph;
use minorforge::reductions::PisInstance;
use proptest::prelude::*;

/// Graphs on `1..=max_n` vertices with each pair present independently.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[idx] {
                        g.add_edge(u, v);
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

pub fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", Graph::is_connected)
}

/// Applies the permutation `perm` to the vertex ids of `g`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let mut out = Graph::new(g.n());
    for (u, v) in g.edges() {
        out.add_edge(perm[u], perm[v]);
    }
    out
}

/// Normalized 2x2 or 3x3 instances with a few random cross-row edges.
pub fn arb_instance() -> impl Strategy<Value = PisInstance> {
    (2usize..=3, any::<u64>(), 0usize..=3).prop_map(|(k, seed, cross)| {
        let rows = k * k * (k - 1) / 2;
        PisInstance::random_with_edges(k, rows + cross, seed).unwrap()
    })
}
