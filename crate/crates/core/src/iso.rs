//! Canonical forms for small graphs and enumeration of all graphs up to
//! isomorphism on a handful of vertices.
//!
//! The canonical form is the lexicographically smallest upper-triangle
//! adjacency string over all orderings compatible with an equitable colour
//! refinement. That is exhaustive over the refined cells, which is fine for
//! the ≤ 8-vertex graphs this is used on.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Canonical adjacency code; equal codes mean isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        let mut idx = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.bits[idx] {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
        g
    }
}

/// Refines an ordered partition until every cell is equitable. Cells are
/// split by the number of neighbours in each other cell; the resulting order
/// depends only on isomorphism-invariant data.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let n = g.n();
        let mut cell_of = vec![0; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0; cells.len()];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for idx in 1..=keyed.len() {
                if idx == keyed.len() || keyed[idx].0 != keyed[start].0 {
                    next.push(keyed[start..idx].iter().map(|(_, v)| *v).collect());
                    start = idx;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn code_for(g: &Graph, order: &[usize]) -> Vec<bool> {
    let n = order.len();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            bits.push(g.has_edge(order[a], order[b]));
        }
    }
    bits
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<bool>>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = code_for(g, &order);
            // Codes are compared with "edges first" so that the canonical
            // representative of a class is the one with the densest prefix.
            let better = match best {
                None => true,
                Some(b) => code.iter().map(|&x| !x).lt(b.iter().map(|&x| !x)),
            };
            if better {
                *best = Some(code);
            }
        }
        Some(pos) => {
            for &v in &cells[pos] {
                let mut next = cells.clone();
                let rest: Vec<usize> = cells[pos].iter().copied().filter(|&w| w != v).collect();
                next.splice(pos..=pos, [vec![v], rest]);
                search(g, next, best);
            }
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    if n == 0 {
        return CanonicalForm { n, bits: Vec::new() };
    }
    // Initial cells by descending degree so high-degree vertices come first.
    let mut by_deg: Vec<usize> = g.vertices().collect();
    by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_deg {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = None;
    search(g, cells, &mut best);
    CanonicalForm {
        n,
        bits: best.unwrap_or_default(),
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.num_edges() == b.num_edges()
        && a.degree_sequence() == b.degree_sequence()
        && canonical_form(a) == canonical_form(b)
}

/// All graphs on exactly `n` vertices up to isomorphism, each in canonical
/// labelling, sorted by canonical code.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Graph::new(0)));
    for size in 0..n {
        let mut next = BTreeSet::new();
        for form in &level {
            let base = form.to_graph();
            for mask in 0u64..(1u64 << size) {
                let mut g = base.clone();
                let v = g.add_vertex();
                for u in 0..size {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                next.insert(canonical_form(&g));
            }
        }
        level = next;
    }
    level.iter().map(CanonicalForm::to_graph).collect()
}

/// Connected graphs with `min_n ≤ n ≤ max_n` vertices, ordered by vertex
/// count, then edge count, then canonical code.
pub fn connected_graphs(min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in min_n..=max_n {
        let mut layer: Vec<Graph> = graphs_on(n).into_iter().filter(Graph::is_connected).collect();
        layer.sort_by_key(|g| g.num_edges());
        out.extend(layer);
    }
    out
}

/// All graphs (connected or not) with at most `max_n` vertices, including
/// the empty graph.
pub fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut layer = graphs_on(n);
        layer.sort_by_key(|g| g.num_edges());
        out.extend(layer);
    }
    out
}
