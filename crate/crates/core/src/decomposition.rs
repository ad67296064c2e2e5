//! Blocks, block-cut trees, and path decompositions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, GraphError, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::io::parse_usizes;
use crate::reductions::Framework;

/// Vertex sets of the blocks (maximal biconnected subgraphs, bridges
/// included) of `g`, sorted lexicographically. Isolated vertices belong to
/// no block.
pub fn blocks(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&(u, parent, idx)) = stack.last() {
            if idx < g.degree(u) {
                let w = g.neighbors(u)[idx];
                stack.last_mut().unwrap().2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = VertexSet::new();
                        while let Some((x, y)) = edge_stack.pop() {
                            block.insert(x);
                            block.insert(y);
                            if (x, y) == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Vertices lying in at least two blocks.
pub fn cut_vertices(g: &Graph) -> VertexSet {
    let mut count = vec![0usize; g.n()];
    for b in blocks(g) {
        for v in b.iter() {
            count[v] += 1;
        }
    }
    g.vertices().filter(|&v| count[v] >= 2).collect()
}

/// Number of edges of `g` with both endpoints in `s`.
pub fn induced_edge_count(g: &Graph, s: &VertexSet) -> usize {
    s.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&w| w > v && s.contains(w)).count())
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// `(block index, cut vertex)` pairs.
    pub tree_edges: Vec<(usize, Vertex)>,
}

impl BlockCutTree {
    /// Cut vertices contained in block `b`.
    pub fn cuts_of(&self, b: usize) -> Vec<Vertex> {
        self.blocks[b]
            .iter()
            .filter(|&v| self.cut_vertices.contains(v))
            .collect()
    }

    /// Indices of blocks containing vertex `v`.
    pub fn blocks_at(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].contains(v))
            .collect()
    }

    /// Leaf blocks. A tree with a single block node counts that block as a
    /// leaf.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.cuts_of(b).len() <= 1)
            .collect()
    }
}

pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    if g.n() < 2 {
        return Err(GraphError::TooSmall(2).into());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let blocks = blocks(g);
    let cut_vertices = cut_vertices(g);
    let mut tree_edges = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        for v in b.iter().filter(|&v| cut_vertices.contains(v)) {
            tree_edges.push((bi, v));
        }
    }
    Ok(BlockCutTree {
        blocks,
        cut_vertices,
        tree_edges,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    VertexOutOfRange(Vertex),
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    /// The bags containing the vertex do not form an interval.
    NotContiguous(Vertex),
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange(v) => write!(f, "bag mentions vertex {v} outside the graph"),
            Self::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Self::UncoveredEdge(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Self::NotContiguous(v) => write!(f, "bags containing vertex {v} are not contiguous"),
        }
    }
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("bags {}\n", self.bags.len());
        for bag in &self.bags {
            let line: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> std::result::Result<Self, GraphError> {
        // Blank lines are meaningful here (empty bags), so only comments are skipped.
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hl, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(GraphError::Parse { line: 1, msg: "missing `bags <count>` header".into() })?;
        let count = header
            .strip_prefix("bags")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or(GraphError::Parse { line: hl, msg: "header must be `bags <count>`".into() })?;
        let mut bags = Vec::with_capacity(count);
        for (ln, line) in lines.take(count) {
            bags.push(parse_usizes(ln, line)?.into());
        }
        if bags.len() != count {
            return Err(GraphError::Parse {
                line: hl,
                msg: format!("header announces {count} bags, found {}", bags.len()),
            });
        }
        Ok(PathDecomposition { bags })
    }
}

/// Checks the three path-decomposition axioms and returns the width.
pub fn validate_decomposition(
    g: &Graph,
    d: &PathDecomposition,
) -> std::result::Result<usize, DecompositionViolation> {
    let n = g.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0; n];
    let mut count = vec![0usize; n];
    for (idx, bag) in d.bags.iter().enumerate() {
        for v in bag.iter() {
            if v >= n {
                return Err(DecompositionViolation::VertexOutOfRange(v));
            }
            first[v] = first[v].min(idx);
            last[v] = idx;
            count[v] += 1;
        }
    }
    for v in 0..n {
        if count[v] == 0 {
            return Err(DecompositionViolation::UncoveredVertex(v));
        }
    }
    for v in 0..n {
        if last[v] - first[v] + 1 != count[v] {
            return Err(DecompositionViolation::NotContiguous(v));
        }
    }
    for (u, v) in g.edges() {
        // With contiguity established, {u, v} share a bag iff their intervals meet.
        if first[u].max(first[v]) > last[u].min(last[v]) {
            return Err(DecompositionViolation::UncoveredEdge(u, v));
        }
    }
    Ok(d.width())
}

/// The explicit path decomposition of a framework graph: one run of `k` bags
/// per PIS edge in cyclic order. Every bag of the run for edge `e` holds the
/// separator gadgets of the first edge, of `e` and of its successor, plus one
/// column of `e`'s gadget. The two columns holding `e`'s endpoints come first
/// and the first bag also carries the far endpoint's B-gadget, so every
/// endpoint-join edge is covered while no bag holds more than `k + 1`
/// B-gadgets.
///
/// The width never exceeds [`formula_width`] and equals it exactly when
/// [`formula_width_attained`] holds.
pub fn framework_path_decomposition(fw: &Framework) -> Result<PathDecomposition> {
    let k = fw.params.k;
    let m = fw.params.m;
    if m == 0 || fw.num_pis_edges() != m {
        return Err(Error::Input("framework has a malformed gadget index".into()));
    }
    let mut bags = Vec::with_capacity(k * m);
    for e in 0..m {
        let next = (e + 1) % m;
        let mut separators: BTreeSet<Vertex> = BTreeSet::new();
        for t in [0, e, next] {
            separators.extend(fw.j_gadget(t).iter().copied());
        }
        let ((_, j1), (i2, j2)) = fw.pis_edge(e);
        let mut order = vec![j1];
        if j2 != j1 {
            order.push(j2);
        }
        order.extend((0..k).filter(|&j| j != j1 && j != j2));
        for (pos, &j) in order.iter().enumerate() {
            let mut bag: VertexSet = separators.iter().copied().collect();
            bag.extend(fw.column(e, j));
            if pos == 0 && j2 != j1 {
                bag.extend(fw.b_gadget(e, i2, j2).iter().copied());
            }
            bags.push(bag);
        }
    }
    Ok(PathDecomposition { bags })
}

/// Width of the explicit decomposition as a closed formula:
/// `z (k + 1) - 1 + 3 |V(J)|`, where `z` is the B-gadget size and `|V(J)|`
/// the separator gadget size.
pub fn formula_width(fw: &Framework) -> usize {
    let p = &fw.params;
    p.z * (p.k + 1) - 1 + 3 * fw.j_gadget(0).len()
}

/// Whether some bag meets [`formula_width`]: an edge other than the first
/// and last in cyclic order (so three distinct separator gadgets share its
/// bags) must join cells in two different columns.
pub fn formula_width_attained(fw: &Framework) -> bool {
    let m = fw.num_pis_edges();
    (1..m.saturating_sub(1)).any(|e| {
        let ((_, j1), (_, j2)) = fw.pis_edge(e);
        j1 != j2
    })
}
