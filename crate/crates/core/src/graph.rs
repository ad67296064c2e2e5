//! Undirected simple graphs with dense vertex ids.
//!
//! Every structural operation that renumbers vertices returns a [`Remap`] so
//! callers holding names for vertices (the framework gadget index, minor
//! models) can follow them through the surgery.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::GraphError;

pub type Vertex = usize;

/// A sorted set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.iter().next().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.iter().next_back().copied()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.0.iter().copied().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn extend<I: IntoIterator<Item = Vertex>>(&mut self, it: I) {
        self.0.extend(it)
    }

    pub fn as_set(&self) -> &BTreeSet<Vertex> {
        &self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Old-to-new vertex correspondence produced by graph surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remap {
    /// `old_to_new[v]` is the new id of old vertex `v`, or `None` if it was removed.
    pub old_to_new: Vec<Option<Vertex>>,
    /// `new_to_old[w]` lists the old vertices that became `w` (several after a contraction).
    pub new_to_old: Vec<Vec<Vertex>>,
}

impl Remap {
    pub fn map(&self, v: Vertex) -> Option<Vertex> {
        self.old_to_new.get(v).copied().flatten()
    }
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `{u, v}`; returns whether the edge was new. Panics on loops or
    /// out-of-range ids, which are programming errors inside the builders.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        self.try_add_edge(u, v).expect("invalid edge")
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange(u.max(v), n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if let Ok(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(pos);
            let pos = self.adj[v].binary_search(&u).unwrap();
            self.adj[v].remove(pos);
            true
        } else {
            false
        }
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    fn check_members(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.max() {
            Some(v) if v >= self.n() => Err(GraphError::VertexOutOfRange(v, self.n())),
            _ => Ok(()),
        }
    }

    /// The subgraph induced by `s`, vertices renumbered in increasing order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Remap), GraphError> {
        self.check_members(s)?;
        let mut old_to_new = vec![None; self.n()];
        let mut new_to_old = Vec::with_capacity(s.len());
        for (new, old) in s.iter().enumerate() {
            old_to_new[old] = Some(new);
            new_to_old.push(vec![old]);
        }
        let mut g = Graph::new(s.len());
        for old in s.iter() {
            let u = old_to_new[old].unwrap();
            g.adj[u] = self.adj[old]
                .iter()
                .filter_map(|&w| old_to_new[w])
                .collect();
            if let Some(l) = self.labels.get(&old) {
                g.labels.insert(u, l.clone());
            }
        }
        Ok((g, Remap { old_to_new, new_to_old }))
    }

    /// `G \ S`.
    pub fn remove_vertices(&self, s: &VertexSet) -> Result<(Graph, Remap), GraphError> {
        self.check_members(s)?;
        let keep: VertexSet = self.vertices().filter(|&v| !s.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Merges the endpoints of edge `{u, v}` into the smaller id; ids above the
    /// larger endpoint shift down by one.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<(Graph, Remap), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let n = self.n();
        let mut old_to_new = Vec::with_capacity(n);
        for w in 0..n {
            old_to_new.push(Some(match w.cmp(&gone) {
                std::cmp::Ordering::Less => w,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => w - 1,
            }));
        }
        let mut new_to_old = vec![Vec::new(); n - 1];
        for w in 0..n {
            new_to_old[old_to_new[w].unwrap()].push(w);
        }
        let mut g = Graph::new(n - 1);
        for (a, b) in self.edges() {
            let (a2, b2) = (old_to_new[a].unwrap(), old_to_new[b].unwrap());
            if a2 != b2 {
                g.add_edge(a2, b2);
            }
        }
        Ok((g, Remap { old_to_new, new_to_old }))
    }

    /// Adds every edge between `a` and `b`.
    pub fn complete_join(&self, a: &VertexSet, b: &VertexSet) -> Result<Graph, GraphError> {
        self.check_members(a)?;
        self.check_members(b)?;
        if let Some(v) = a.intersection(b).first() {
            return Err(GraphError::Overlap(v));
        }
        let mut g = self.clone();
        for x in a.iter() {
            for y in b.iter() {
                g.add_edge(x, y);
            }
        }
        Ok(g)
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = VertexSet::new();
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }

    /// `|E| - |V| + #components`; never increases when taking minors.
    pub fn cycle_rank(&self) -> usize {
        self.num_edges() + self.connected_components().len() - self.n()
    }

    /// Whether every pair of distinct vertices is joined by `i` internally
    /// disjoint paths. Graphs with fewer than two vertices are never
    /// i-connected.
    pub fn is_i_connected(&self, i: usize) -> bool {
        let n = self.n();
        if n < 2 || i == 0 {
            return n >= 2;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if self.local_connectivity(u, v, i) < i {
                    return false;
                }
            }
        }
        true
    }

    /// Number of internally disjoint `(s, t)`-paths, capped at `cap`. A direct
    /// edge counts as one path.
    pub fn local_connectivity(&self, s: Vertex, t: Vertex, cap: usize) -> usize {
        // Vertex splitting: v_in = 2v, v_out = 2v + 1, unit capacities.
        let n = self.n();
        let node_count = 2 * n;
        let mut cap_map: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        let mut graph: Vec<Vec<usize>> = vec![Vec::new(); node_count];
        let mut add = |a: usize, b: usize, c: i32, graph: &mut Vec<Vec<usize>>| {
            if !cap_map.contains_key(&(a, b)) && !cap_map.contains_key(&(b, a)) {
                graph[a].push(b);
                graph[b].push(a);
            }
            *cap_map.entry((a, b)).or_insert(0) += c;
            cap_map.entry((b, a)).or_insert(0);
        };
        for v in 0..n {
            let c = if v == s || v == t { cap as i32 } else { 1 };
            add(2 * v, 2 * v + 1, c, &mut graph);
        }
        for (a, b) in self.edges() {
            add(2 * a + 1, 2 * b, 1, &mut graph);
            add(2 * b + 1, 2 * a, 1, &mut graph);
        }
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        while flow < cap {
            let mut prev = vec![usize::MAX; node_count];
            prev[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for &y in &graph[x] {
                    if prev[y] == usize::MAX && cap_map[&(x, y)] > 0 {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                break;
            }
            let mut y = sink;
            while y != source {
                let x = prev[y];
                *cap_map.get_mut(&(x, y)).unwrap() -= 1;
                *cap_map.get_mut(&(y, x)).unwrap() += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    /// Vertices of degree exactly one; the lone vertex when `n == 1`.
    pub fn degree_one_vertices(&self) -> VertexSet {
        if self.n() == 1 {
            return VertexSet::from([0]);
        }
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.num_edges() + 1 == self.n()
    }

    /// Whether this is `K_{1,s}` for some `s >= 1`.
    pub fn is_star(&self) -> Option<usize> {
        let n = self.n();
        if n < 2 || !self.is_tree() {
            return None;
        }
        if n == 2 {
            return Some(1);
        }
        (self.max_degree() == n - 1).then_some(n - 1)
    }
}

/// Small named graphs.
pub mod named {
    use super::Graph;

    pub fn empty(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// `K_{1,s}` with centre 0.
    pub fn star(s: usize) -> Graph {
        let mut g = Graph::new(s + 1);
        for v in 1..=s {
            g.add_edge(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..(a + b) {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `C4` on 0..4 with a pendant vertex 4 attached to 0.
    pub fn banner() -> Graph {
        let mut g = cycle(4);
        g.add_vertex();
        g.add_edge(0, 4);
        g
    }

    /// Triangle 0,1,2 with pendant 3 on 0.
    pub fn paw() -> Graph {
        let mut g = cycle(3);
        g.add_vertex();
        g.add_edge(0, 3);
        g
    }

    /// Triangle 0,1,2 with pendants 3 and 4 on 0.
    pub fn cricket() -> Graph {
        let mut g = paw();
        g.add_vertex();
        g.add_edge(0, 4);
        g
    }

    /// Path 0-1-2-3 with a pendant 4 on 2 (also called the fork).
    pub fn chair() -> Graph {
        let mut g = path(4);
        g.add_vertex();
        g.add_edge(2, 4);
        g
    }

    /// Two triangles sharing vertex 0.
    pub fn butterfly() -> Graph {
        let mut g = Graph::new(5);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)] {
            g.add_edge(u, v);
        }
        g
    }

    /// `K4` minus the edge {2, 3}.
    pub fn diamond() -> Graph {
        let mut g = complete(4);
        g.remove_edge(2, 3);
        g
    }

    /// `n x m` grid, vertex `(r, c)` at `r * m + c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        g
    }
}
