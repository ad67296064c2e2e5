//! Minor and topological-minor containment: exact finders returning
//! certificates, validators for those certificates, the two
//! containment-preserving reductions on host graphs, and exhaustive
//! vertex-deletion numbers.
//!
//! The minor finder relies on a covering argument: inside a connected host,
//! any minor model can be grown until its branch sets partition the host.
//! So it enumerates partitions of the (reduced) host into exactly `|V(H)|`
//! connected parts and asks whether `H` is a spanning subgraph of the
//! quotient. Hosts are shrunk first with reductions that are safe for the
//! given pattern (leaf stripping, degree-2 suppression, splitting into
//! blocks for 2-connected patterns).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::decomposition::{block_cut_tree, blocks};
use crate::error::{Error, GraphError, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Minor,
    TopologicalMinor,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Minor => "minor",
            Relation::TopologicalMinor => "tm",
        })
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minor" | "m" => Ok(Relation::Minor),
            "tm" | "topological" | "topological-minor" => Ok(Relation::TopologicalMinor),
            other => Err(Error::Input(format!("unknown relation {other:?} (expected minor or tm)"))),
        }
    }
}

/// Hard caps that turn runaway searches into refusals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest host component an exhaustive containment search accepts.
    pub max_host: usize,
    /// Largest pattern graph accepted.
    pub max_pattern: usize,
    /// Budget for enumerations: deletion candidates, structured solutions.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_host: 40,
            max_pattern: 10,
            max_nodes: 1 << 20,
        }
    }
}

/// Largest host component the bitset search can represent at all.
const BITSET_CAP: usize = 128;

impl SearchLimits {
    /// Parses overrides such as `n=40,h=10,nodes=1048576` on top of the defaults.
    pub fn parse(overrides: &str) -> Result<Self> {
        let mut limits = SearchLimits::default();
        for part in overrides.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("limit {part:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("limit {part:?} needs an integer value")))?;
            match key.trim() {
                "n" => limits.max_host = value as usize,
                "h" => limits.max_pattern = value as usize,
                "nodes" => limits.max_nodes = value,
                other => return Err(Error::Input(format!("unknown limit key {other:?}"))),
            }
        }
        Ok(limits)
    }

    /// Defaults overridden by the `MINORFORGE_LIMITS` environment variable.
    pub fn from_env() -> Result<Self> {
        match std::env::var("MINORFORGE_LIMITS") {
            Ok(overrides) => Self::parse(&overrides),
            Err(_) => Ok(Self::default()),
        }
    }

    /// The largest sizes the finders can handle; used by the plain
    /// `find_*` entry points.
    pub fn unbounded() -> Self {
        SearchLimits {
            max_host: BITSET_CAP,
            max_pattern: 32,
            max_nodes: u64::MAX,
        }
    }
}

// ---------------------------------------------------------------------------
// Models and validation
// ---------------------------------------------------------------------------

/// `branch_sets[x]` is the branch set of pattern vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

/// Branch vertices plus one path per pattern edge `(x, y)` with `x < y`,
/// running from the image of `x` to the image of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoMinorModel {
    pub branch_vertices: Vec<Vertex>,
    pub paths: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Minor(MinorModel),
    Topological(TopoMinorModel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    WrongArity { expected: usize, found: usize },
    EmptyBranchSet(Vertex),
    OutOfRange(Vertex, Vertex),
    Overlap { x: Vertex, y: Vertex, at: Vertex },
    DisconnectedBranchSet(Vertex),
    MissingEdge(Vertex, Vertex),
    NotInjective { x: Vertex, y: Vertex },
    MissingPath(Vertex, Vertex),
    UnexpectedPath(Vertex, Vertex),
    BadPath { edge: (Vertex, Vertex), reason: String },
    SharedInternalVertex(Vertex),
    InternalOnBranchVertex(Vertex),
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongArity { expected, found } => {
                write!(f, "model covers {found} pattern vertices, expected {expected}")
            }
            Self::EmptyBranchSet(x) => write!(f, "branch set of {x} is empty"),
            Self::OutOfRange(x, v) => write!(f, "branch of {x} uses vertex {v} outside the host"),
            Self::Overlap { x, y, at } => write!(f, "branch sets of {x} and {y} overlap at {at}"),
            Self::DisconnectedBranchSet(x) => write!(f, "branch set of {x} is not connected"),
            Self::MissingEdge(x, y) => write!(f, "no host edge between the branch sets of {x} and {y}"),
            Self::NotInjective { x, y } => write!(f, "{x} and {y} share a branch vertex"),
            Self::MissingPath(x, y) => write!(f, "no path for pattern edge {x}-{y}"),
            Self::UnexpectedPath(x, y) => write!(f, "path given for non-edge {x}-{y}"),
            Self::BadPath { edge, reason } => write!(f, "path for {}-{}: {reason}", edge.0, edge.1),
            Self::SharedInternalVertex(v) => write!(f, "vertex {v} is internal to two paths"),
            Self::InternalOnBranchVertex(v) => write!(f, "internal vertex {v} is also a branch vertex"),
        }
    }
}

pub fn validate_minor_model(
    h: &Graph,
    g: &Graph,
    model: &MinorModel,
) -> std::result::Result<(), ModelViolation> {
    let sets = &model.branch_sets;
    if sets.len() != h.n() {
        return Err(ModelViolation::WrongArity {
            expected: h.n(),
            found: sets.len(),
        });
    }
    let mut owner: Vec<Option<Vertex>> = vec![None; g.n()];
    for (x, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(ModelViolation::EmptyBranchSet(x));
        }
        for v in set.iter() {
            if v >= g.n() {
                return Err(ModelViolation::OutOfRange(x, v));
            }
            if let Some(y) = owner[v] {
                return Err(ModelViolation::Overlap { x: y, y: x, at: v });
            }
            owner[v] = Some(x);
        }
        let (sub, _) = g.induced_subgraph(set).expect("range checked");
        if !sub.is_connected() {
            return Err(ModelViolation::DisconnectedBranchSet(x));
        }
    }
    for (x, y) in h.edges() {
        let touches = sets[x]
            .iter()
            .any(|u| g.neighbors(u).iter().any(|&w| owner[w] == Some(y)));
        if !touches {
            return Err(ModelViolation::MissingEdge(x, y));
        }
    }
    Ok(())
}

pub fn validate_topo_model(
    h: &Graph,
    g: &Graph,
    model: &TopoMinorModel,
) -> std::result::Result<(), ModelViolation> {
    let phi = &model.branch_vertices;
    if phi.len() != h.n() {
        return Err(ModelViolation::WrongArity {
            expected: h.n(),
            found: phi.len(),
        });
    }
    let mut branch_of: Vec<Option<Vertex>> = vec![None; g.n()];
    for (x, &v) in phi.iter().enumerate() {
        if v >= g.n() {
            return Err(ModelViolation::OutOfRange(x, v));
        }
        if let Some(y) = branch_of[v] {
            return Err(ModelViolation::NotInjective { x: y, y: x });
        }
        branch_of[v] = Some(x);
    }
    for &(x, y) in model.paths.keys() {
        if !(x < y && h.has_edge(x, y)) {
            return Err(ModelViolation::UnexpectedPath(x, y));
        }
    }
    let mut internal_seen = vec![false; g.n()];
    for (x, y) in h.edges() {
        let path = model
            .paths
            .get(&(x, y))
            .ok_or(ModelViolation::MissingPath(x, y))?;
        let bad = |reason: &str| ModelViolation::BadPath {
            edge: (x, y),
            reason: reason.to_string(),
        };
        if path.len() < 2 || path[0] != phi[x] || path[path.len() - 1] != phi[y] {
            return Err(bad("endpoints do not match the branch vertices"));
        }
        if let Some(&v) = path.iter().find(|&&v| v >= g.n()) {
            return Err(ModelViolation::OutOfRange(x, v));
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(bad("consecutive vertices are not adjacent"));
            }
        }
        let distinct: VertexSet = path.iter().copied().collect();
        if distinct.len() != path.len() {
            return Err(bad("path repeats a vertex"));
        }
        for &v in &path[1..path.len() - 1] {
            if branch_of[v].is_some() {
                return Err(ModelViolation::InternalOnBranchVertex(v));
            }
            if internal_seen[v] {
                return Err(ModelViolation::SharedInternalVertex(v));
            }
            internal_seen[v] = true;
        }
    }
    Ok(())
}

pub fn validate_model(h: &Graph, g: &Graph, model: &Model) -> std::result::Result<(), ModelViolation> {
    match model {
        Model::Minor(m) => validate_minor_model(h, g, m),
        Model::Topological(t) => validate_topo_model(h, g, t),
    }
}

impl MinorModel {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, set) in self.branch_sets.iter().enumerate() {
            let vs: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("branch {x}: {}\n", vs.join(" ")));
        }
        out
    }
}

impl TopoMinorModel {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, v) in self.branch_vertices.iter().enumerate() {
            out.push_str(&format!("branch {x}: {v}\n"));
        }
        for ((x, y), path) in &self.paths {
            let vs: Vec<String> = path.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("path {x}-{y}: {}\n", vs.join(" ")));
        }
        out
    }
}

impl Model {
    pub fn to_text(&self) -> String {
        match self {
            Model::Minor(m) => m.to_text(),
            Model::Topological(t) => t.to_text(),
        }
    }

    /// Parses either model format; the presence of `path` lines (or a
    /// relation of `TopologicalMinor`) selects the topological form.
    pub fn from_text(text: &str, rel: Relation) -> Result<Self> {
        let mut branches: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        let mut paths = BTreeMap::new();
        for (ln, line) in crate::io::content_lines(text) {
            let err = |msg: &str| Error::Graph(GraphError::Parse { line: ln, msg: msg.to_string() });
            let (head, rest) = line.split_once(':').ok_or_else(|| err("missing ':'"))?;
            let vs = crate::io::parse_usizes(ln, rest)?;
            let mut words = head.split_whitespace();
            match (words.next(), words.next()) {
                (Some("branch"), Some(x)) => {
                    let x: usize = x.parse().map_err(|_| err("bad branch index"))?;
                    branches.insert(x, vs);
                }
                (Some("path"), Some(xy)) => {
                    let (x, y) = xy.split_once('-').ok_or_else(|| err("path label must be x-y"))?;
                    let x: usize = x.parse().map_err(|_| err("bad path label"))?;
                    let y: usize = y.parse().map_err(|_| err("bad path label"))?;
                    paths.insert((x.min(y), x.max(y)), if x <= y { vs } else { vs.into_iter().rev().collect() });
                }
                _ => return Err(err("expected `branch x:` or `path x-y:`")),
            }
        }
        if branches.keys().copied().ne(0..branches.len()) {
            return Err(Error::Input("branch indices must be 0..n-1".into()));
        }
        if rel == Relation::TopologicalMinor || !paths.is_empty() {
            let mut phi = Vec::new();
            for vs in branches.values() {
                match vs[..] {
                    [v] => phi.push(v),
                    _ => return Err(Error::Input("topological branches hold one vertex".into())),
                }
            }
            Ok(Model::Topological(TopoMinorModel {
                branch_vertices: phi,
                paths,
            }))
        } else {
            Ok(Model::Minor(MinorModel {
                branch_sets: branches.into_values().map(VertexSet::from).collect(),
            }))
        }
    }
}

// ---------------------------------------------------------------------------
// Minor search
// ---------------------------------------------------------------------------

type Bits = u128;

fn bit(v: usize) -> Bits {
    1 << v
}

fn bits_iter(mut b: Bits) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if b == 0 {
            None
        } else {
            let v = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(v)
        }
    })
}

/// Does `pattern` embed as a spanning subgraph of the graph on `quot.len()`
/// vertices with adjacency masks `quot`? Returns the vertex map.
fn spanning_embedding(pattern: &Graph, quot: &[u32]) -> Option<Vec<usize>> {
    let h = pattern.n();
    if quot.len() != h {
        return None;
    }
    let qdeg: Vec<u32> = quot.iter().map(|m| m.count_ones()).collect();
    // Pattern order: repeatedly the vertex with most already-ordered
    // neighbours, then highest degree.
    let mut order = Vec::with_capacity(h);
    let mut placed = vec![false; h];
    for _ in 0..h {
        let next = (0..h)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let linked = pattern.neighbors(x).iter().filter(|&&y| placed[y]).count();
                (linked, pattern.degree(x), std::cmp::Reverse(x))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; h];
    fn go(
        t: usize,
        order: &[usize],
        pattern: &Graph,
        quot: &[u32],
        qdeg: &[u32],
        map: &mut Vec<usize>,
        used: u32,
    ) -> bool {
        if t == order.len() {
            return true;
        }
        let x = order[t];
        let mut need: u32 = u32::MAX;
        for &y in pattern.neighbors(x) {
            if map[y] != usize::MAX {
                need &= quot[map[y]];
            }
        }
        for q in 0..quot.len() {
            if used >> q & 1 == 1 || need >> q & 1 == 0 || (qdeg[q] as usize) < pattern.degree(x) {
                continue;
            }
            map[x] = q;
            if go(t + 1, order, pattern, quot, qdeg, map, used | 1 << q) {
                return true;
            }
            map[x] = usize::MAX;
        }
        false
    }
    if go(0, &order, pattern, quot, &qdeg, &mut map, 0) {
        Some(map)
    } else {
        None
    }
}

/// Enumerates partitions of a connected host (≤ 128 vertices) into exactly
/// `pattern.n()` connected parts.
struct PartitionSearch<'a> {
    pattern: &'a Graph,
    h: usize,
    n: usize,
    adj: Vec<Bits>,
    order: Vec<usize>,
    part_of: Vec<usize>,
    parts: Vec<Bits>,
    unassigned: Bits,
    /// Pattern degrees sorted ascending, for the degree-domination check.
    pattern_degrees: Vec<usize>,
    memo: HashMap<Vec<u32>, Option<Vec<usize>>>,
    found: Option<Vec<Bits>>,
}

impl<'a> PartitionSearch<'a> {
    fn new(pattern: &'a Graph, host: &Graph) -> Self {
        let n = host.n();
        let adj: Vec<Bits> = host
            .vertices()
            .map(|v| host.neighbors(v).iter().fold(0, |acc, &w| acc | bit(w)))
            .collect();
        // BFS from a maximum-degree vertex: every later vertex has an
        // earlier neighbour, so parts close early and pruning bites.
        let start = host
            .vertices()
            .max_by_key(|&v| (host.degree(v), std::cmp::Reverse(v)))
            .unwrap_or(0);
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        if n > 0 {
            seen[start] = true;
            order.push(start);
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &w in host.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        let mut pattern_degrees: Vec<usize> = pattern.vertices().map(|x| pattern.degree(x)).collect();
        pattern_degrees.sort_unstable();
        PartitionSearch {
            pattern,
            h: pattern.n(),
            n,
            adj,
            order,
            part_of: vec![usize::MAX; n],
            parts: Vec::new(),
            unassigned: if n == 128 { Bits::MAX } else { (bit(n)) - 1 },
            pattern_degrees,
            memo: HashMap::new(),
            found: None,
        }
    }

    fn neighbourhood(&self, set: Bits) -> Bits {
        bits_iter(set).fold(0, |acc, v| acc | self.adj[v]) & !set
    }

    /// Returns false when part `p` can no longer become connected.
    fn part_viable(&self, p: usize) -> (bool, bool) {
        let set = self.parts[p];
        let first = set & set.wrapping_neg();
        let mut piece = first;
        loop {
            let grown = piece | (self.neighbourhood(piece) & set);
            if grown == piece {
                break;
            }
            piece = grown;
        }
        let open = |s: Bits| self.neighbourhood(s) & self.unassigned != 0;
        if piece == set {
            (true, !open(set))
        } else {
            // Several pieces: each must still be able to grow.
            let mut rest = set;
            while rest != 0 {
                let seed = rest & rest.wrapping_neg();
                let mut pc = seed;
                loop {
                    let grown = pc | (self.neighbourhood(pc) & set);
                    if grown == pc {
                        break;
                    }
                    pc = grown;
                }
                if !open(pc) {
                    return (false, false);
                }
                rest &= !pc;
            }
            (true, false)
        }
    }

    fn quotient_degree(&self, p: usize) -> usize {
        let nb = self.neighbourhood(self.parts[p]);
        let mut seen: u32 = 0;
        for v in bits_iter(nb) {
            seen |= 1 << self.part_of[v];
        }
        seen.count_ones() as usize
    }

    fn viable(&self) -> bool {
        let mut closed_degrees = Vec::new();
        for p in 0..self.parts.len() {
            let (ok, closed) = self.part_viable(p);
            if !ok {
                return false;
            }
            if closed {
                closed_degrees.push(self.quotient_degree(p));
            }
        }
        // Closed parts have final quotient degree; they must be able to host
        // the lowest-degree pattern vertices.
        closed_degrees.sort_unstable();
        closed_degrees
            .iter()
            .zip(&self.pattern_degrees)
            .all(|(have, need)| have >= need)
    }

    fn leaf(&mut self) -> bool {
        let h = self.h;
        let mut quot = vec![0u32; h];
        for p in 0..h {
            for v in bits_iter(self.neighbourhood(self.parts[p])) {
                quot[p] |= 1 << self.part_of[v];
            }
        }
        let pattern = self.pattern;
        let hit = self
            .memo
            .entry(quot.clone())
            .or_insert_with(|| spanning_embedding(pattern, &quot))
            .clone();
        if let Some(map) = hit {
            self.found = Some((0..h).map(|x| self.parts[map[x]]).collect());
            true
        } else {
            false
        }
    }

    fn go(&mut self, idx: usize) -> bool {
        if idx == self.n {
            return self.parts.len() == self.h && self.leaf();
        }
        let remaining = self.n - idx;
        if self.h - self.parts.len() > remaining {
            return false;
        }
        let v = self.order[idx];
        self.unassigned &= !bit(v);
        // Existing parts adjacent to v first, then a fresh part, then the rest.
        let mut choices: Vec<usize> = Vec::with_capacity(self.parts.len() + 1);
        for p in 0..self.parts.len() {
            if self.parts[p] & self.adj[v] != 0 {
                choices.push(p);
            }
        }
        if self.parts.len() < self.h {
            choices.push(usize::MAX);
        }
        for p in 0..self.parts.len() {
            if self.parts[p] & self.adj[v] == 0 {
                choices.push(p);
            }
        }
        for p in choices {
            let fresh = p == usize::MAX;
            let p = if fresh {
                self.parts.push(0);
                self.parts.len() - 1
            } else {
                p
            };
            self.parts[p] |= bit(v);
            self.part_of[v] = p;
            if self.viable() && self.go(idx + 1) {
                return true;
            }
            self.parts[p] &= !bit(v);
            self.part_of[v] = usize::MAX;
            if fresh {
                self.parts.pop();
            }
        }
        self.unassigned |= bit(v);
        false
    }
}

/// A host under reduction, remembering which original vertices each
/// current vertex stands for.
#[derive(Clone)]
struct Reduced {
    graph: Graph,
    origin: Vec<Vec<Vertex>>,
}

impl Reduced {
    fn induced(&self, s: &VertexSet) -> Reduced {
        let (graph, remap) = self.graph.induced_subgraph(s).expect("members in range");
        let origin = remap
            .new_to_old
            .iter()
            .map(|olds| olds.iter().flat_map(|&o| self.origin[o].iter().copied()).collect())
            .collect();
        Reduced { graph, origin }
    }
}

/// Structural facts about the pattern that decide which host reductions
/// are sound.
struct PatternInfo {
    n: usize,
    min_degree: usize,
    two_connected: bool,
}

fn reduce_host(info: &PatternInfo, host: Reduced, out: &mut Vec<Reduced>) {
    let mut cur = host;
    loop {
        let g = &cur.graph;
        if info.min_degree >= 2 {
            // A vertex of degree ≤ 1 can be dropped from any model whose
            // pattern has minimum degree two.
            if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
                let keep: VertexSet = g.vertices().filter(|&w| w != v).collect();
                cur = cur.induced(&keep);
                continue;
            }
        }
        if info.min_degree >= 3 {
            // A degree-2 vertex is never a singleton branch set, so it can
            // be merged into a neighbour.
            if let Some(v) = g.vertices().find(|&v| g.degree(v) == 2) {
                let u = g.neighbors(v)[0];
                let (graph, remap) = g.contract_edge(u, v).expect("adjacent");
                let origin = remap
                    .new_to_old
                    .iter()
                    .map(|olds| olds.iter().flat_map(|&o| cur.origin[o].iter().copied()).collect())
                    .collect();
                cur = Reduced { graph, origin };
                continue;
            }
        }
        break;
    }
    for comp in cur.graph.connected_components() {
        if comp.len() < info.n {
            continue;
        }
        let part = if comp.len() == cur.graph.n() { cur.clone() } else { cur.induced(&comp) };
        if info.two_connected {
            let bl = blocks(&part.graph);
            if bl.len() > 1 {
                for b in bl {
                    if b.len() >= info.n {
                        reduce_host(info, part.induced(&b), out);
                    }
                }
                continue;
            }
        }
        out.push(part);
    }
}

fn has_clique(g: &Graph, size: usize) -> Option<Vec<Vertex>> {
    if size == 0 {
        return Some(Vec::new());
    }
    fn grow(g: &Graph, size: usize, clique: &mut Vec<Vertex>, cands: Vec<Vertex>) -> bool {
        if clique.len() == size {
            return true;
        }
        if clique.len() + cands.len() < size {
            return false;
        }
        for (idx, &v) in cands.iter().enumerate() {
            if g.degree(v) + 1 < size {
                continue;
            }
            let next: Vec<Vertex> = cands[idx + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            clique.push(v);
            if grow(g, size, clique, next) {
                return true;
            }
            clique.pop();
        }
        false
    }
    let mut clique = Vec::new();
    let cands: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) + 1 >= size).collect();
    grow(g, size, &mut clique, cands).then_some(clique)
}

fn search_connected_host(pattern: &Graph, host: &Reduced) -> Option<Vec<VertexSet>> {
    if host.graph.n() < pattern.n() || host.graph.num_edges() < pattern.num_edges() {
        return None;
    }
    let mut s = PartitionSearch::new(pattern, &host.graph);
    if s.go(0) {
        let parts = s.found.unwrap();
        Some(
            parts
                .into_iter()
                .map(|b| bits_iter(b).flat_map(|v| host.origin[v].iter().copied()).collect())
                .collect(),
        )
    } else {
        None
    }
}

/// Minor search with size limits. Trivial rejections and the clique fast
/// path run before any limit is consulted; the exhaustive search refuses
/// host components (after reduction) larger than `limits.max_host`.
pub fn find_minor_model_limited(h: &Graph, g: &Graph, limits: &SearchLimits) -> Result<Option<MinorModel>> {
    let p = h.n();
    if p == 0 {
        return Ok(Some(MinorModel { branch_sets: Vec::new() }));
    }
    if p > limits.max_pattern.min(32) {
        return Err(Error::Refused(format!(
            "pattern has {p} vertices, limit is {}",
            limits.max_pattern.min(32)
        )));
    }
    if g.n() < p || g.num_edges() < h.num_edges() || g.cycle_rank() < h.cycle_rank() {
        return Ok(None);
    }
    if let Some(clique) = has_clique(g, p) {
        return Ok(Some(MinorModel {
            branch_sets: clique.into_iter().map(|v| VertexSet::from([v])).collect(),
        }));
    }

    let h_comps = h.connected_components();
    if h_comps.len() == 1 {
        let info = PatternInfo {
            n: p,
            min_degree: h.min_degree(),
            two_connected: p >= 3 && h.is_i_connected(2),
        };
        let mut hosts = Vec::new();
        reduce_host(
            &info,
            Reduced {
                graph: g.clone(),
                origin: g.vertices().map(|v| vec![v]).collect(),
            },
            &mut hosts,
        );
        let cap = limits.max_host.min(BITSET_CAP);
        if let Some(big) = hosts.iter().find(|r| r.graph.n() > cap) {
            return Err(Error::Refused(format!(
                "host component has {} vertices, limit is {cap}",
                big.graph.n()
            )));
        }
        for host in &hosts {
            if let Some(parts) = search_connected_host(h, host) {
                return Ok(Some(finish_model(h, g, parts)));
            }
        }
        return Ok(None);
    }

    // Disconnected pattern: distribute pattern components over host
    // components and search each host component for the union it receives.
    let g_comps: Vec<VertexSet> = g
        .connected_components()
        .into_iter()
        .filter(|c| c.len() >= h_comps.iter().map(VertexSet::len).min().unwrap_or(0))
        .collect();
    let cap = limits.max_host.min(BITSET_CAP);
    if let Some(big) = g_comps.iter().find(|c| c.len() > cap) {
        return Err(Error::Refused(format!(
            "host component has {} vertices, limit is {cap}",
            big.len()
        )));
    }
    let t = h_comps.len();
    let s = g_comps.len();
    if s == 0 {
        return Ok(None);
    }
    let mut assign = vec![0usize; t];
    loop {
        if let Some(branch_sets) = search_assignment(h, g, &h_comps, &g_comps, &assign) {
            let model = MinorModel { branch_sets };
            debug_assert!(validate_minor_model(h, g, &model).is_ok());
            return Ok(Some(model));
        }
        // next assignment (odometer)
        let mut i = 0;
        loop {
            if i == t {
                return Ok(None);
            }
            assign[i] += 1;
            if assign[i] < s {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Searches every host component for the union of the pattern components
/// assigned to it.
fn search_assignment(
    h: &Graph,
    g: &Graph,
    h_comps: &[VertexSet],
    g_comps: &[VertexSet],
    assign: &[usize],
) -> Option<Vec<VertexSet>> {
    let mut branch_sets = vec![VertexSet::new(); h.n()];
    for (c, comp) in g_comps.iter().enumerate() {
        let union: VertexSet = (0..h_comps.len())
            .filter(|&i| assign[i] == c)
            .flat_map(|i| h_comps[i].iter())
            .collect();
        if union.is_empty() {
            continue;
        }
        if union.len() > comp.len() {
            return None;
        }
        let (sub_h, h_remap) = h.induced_subgraph(&union).expect("in range");
        let host = Reduced {
            graph: g.induced_subgraph(comp).expect("in range").0,
            origin: comp.iter().map(|v| vec![v]).collect(),
        };
        let sets = search_connected_host(&sub_h, &host)?;
        for (new_x, set) in sets.into_iter().enumerate() {
            branch_sets[h_remap.new_to_old[new_x][0]] = set;
        }
    }
    Some(branch_sets)
}

/// The partition search returns branch sets that cover reduced hosts;
/// they are already valid models in `g`.
fn finish_model(h: &Graph, g: &Graph, parts: Vec<VertexSet>) -> MinorModel {
    let model = MinorModel { branch_sets: parts };
    debug_assert!(validate_minor_model(h, g, &model).is_ok(), "search produced an invalid model");
    model
}

/// Exact minor search. Returns a validated model iff `h` is a minor of `g`.
///
/// # Panics
/// Panics if a connected piece of the host that survives reduction has more
/// than 128 vertices; use [`find_minor_model_limited`] for a refusal instead.
pub fn find_minor_model(h: &Graph, g: &Graph) -> Option<MinorModel> {
    find_minor_model_limited(h, g, &SearchLimits::unbounded()).expect("instance exceeds the search capacity")
}

// ---------------------------------------------------------------------------
// Topological minor search
// ---------------------------------------------------------------------------

struct TopoSearch<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<Vertex>,
    phi: Vec<Option<Vertex>>,
    used: Vec<bool>,
    /// Pattern edges at each pattern vertex that are not routed yet.
    pending: Vec<usize>,
    paths: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
    branch_of: Vec<Option<Vertex>>,
    /// For pattern leaves: index in `order` of the previous leaf sharing the
    /// same neighbour, used to break symmetry.
    twin_of: Vec<Option<Vertex>>,
}

impl<'a> TopoSearch<'a> {
    fn new(h: &'a Graph, g: &'a Graph) -> Self {
        let p = h.n();
        let is_leaf = |x: Vertex| h.degree(x) == 1 && h.degree(h.neighbors(x)[0]) >= 2;
        let mut order = Vec::with_capacity(p);
        let mut placed = vec![false; p];
        loop {
            let linked = |x: Vertex, placed: &Vec<bool>| h.neighbors(x).iter().filter(|&&y| placed[y]).count();
            let next = (0..p)
                .filter(|&x| !placed[x] && !is_leaf(x) && h.degree(x) > 0)
                .max_by_key(|&x| (linked(x, &placed) > 0, linked(x, &placed), h.degree(x), std::cmp::Reverse(x)));
            match next {
                Some(x) => {
                    placed[x] = true;
                    order.push(x);
                }
                None => break,
            }
        }
        let mut leaves: Vec<Vertex> = (0..p).filter(|&x| is_leaf(x)).collect();
        leaves.sort_by_key(|&x| (h.neighbors(x)[0], x));
        let mut twin_of = vec![None; p];
        for w in leaves.windows(2) {
            if h.neighbors(w[0])[0] == h.neighbors(w[1])[0] {
                twin_of[w[1]] = Some(w[0]);
            }
        }
        order.extend(leaves.iter().copied());
        let isolated: Vec<Vertex> = (0..p).filter(|&x| h.degree(x) == 0).collect();
        for w in isolated.windows(2) {
            twin_of[w[1]] = Some(w[0]);
        }
        order.extend(isolated);
        TopoSearch {
            h,
            g,
            order,
            phi: vec![None; p],
            used: vec![false; g.n()],
            pending: (0..p).map(|x| h.degree(x)).collect(),
            paths: BTreeMap::new(),
            branch_of: vec![None; g.n()],
            twin_of,
        }
    }

    /// Neighbours of `phi(y)` still available for a pending edge at `y`:
    /// unused vertices, or branch vertices of pattern neighbours whose edge to
    /// `y` is not routed yet.
    fn usable_neighbours(&self, y: Vertex, v: Vertex) -> usize {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&&w| {
                !self.used[w]
                    || self.branch_of[w].is_some_and(|x| {
                        self.h.has_edge(x, y) && !self.paths.contains_key(&(x.min(y), x.max(y)))
                    })
            })
            .count()
    }

    fn feasible(&self) -> bool {
        self.feasible_routing(&[])
    }

    /// Like `feasible`, but the pattern vertices in `routing` are endpoints of
    /// a path under construction, which already used one of their free
    /// neighbours for an edge still counted as pending.
    fn feasible_routing(&self, routing: &[Vertex]) -> bool {
        (0..self.h.n()).all(|x| match self.phi[x] {
            Some(v) => {
                let slack = usize::from(routing.contains(&x));
                self.pending[x] == 0 || self.usable_neighbours(x, v) + slack >= self.pending[x]
            }
            None => true,
        })
    }

    fn record(&mut self, x: Vertex, y: Vertex, path: Vec<Vertex>) {
        let key = (x.min(y), x.max(y));
        let path = if x <= y { path } else { path.into_iter().rev().collect() };
        self.paths.insert(key, path);
        self.pending[x] -= 1;
        self.pending[y] -= 1;
    }

    fn unrecord(&mut self, x: Vertex, y: Vertex) {
        self.paths.remove(&(x.min(y), x.max(y)));
        self.pending[x] += 1;
        self.pending[y] += 1;
    }

    fn go(&mut self, t: usize) -> bool {
        if t == self.order.len() {
            return true;
        }
        let x = self.order[t];
        let need = self.h.degree(x);
        let placed_nbrs: Vec<Vertex> = self
            .h
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| self.phi[y].is_some())
            .collect();
        let floor = self.twin_of[x].and_then(|tw| self.phi[tw]);
        if placed_nbrs.is_empty() {
            for w in self.g.vertices() {
                if self.used[w] || self.g.degree(w) < need || floor.is_some_and(|f| w <= f) {
                    continue;
                }
                self.place(x, w);
                if self.feasible() && self.go(t + 1) {
                    return true;
                }
                self.unplace(x, w);
            }
            return false;
        }
        let y0 = placed_nbrs[0];
        let start = self.phi[y0].unwrap();
        if need == 1 {
            // A leaf can always be pulled back to the first vertex of its path.
            for &w in self.g.neighbors(start) {
                if self.used[w] || floor.is_some_and(|f| w <= f) {
                    continue;
                }
                self.place(x, w);
                self.record(y0, x, vec![start, w]);
                if self.feasible() && self.go(t + 1) {
                    return true;
                }
                self.unrecord(y0, x);
                self.unplace(x, w);
            }
            return false;
        }
        let mut path = vec![start];
        self.extend_to_branch(t, x, y0, &placed_nbrs[1..], &mut path)
    }

    /// Grows a path from the image of `y0` through unused vertices; every
    /// vertex reached with enough degree is tried as the image of `x`.
    fn extend_to_branch(&mut self, t: usize, x: Vertex, y0: Vertex, rest: &[Vertex], path: &mut Vec<Vertex>) -> bool {
        let tip = *path.last().unwrap();
        let nbrs: Vec<Vertex> = self.g.neighbors(tip).to_vec();
        for w in nbrs {
            if self.used[w] {
                continue;
            }
            path.push(w);
            if self.g.degree(w) >= self.h.degree(x) {
                self.place(x, w);
                self.record(y0, x, path.clone());
                if self.feasible() && self.route(t, x, rest) {
                    return true;
                }
                self.unrecord(y0, x);
                self.unplace(x, w);
            }
            // w as an interior vertex of the path
            self.used[w] = true;
            if self.feasible_routing(&[y0]) && self.extend_to_branch(t, x, y0, rest, path) {
                return true;
            }
            self.used[w] = false;
            path.pop();
        }
        false
    }

    /// Routes the remaining edges from `x` to already placed neighbours,
    /// then continues with the next pattern vertex.
    fn route(&mut self, t: usize, x: Vertex, rest: &[Vertex]) -> bool {
        let Some((&y, tail)) = rest.split_first() else {
            return self.go(t + 1);
        };
        let from = self.phi[x].unwrap();
        let to = self.phi[y].unwrap();
        let mut path = vec![from];
        self.route_path(t, x, y, tail, to, &mut path)
    }

    fn route_path(&mut self, t: usize, x: Vertex, y: Vertex, tail: &[Vertex], to: Vertex, path: &mut Vec<Vertex>) -> bool {
        let tip = *path.last().unwrap();
        let nbrs: Vec<Vertex> = self.g.neighbors(tip).to_vec();
        for w in nbrs {
            if w == to {
                path.push(w);
                self.record(x, y, path.clone());
                if self.feasible() && self.route(t, x, tail) {
                    return true;
                }
                self.unrecord(x, y);
                path.pop();
                continue;
            }
            if self.used[w] {
                continue;
            }
            self.used[w] = true;
            path.push(w);
            let found = self.feasible_routing(&[x, y]) && self.route_path(t, x, y, tail, to, path);
            path.pop();
            self.used[w] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn place(&mut self, x: Vertex, w: Vertex) {
        self.phi[x] = Some(w);
        self.used[w] = true;
        self.branch_of[w] = Some(x);
    }

    fn unplace(&mut self, x: Vertex, w: Vertex) {
        self.phi[x] = None;
        self.used[w] = false;
        self.branch_of[w] = None;
    }
}

fn degree_dominated(h: &Graph, g: &Graph) -> bool {
    let hd = h.degree_sequence();
    let gd = g.degree_sequence();
    hd.len() <= gd.len() && hd.iter().zip(&gd).all(|(a, b)| a <= b)
}

pub fn find_topo_model_limited(h: &Graph, g: &Graph, limits: &SearchLimits) -> Result<Option<TopoMinorModel>> {
    let p = h.n();
    if p == 0 {
        return Ok(Some(TopoMinorModel {
            branch_vertices: Vec::new(),
            paths: BTreeMap::new(),
        }));
    }
    if p > limits.max_pattern {
        return Err(Error::Refused(format!("pattern has {p} vertices, limit is {}", limits.max_pattern)));
    }
    if g.n() < p || g.num_edges() < h.num_edges() || g.cycle_rank() < h.cycle_rank() || !degree_dominated(h, g) {
        return Ok(None);
    }
    if let Some(clique) = has_clique(g, p) {
        let mut paths = BTreeMap::new();
        for (x, y) in h.edges() {
            paths.insert((x, y), vec![clique[x], clique[y]]);
        }
        return Ok(Some(TopoMinorModel {
            branch_vertices: clique,
            paths,
        }));
    }
    if let Some(big) = g.connected_components().iter().find(|c| c.len() > limits.max_host) {
        return Err(Error::Refused(format!(
            "host component has {} vertices, limit is {}",
            big.len(),
            limits.max_host
        )));
    }
    let mut s = TopoSearch::new(h, g);
    if s.go(0) {
        let model = TopoMinorModel {
            branch_vertices: s.phi.iter().map(|v| v.unwrap()).collect(),
            paths: s.paths,
        };
        debug_assert!(validate_topo_model(h, g, &model).is_ok(), "search produced an invalid model");
        Ok(Some(model))
    } else {
        Ok(None)
    }
}

/// Exact topological-minor search; returns a validated model iff one exists.
pub fn find_topo_model(h: &Graph, g: &Graph) -> Option<TopoMinorModel> {
    let limits = SearchLimits {
        max_host: usize::MAX,
        max_pattern: usize::MAX,
        max_nodes: u64::MAX,
    };
    find_topo_model_limited(h, g, &limits).expect("unbounded search cannot refuse")
}

// ---------------------------------------------------------------------------
// Containment helpers
// ---------------------------------------------------------------------------

/// Whether `h ⪯ g` under `rel`, within `limits`. Topological containment is
/// only searched for once ordinary minor containment holds.
pub fn contains(h: &Graph, g: &Graph, rel: Relation, limits: &SearchLimits) -> Result<bool> {
    let minor = find_minor_model_limited(h, g, limits)?.is_some();
    match rel {
        Relation::Minor => Ok(minor),
        Relation::TopologicalMinor => {
            if !minor {
                return Ok(false);
            }
            Ok(find_topo_model_limited(h, g, limits)?.is_some())
        }
    }
}

/// A containment certificate for `h` in `g` under `rel`, if one exists.
pub fn find_model(h: &Graph, g: &Graph, rel: Relation, limits: &SearchLimits) -> Result<Option<Model>> {
    Ok(match rel {
        Relation::Minor => find_minor_model_limited(h, g, limits)?.map(Model::Minor),
        Relation::TopologicalMinor => find_topo_model_limited(h, g, limits)?.map(Model::Topological),
    })
}

fn check_family(fam: &[Graph]) -> Result<()> {
    if fam.is_empty() {
        return Err(Error::Input("the family is empty".into()));
    }
    if fam.iter().any(Graph::is_empty) {
        return Err(Error::Input("family members must be non-empty".into()));
    }
    Ok(())
}

/// Whether some family member is contained in `g`.
pub fn family_contains_with(fam: &[Graph], g: &Graph, rel: Relation, limits: &SearchLimits) -> Result<bool> {
    check_family(fam)?;
    for h in fam {
        if contains(h, g, rel, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn family_contains(fam: &[Graph], g: &Graph, rel: Relation) -> Result<bool> {
    family_contains_with(fam, g, rel, &SearchLimits::default())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// A smallest `S` with `|S| ≤ budget` such that no family member is
/// contained in `g \ S`, searching sizes in increasing order.
pub fn deletion_number(
    fam: &[Graph],
    g: &Graph,
    rel: Relation,
    budget: usize,
    limits: &SearchLimits,
) -> Result<Option<VertexSet>> {
    check_family(fam)?;
    let n = g.n();
    let budget = budget.min(n);
    let candidates = binomial(n, budget);
    if candidates > limits.max_nodes as u128 {
        return Err(Error::Refused(format!(
            "C({n}, {budget}) = {candidates} deletion candidates exceed the node limit {}",
            limits.max_nodes
        )));
    }
    for size in 0..=budget {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let s: VertexSet = idx.iter().copied().collect();
            let (rest, _) = g.remove_vertices(&s)?;
            if !family_contains_with(fam, &rest, rel, limits)? {
                return Ok(Some(s));
            }
            // next combination in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in (i + 1)..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Containment-preserving host reductions
// ---------------------------------------------------------------------------

/// Cut-components of `(C, g, s)` for every component `C` of `g \ s`: each is
/// `g[V(C) ∪ s]`. When `h` is `i`-connected and `|s| < i`, `h ⪯ g` holds iff
/// `h` is contained in one of them.
pub fn separator_reduce(h: &Graph, g: &Graph, s: &VertexSet, i: usize) -> Result<Vec<Graph>> {
    if !h.is_i_connected(i) {
        return Err(Error::Input(format!("pattern is not {i}-connected")));
    }
    if s.len() + 1 > i {
        return Err(Error::Input(format!("separator has {} vertices, at most {} allowed", s.len(), i - 1)));
    }
    let (rest, remap) = g.remove_vertices(s)?;
    let comps = rest.connected_components();
    if comps.is_empty() {
        return Ok(vec![g.induced_subgraph(s)?.0]);
    }
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps {
        let mut members: VertexSet = comp.iter().map(|v| remap.new_to_old[v][0]).collect();
        members.extend(s.iter());
        out.push(g.induced_subgraph(&members)?.0);
    }
    Ok(out)
}

/// Removes the component `part` of `g \ {v}` when no leaf block of `h` fits
/// into `g[part ∪ {v}]`; containment of `h` is unchanged.
pub fn leaf_block_prune(
    h: &Graph,
    g: &Graph,
    v: Vertex,
    part: &VertexSet,
    rel: Relation,
) -> Result<(Graph, crate::graph::Remap)> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange(v, g.n()).into());
    }
    let (without, remap) = g.remove_vertices(&VertexSet::from([v]))?;
    let comps = without.connected_components();
    if comps.len() < 2 {
        return Err(Error::Input(format!("vertex {v} is not a cut vertex")));
    }
    let is_component = comps.iter().any(|c| {
        let orig: VertexSet = c.iter().map(|w| remap.new_to_old[w][0]).collect();
        &orig == part
    });
    if !is_component {
        return Err(Error::Input("part is not a component of g minus the cut vertex".into()));
    }
    let tree = block_cut_tree(h)?;
    let mut side = part.clone();
    side.insert(v);
    let (side_graph, _) = g.induced_subgraph(&side)?;
    let limits = SearchLimits::unbounded();
    for b in tree.leaf_blocks() {
        let (block, _) = h.induced_subgraph(&tree.blocks[b])?;
        if contains(&block, &side_graph, rel, &limits)? {
            return Err(Error::Input(format!(
                "leaf block {} of the pattern fits into the pruned side",
                tree.blocks[b]
            )));
        }
    }
    Ok(g.remove_vertices(part)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::named;

    fn is_minor(h: &Graph, g: &Graph) -> bool {
        match find_minor_model(h, g) {
            Some(m) => {
                validate_minor_model(h, g, &m).unwrap();
                true
            }
            None => false,
        }
    }

    fn is_tm(h: &Graph, g: &Graph) -> bool {
        match find_topo_model(h, g) {
            Some(m) => {
                validate_topo_model(h, g, &m).unwrap();
                true
            }
            None => false,
        }
    }

    #[test]
    fn minor_examples() {
        assert!(is_minor(&path(3), &cycle(3)));
        assert!(is_minor(&star(3), &complete(4)));
        assert!(!is_minor(&complete(4), &named::banner()));
        assert!(is_minor(&paw(), &named::banner()));
        assert!(is_minor(&complete(4), &grid(3, 3)));
        assert!(!is_minor(&complete(5), &grid(4, 4)));
        assert!(!is_minor(&complete_bipartite(3, 3), &grid(3, 3)));
    }

    #[test]
    fn disconnected_patterns() {
        let two_edges = path(2).disjoint_union(&path(2));
        assert!(is_minor(&two_edges, &path(4)));
        assert!(!is_minor(&two_edges, &path(3)));
        assert!(is_minor(&Graph::new(3), &path(3)));
        assert!(!is_minor(&cycle(3).disjoint_union(&cycle(3)), &named::butterfly()));
        assert!(is_minor(&cycle(3).disjoint_union(&path(2)), &named::butterfly()));
    }

    #[test]
    fn topological_examples() {
        assert!(is_tm(&cycle(4), &cycle(5)));
        assert!(is_tm(&star(4), &grid(3, 3)));
        assert!(!is_tm(&star(5), &grid(3, 3)));
        assert!(is_tm(&star(3), &complete(4)));
        assert!(is_tm(&complete(4), &complete(4)));
        // K4 is a minor but not a topological minor of the 3-prism? It is a
        // topological minor; the cube contains K4 as a minor but only
        // subcubic subdivisions, so K4 (cubic) still fits.
        let mut petersen = Graph::new(10);
        for i in 0..5 {
            petersen.add_edge(i, (i + 1) % 5);
            petersen.add_edge(i, i + 5);
            petersen.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert!(is_tm(&complete(4), &petersen));
        assert!(!is_tm(&complete(5), &petersen));
        assert!(is_minor(&complete(5), &petersen));
        assert!(!is_tm(&named::cricket(), &named::banner()));
    }

    #[test]
    fn validation_reports_problems() {
        let h = path(2);
        let g = path(3);
        let overlap = MinorModel {
            branch_sets: vec![[0, 1].into(), [1, 2].into()],
        };
        assert!(matches!(
            validate_minor_model(&h, &g, &overlap),
            Err(ModelViolation::Overlap { .. })
        ));
        let gap = MinorModel {
            branch_sets: vec![[0].into(), [2].into()],
        };
        assert_eq!(validate_minor_model(&h, &g, &gap), Err(ModelViolation::MissingEdge(0, 1)));
        let split = MinorModel {
            branch_sets: vec![[0, 2].into(), [1].into()],
        };
        assert_eq!(
            validate_minor_model(&h, &g, &split),
            Err(ModelViolation::DisconnectedBranchSet(0))
        );

        // paw inside banner: merge two cycle vertices away from the pendant.
        let paw_model = MinorModel {
            branch_sets: vec![[0].into(), [1, 2].into(), [3].into(), [4].into()],
        };
        assert_eq!(validate_minor_model(&paw(), &named::banner(), &paw_model), Ok(()));

        let mut paths = BTreeMap::new();
        paths.insert((0, 1), vec![0, 1, 2]);
        let tm = TopoMinorModel {
            branch_vertices: vec![0, 2],
            paths: paths.clone(),
        };
        assert_eq!(validate_topo_model(&h, &g, &tm), Ok(()));
        let tm_bad = TopoMinorModel {
            branch_vertices: vec![0, 1],
            paths,
        };
        assert!(validate_topo_model(&h, &g, &tm_bad).is_err());
    }

    #[test]
    fn model_text_round_trip() {
        let m = find_minor_model(&complete(4), &grid(3, 3)).unwrap();
        let text = Model::Minor(m.clone()).to_text();
        assert!(text.starts_with("branch 0:"));
        assert_eq!(Model::from_text(&text, Relation::Minor).unwrap(), Model::Minor(m));
        let t = find_topo_model(&cycle(4), &cycle(5)).unwrap();
        let text = Model::Topological(t.clone()).to_text();
        assert!(text.contains("path 0-1:"));
        assert_eq!(
            Model::from_text(&text, Relation::TopologicalMinor).unwrap(),
            Model::Topological(t)
        );
    }

    #[test]
    fn family_containment() {
        let planar_killers = vec![complete(5), complete_bipartite(3, 3)];
        assert!(!family_contains(&planar_killers, &grid(4, 4), Relation::Minor).unwrap());
        assert!(family_contains(&[path(2)], &cycle(3), Relation::TopologicalMinor).unwrap());
        assert!(!family_contains(&[cycle(3)], &star(5), Relation::Minor).unwrap());
        assert!(family_contains(&[], &cycle(3), Relation::Minor).is_err());
    }

    #[test]
    fn deletion_numbers() {
        let limits = SearchLimits::default();
        for rel in [Relation::Minor, Relation::TopologicalMinor] {
            let s = deletion_number(&[path(2)], &path(3), rel, 1, &limits).unwrap();
            assert_eq!(s, Some(VertexSet::from([1])));
        }
        let s = deletion_number(&[cycle(3)], &complete(4), Relation::Minor, 2, &limits).unwrap();
        assert_eq!(s.map(|s| s.len()), Some(2));
        assert_eq!(
            deletion_number(&[cycle(3)], &complete(4), Relation::Minor, 1, &limits).unwrap(),
            None
        );
        assert_eq!(
            deletion_number(&[cycle(3)], &path(5), Relation::Minor, 0, &limits).unwrap(),
            Some(VertexSet::new())
        );
        let tight = SearchLimits { max_nodes: 10, ..limits };
        assert!(matches!(
            deletion_number(&[cycle(3)], &complete(8), Relation::Minor, 4, &tight),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn separator_reduction_examples() {
        let g = complete(4);
        let parts = separator_reduce(&complete(4), &g, &VertexSet::new(), 3).unwrap();
        assert_eq!(parts, vec![g.clone()]);

        // Two K4s glued at vertex 0.
        let mut two = complete(4).disjoint_union(&complete(3));
        for v in 4..7 {
            two.add_edge(0, v);
        }
        let parts = separator_reduce(&complete(4), &two, &VertexSet::from([0]), 3).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| is_minor(&complete(4), p)));

        // C4 with a pendant path; only the cycle side holds C4.
        let mut g = cycle(4);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(0, a);
        g.add_edge(a, b);
        let parts = separator_reduce(&cycle(4), &g, &VertexSet::from([0]), 2).unwrap();
        let hits: Vec<bool> = parts.iter().map(|p| is_minor(&cycle(4), p)).collect();
        assert_eq!(hits.iter().filter(|&&x| x).count(), 1);

        assert!(separator_reduce(&path(3), &g, &VertexSet::new(), 2).is_err());
        assert!(separator_reduce(&cycle(4), &g, &VertexSet::from([0, 1]), 2).is_err());
    }

    #[test]
    fn leaf_block_prune_examples() {
        // Banner plus a pendant path of length two at cycle vertex 2.
        let mut g = named::banner();
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(2, a);
        g.add_edge(a, b);
        // The banner's pendant edge fits into the path, so pruning is refused.
        assert!(leaf_block_prune(&named::banner(), &g, 2, &VertexSet::from([a, b]), Relation::Minor).is_err());

        // C4 with an extra tree hanging off; leaf block C4 cannot fit in a tree.
        let mut g = cycle(4);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(1, a);
        g.add_edge(1, b);
        let (pruned, _) = leaf_block_prune(&cycle(4), &g, 1, &VertexSet::from([a]), Relation::TopologicalMinor).unwrap();
        assert!(is_tm(&cycle(4), &pruned));

        // K4 with a triangle hanging off vertex 0.
        let mut g = complete(4);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(0, a);
        g.add_edge(0, b);
        g.add_edge(a, b);
        let (pruned, _) = leaf_block_prune(&complete(4), &g, 0, &VertexSet::from([a, b]), Relation::Minor).unwrap();
        assert!(is_minor(&complete(4), &pruned));
        assert!(leaf_block_prune(&complete(4), &g, 1, &VertexSet::from([a, b]), Relation::Minor).is_err());
    }

    #[test]
    fn limits_parse() {
        let l = SearchLimits::parse("n=12, h=5,nodes=99").unwrap();
        assert_eq!((l.max_host, l.max_pattern, l.max_nodes), (12, 5, 99));
        assert!(SearchLimits::parse("q=1").is_err());
        assert!(SearchLimits::parse("n=x").is_err());
        let tight = SearchLimits::parse("n=5").unwrap();
        assert!(matches!(
            find_minor_model_limited(&cycle(5), &grid(3, 3), &tight),
            Err(Error::Refused(_))
        ));
    }
}
