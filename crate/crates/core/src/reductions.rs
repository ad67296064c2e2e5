//! Gadget constructions: k×k Permutation Independent Set instances compiled
//! into framework graphs (plain and enhanced per forbidden-graph case), the
//! Vertex Cover reduction for connected families, and the maps between
//! solutions on both sides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, GraphError, Result};
use crate::family::{
    classify_case, essential_pair, hard_gene_payload, CaseLabel, EssentialPair, ThreeCutPayload,
};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::io::{content_lines, format_edge_list, parse_usizes};
use crate::minors::{contains, Relation, SearchLimits};

/// A grid cell `(row, column)`, 0-based.
pub type Cell = (usize, usize);
/// An instance edge with its endpoints in increasing order.
pub type PisEdge = (Cell, Cell);

// ---------------------------------------------------------------------------
// Permutation Independent Set instances
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PisInstance {
    pub k: usize,
    edges: BTreeSet<PisEdge>,
}

impl PisInstance {
    pub fn new(k: usize) -> Self {
        PisInstance {
            k,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(k: usize, edges: impl IntoIterator<Item = (Cell, Cell)>) -> Result<Self> {
        let mut inst = Self::new(k);
        for (a, b) in edges {
            inst.add_edge(a, b)?;
        }
        Ok(inst)
    }

    /// Adds `{a, b}`; returns whether it was new.
    pub fn add_edge(&mut self, a: Cell, b: Cell) -> Result<bool> {
        let k = self.k;
        for (i, j) in [a, b] {
            if i >= k || j >= k {
                return Err(Error::Input(format!("cell ({}, {}) outside the {k}x{k} grid", i + 1, j + 1)));
            }
        }
        if a == b {
            return Err(Error::Input("an instance edge needs two distinct cells".into()));
        }
        Ok(self.edges.insert((a.min(b), a.max(b))))
    }

    pub fn has_edge(&self, a: Cell, b: Cell) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Edges in lexicographic order (cells row-major); this is also the
    /// cyclic order used by the frameworks.
    pub fn edges(&self) -> Vec<PisEdge> {
        self.edges.iter().copied().collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Adds every same-row pair. This changes no solution, since a solution
    /// takes exactly one cell per row.
    pub fn normalize(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.k {
            for j1 in 0..self.k {
                for j2 in (j1 + 1)..self.k {
                    out.edges.insert(((i, j1), (i, j2)));
                }
            }
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize() == *self
    }

    /// `perm[i]` is the column chosen in row `i`.
    pub fn is_solution(&self, perm: &[usize]) -> bool {
        if perm.len() != self.k {
            return false;
        }
        let cols: BTreeSet<usize> = perm.iter().copied().collect();
        if cols.len() != self.k || cols.iter().any(|&j| j >= self.k) {
            return false;
        }
        for i1 in 0..self.k {
            for i2 in (i1 + 1)..self.k {
                if self.has_edge((i1, perm[i1]), (i2, perm[i2])) {
                    return false;
                }
            }
        }
        true
    }

    /// Format: `k` on the first line, then `i1 j1 i2 j2` per edge (1-based).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| GraphError::Parse { line: 1, msg: "missing k".into() })?;
        let k = match parse_usizes(hl, header)?[..] {
            [k] => k,
            _ => return Err(GraphError::Parse { line: hl, msg: "first line must hold k".into() }.into()),
        };
        let mut inst = Self::new(k);
        for (ln, line) in lines {
            let nums = parse_usizes(ln, line)?;
            let [i1, j1, i2, j2] = nums[..] else {
                return Err(GraphError::Parse { line: ln, msg: "edge lines must be `i1 j1 i2 j2`".into() }.into());
            };
            if [i1, j1, i2, j2].contains(&0) {
                return Err(GraphError::Parse { line: ln, msg: "cells are 1-based".into() }.into());
            }
            inst.add_edge((i1 - 1, j1 - 1), (i2 - 1, j2 - 1))
                .map_err(|e| GraphError::Parse { line: ln, msg: e.to_string() })?;
        }
        Ok(inst)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for ((i1, j1), (i2, j2)) in &self.edges {
            let _ = writeln!(out, "{} {} {} {}", i1 + 1, j1 + 1, i2 + 1, j2 + 1);
        }
        out
    }

    fn cross_row_pairs(k: usize) -> Vec<PisEdge> {
        let cells: Vec<Cell> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        for (x, &a) in cells.iter().enumerate() {
            for &b in &cells[x + 1..] {
                if a.0 != b.0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Normalized instance where each cross-row pair is an edge with
    /// probability `p`.
    pub fn random(k: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inst = Self::new(k).normalize();
        for (a, b) in Self::cross_row_pairs(k) {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                inst.edges.insert((a, b));
            }
        }
        inst
    }

    /// Normalized instance with exactly `m` edges in total (row edges
    /// included), the cross-row ones drawn uniformly.
    pub fn random_with_edges(k: usize, m: usize, seed: u64) -> Result<Self> {
        let base = Self::new(k).normalize();
        let pool = Self::cross_row_pairs(k);
        let rows = base.num_edges();
        if m < rows || m > rows + pool.len() {
            return Err(Error::Input(format!(
                "a normalized {k}x{k} instance has between {rows} and {} edges, not {m}",
                rows + pool.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut inst = base;
        for &(a, b) in pool.choose_multiple(&mut rng, m - rows) {
            inst.edges.insert((a, b));
        }
        Ok(inst)
    }
}

pub fn normalize_pis(inst: &PisInstance) -> PisInstance {
    inst.normalize()
}

fn cell_key((i, j): Cell) -> String {
    format!("({},{})", i + 1, j + 1)
}

fn edge_key((a, b): PisEdge) -> String {
    format!("e=({},{})", cell_key(a), cell_key(b))
}

// ---------------------------------------------------------------------------
// Framework parameters and index
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameworkParams {
    pub k: usize,
    pub m: usize,
    /// Smallest number of vertices of a family member.
    pub h: usize,
    /// Copies of `K_{h-1}` per B-gadget.
    pub n_h: usize,
    /// B-extra vertices per B-gadget.
    pub t_f: usize,
    /// B-gadget size `n_h (h-1) + 2 + t_F`.
    pub z: usize,
    /// Deletion budget `z (k-1) k m`.
    pub ell: usize,
    pub relation: Relation,
}

impl FrameworkParams {
    pub fn new(k: usize, m: usize, h: usize, relation: Relation, t_f: usize) -> Result<Self> {
        if h < 2 {
            return Err(Error::Input("family members need at least two vertices".into()));
        }
        if k == 0 {
            return Err(Error::Input("k must be positive".into()));
        }
        let n_h = match relation {
            Relation::Minor => 2,
            Relation::TopologicalMinor => h * (h - 1) / 2,
        };
        let z = n_h * (h - 1) + 2 + t_f;
        Ok(FrameworkParams {
            k,
            m,
            h,
            n_h,
            t_f,
            z,
            ell: z * (k - 1) * k * m,
            relation,
        })
    }
}

/// Which gadget a framework vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Owner {
    /// `B^e_{i,j}` as `(e, i, j)`.
    B(usize, usize, usize),
    /// The separator gadget `J^e`.
    J(usize),
}

#[derive(Clone, Debug)]
pub struct Framework {
    pub graph: Graph,
    pub params: FrameworkParams,
    /// The normalized instance this was built from.
    pub instance: PisInstance,
    /// Instance edges in cyclic order; position `e` maps to `(e + 1) mod m`.
    pub sigma: Vec<PisEdge>,
    pub case: CaseLabel,
    /// The forbidden graphs; witnesses certify `forbidden[witness_member]`.
    pub family: Vec<Graph>,
    pub witness_member: usize,
    names: Vec<String>,
    index: BTreeMap<String, Vertex>,
    aliases: BTreeMap<String, Vertex>,
    copies: BTreeMap<String, Vec<Vertex>>,
    owner: Vec<Owner>,
    /// `[e][i][j]` → all vertices of `B^e_{i,j}` (a, b, K copies, extras).
    b_gadgets: Vec<Vec<Vec<Vec<Vertex>>>>,
    j_gadgets: Vec<Vec<Vertex>>,
}

struct Builder {
    g: Graph,
    names: Vec<String>,
    index: BTreeMap<String, Vertex>,
    aliases: BTreeMap<String, Vertex>,
    copies: BTreeMap<String, Vec<Vertex>>,
    owner: Vec<Owner>,
}

impl Builder {
    fn add(&mut self, name: String, owner: Owner) -> Vertex {
        let v = self.g.add_vertex();
        assert!(self.index.insert(name.clone(), v).is_none(), "duplicate gadget name {name}");
        self.g.set_label(v, name.clone());
        self.names.push(name);
        self.owner.push(owner);
        v
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.g.add_edge(u, v);
    }

    /// Adds a copy of `pattern` whose vertices in `glue` are identified with
    /// existing vertices. New vertices are named `prefix[v=<label>]`.
    fn attach(
        &mut self,
        prefix: String,
        pattern: &Graph,
        labels: &[Vertex],
        glue: &[(Vertex, Vertex)],
        owner: Owner,
    ) -> Vec<Vertex> {
        let map: Vec<Vertex> = pattern
            .vertices()
            .map(|p| match glue.iter().find(|&&(x, _)| x == p) {
                Some(&(_, f)) => f,
                None => self.add(format!("{prefix}[v={}]", labels[p]), owner),
            })
            .collect();
        for (u, v) in pattern.edges() {
            self.edge(map[u], map[v]);
        }
        self.copies.insert(prefix, map.clone());
        map
    }
}

impl Framework {
    pub fn num_pis_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn pis_edge(&self, e: usize) -> PisEdge {
        self.sigma[e]
    }

    pub fn next(&self, e: usize) -> usize {
        (e + 1) % self.sigma.len()
    }

    pub fn prev(&self, e: usize) -> usize {
        (e + self.sigma.len() - 1) % self.sigma.len()
    }

    pub fn b_gadget(&self, e: usize, i: usize, j: usize) -> &[Vertex] {
        &self.b_gadgets[e][i][j]
    }

    /// All vertices of column `j` of `D^e`.
    pub fn column(&self, e: usize, j: usize) -> Vec<Vertex> {
        (0..self.params.k)
            .flat_map(|i| self.b_gadgets[e][i][j].iter().copied())
            .collect()
    }

    pub fn j_gadget(&self, e: usize) -> &[Vertex] {
        &self.j_gadgets[e]
    }

    pub fn a(&self, e: usize, i: usize, j: usize) -> Vertex {
        self.b_gadgets[e][i][j][0]
    }

    pub fn b(&self, e: usize, i: usize, j: usize) -> Vertex {
        self.b_gadgets[e][i][j][1]
    }

    pub fn c(&self, e: usize, j: usize) -> Vertex {
        self.j_gadgets[e][j]
    }

    pub fn r(&self, e: usize, i: usize) -> Vertex {
        self.j_gadgets[e][self.params.k + i]
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owner[v]
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    /// Looks a vertex up by canonical name or by role alias.
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).or_else(|| self.aliases.get(name)).copied()
    }

    /// Vertices of an attached copy, in the pattern's vertex order.
    pub fn copy(&self, prefix: &str) -> Option<&[Vertex]> {
        self.copies.get(prefix).map(Vec::as_slice)
    }

    pub fn edge_key(&self, e: usize) -> String {
        edge_key(self.sigma[e])
    }

    pub fn forbidden(&self) -> &Graph {
        &self.family[self.witness_member]
    }

    /// Line-oriented manifest: header, gadget names, then the edge list.
    pub fn manifest(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "case={} relation={} k={} m={} h={} n_h={} t_F={} z={} ell={}\n",
            self.case.name(),
            p.relation,
            p.k,
            p.m,
            p.h,
            p.n_h,
            p.t_f,
            p.z,
            p.ell
        );
        for (v, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "name {name} {v}");
        }
        for (alias, v) in &self.aliases {
            let _ = writeln!(out, "alias {alias} {v}");
        }
        out.push_str(&format_edge_list(&self.graph));
        out
    }
}

fn b_prefix(ek: &str, i: usize, j: usize) -> String {
    format!("[{ek}][i={},j={}]", i + 1, j + 1)
}

/// The plain framework with `t_F` unwired extras per B-gadget.
pub fn base_framework(inst: &PisInstance, params: FrameworkParams) -> Result<Framework> {
    let mut builder = Builder {
        g: Graph::new(0),
        names: Vec::new(),
        index: BTreeMap::new(),
        aliases: BTreeMap::new(),
        copies: BTreeMap::new(),
        owner: Vec::new(),
    };
    let fw = base_into(&mut builder, inst, params)?;
    Ok(fw.finish(builder))
}

struct Skeleton {
    params: FrameworkParams,
    instance: PisInstance,
    sigma: Vec<PisEdge>,
    b_gadgets: Vec<Vec<Vec<Vec<Vertex>>>>,
    j_gadgets: Vec<Vec<Vertex>>,
}

impl Skeleton {
    fn finish(self, b: Builder) -> Framework {
        Framework {
            graph: b.g,
            params: self.params,
            instance: self.instance,
            sigma: self.sigma,
            case: CaseLabel::NotInScope,
            family: Vec::new(),
            witness_member: 0,
            names: b.names,
            index: b.index,
            aliases: b.aliases,
            copies: b.copies,
            owner: b.owner,
            b_gadgets: self.b_gadgets,
            j_gadgets: self.j_gadgets,
        }
    }
}

fn base_into(bd: &mut Builder, inst: &PisInstance, params: FrameworkParams) -> Result<Skeleton> {
    if !inst.is_normalized() {
        return Err(Error::Input("the instance must be normalized first".into()));
    }
    let sigma = inst.edges();
    let m = sigma.len();
    if m == 0 {
        return Err(Error::Input("instances without edges are not supported".into()));
    }
    if params.k != inst.k || params.m != m {
        return Err(Error::Input("parameters do not match the instance".into()));
    }
    let k = params.k;
    let mut b_gadgets = vec![vec![vec![Vec::new(); k]; k]; m];
    for (e, &edge) in sigma.iter().enumerate() {
        let ek = edge_key(edge);
        for i in 0..k {
            for j in 0..k {
                let owner = Owner::B(e, i, j);
                let bp = b_prefix(&ek, i, j);
                let mut verts = vec![bd.add(format!("a{bp}"), owner), bd.add(format!("b{bp}"), owner)];
                for copy in 0..params.n_h {
                    let clique: Vec<Vertex> = (0..params.h - 1)
                        .map(|t| bd.add(format!("K{bp}[copy={}][v={}]", copy + 1, t + 1), owner))
                        .collect();
                    for (x, &u) in clique.iter().enumerate() {
                        for &w in &clique[x + 1..] {
                            bd.edge(u, w);
                        }
                    }
                    verts.extend(clique);
                }
                for s in 0..params.t_f {
                    verts.push(bd.add(format!("x{bp}[s={}]", s + 1), owner));
                }
                b_gadgets[e][i][j] = verts;
            }
        }
    }
    let mut j_gadgets = Vec::with_capacity(m);
    for (e, &edge) in sigma.iter().enumerate() {
        let ek = edge_key(edge);
        let mut verts: Vec<Vertex> = (0..k).map(|j| bd.add(format!("c[{ek}][j={}]", j + 1), Owner::J(e))).collect();
        verts.extend((0..k).map(|i| bd.add(format!("r[{ek}][i={}]", i + 1), Owner::J(e))));
        j_gadgets.push(verts);
    }

    let join = |bd: &mut Builder, x: &[Vertex], y: &[Vertex]| {
        for &u in x {
            for &w in y {
                bd.edge(u, w);
            }
        }
    };
    for (e, &((i1, j1), (i2, j2))) in sigma.iter().enumerate() {
        for j in 0..k {
            for i in 0..k {
                for i_other in (i + 1)..k {
                    join(bd, &b_gadgets[e][i][j], &b_gadgets[e][i_other][j]);
                }
            }
        }
        join(bd, &b_gadgets[e][i1][j1], &b_gadgets[e][i2][j2]);
        let prev = (e + m - 1) % m;
        for i in 0..k {
            for j in 0..k {
                let (c, r) = (j_gadgets[e][j], j_gadgets[e][k + i]);
                let b_prev = b_gadgets[prev][i][j][1];
                let a = b_gadgets[e][i][j][0];
                bd.edge(b_prev, c);
                bd.edge(b_prev, r);
                bd.edge(r, a);
                bd.edge(c, a);
            }
        }
    }
    Ok(Skeleton {
        params,
        instance: inst.clone(),
        sigma,
        b_gadgets,
        j_gadgets,
    })
}

/// Number of B-extra vertices a case needs.
fn case_t_f(case: &CaseLabel) -> usize {
    match case {
        CaseLabel::ThreeCut(p) => p.r_a.len() + p.r_b.len() - 2,
        CaseLabel::TwoCut(p) => p.p - 2,
        CaseLabel::Commander(_) => 1,
        CaseLabel::Butternut(_) => 2,
        CaseLabel::CrickMinor(p) => p.s - 2,
        _ => 0,
    }
}

/// Induced copy of `set` in `h`, with the H-ids as labels.
fn piece(h: &Graph, set: &VertexSet) -> (Graph, Vec<Vertex>) {
    let (g, remap) = h.induced_subgraph(set).expect("payload sets lie in H");
    let labels = remap.new_to_old.iter().map(|o| o[0]).collect();
    (g, labels)
}

fn local(labels: &[Vertex], v: Vertex) -> Vertex {
    labels.iter().position(|&x| x == v).expect("vertex lies in the piece")
}

/// Builds the enhanced framework for `fam` (a single in-scope graph, or a
/// family of graphs that all have a block with at least five edges).
pub fn build_enhanced_framework(fam: &[Graph], inst: &PisInstance, rel: Relation) -> Result<Framework> {
    if fam.is_empty() {
        return Err(Error::Input("the family is empty".into()));
    }
    let (case, member) = if fam.len() == 1 {
        let case = classify_case(&fam[0], rel)?;
        if case == CaseLabel::NotInScope {
            return Err(Error::NotInScope(format!(
                "the forbidden graph lies on the single-exponential side for relation {rel}"
            )));
        }
        (case, 0)
    } else {
        let payload = hard_gene_payload(fam)?;
        let member = payload.member;
        (CaseLabel::HardGene(payload), member)
    };
    let h_min = fam.iter().map(Graph::n).min().unwrap();
    let inst = inst.normalize();
    let params = FrameworkParams::new(inst.k, inst.num_edges(), h_min, rel, case_t_f(&case))?;
    let mut bd = Builder {
        g: Graph::new(0),
        names: Vec::new(),
        index: BTreeMap::new(),
        aliases: BTreeMap::new(),
        copies: BTreeMap::new(),
        owner: Vec::new(),
    };
    let mut sk = base_into(&mut bd, &inst, params)?;
    enhance(&mut bd, &mut sk, &case, &fam[member]);
    let mut fw = sk.finish(bd);
    fw.case = case;
    fw.family = fam.to_vec();
    fw.witness_member = member;
    Ok(fw)
}

fn enhance(bd: &mut Builder, sk: &mut Skeleton, case: &CaseLabel, h: &Graph) {
    let k = sk.params.k;
    let m = sk.sigma.len();
    let keys: Vec<String> = sk.sigma.iter().map(|&e| edge_key(e)).collect();
    let next = |e: usize| (e + 1) % m;
    let prev = |e: usize| (e + m - 1) % m;
    let a = |sk: &Skeleton, e: usize, i: usize, j: usize| sk.b_gadgets[e][i][j][0];
    let b = |sk: &Skeleton, e: usize, i: usize, j: usize| sk.b_gadgets[e][i][j][1];
    let c = |sk: &Skeleton, e: usize, j: usize| sk.j_gadgets[e][j];
    let r = |sk: &Skeleton, e: usize, i: usize| sk.j_gadgets[e][k + i];
    // B-extra slot `s` (0-based) of B^e_{i,j}.
    let slot = |sk: &Skeleton, e: usize, i: usize, j: usize, s: usize| sk.b_gadgets[e][i][j][2 + sk.params.n_h * (sk.params.h - 1) + s];
    let j_before = bd.g.n();

    match case {
        CaseLabel::NotInScope => unreachable!("refused earlier"),
        CaseLabel::HardGene(p) => {
            let (hx, hx_v) = p.h_x(h);
            let (hy, hy_v, hy_vp) = p.h_y_minus(h);
            let hx_labels: Vec<Vertex> = p.cut.x_side.to_vec();
            let hy_labels: Vec<Vertex> = p.cut.y_side.to_vec();
            for e in 0..m {
                let q = bd.add(format!("q[{}]", keys[e]), Owner::J(e));
                sk.j_gadgets[e].push(q);
                bd.attach(format!("HX[{}]", keys[e]), &hx, &hx_labels, &[(hx_v, q)], Owner::J(e));
                for i in 0..k {
                    bd.attach(
                        format!("HYm[{}][i={}]", keys[e], i + 1),
                        &hy,
                        &hy_labels,
                        &[(hy_v, q), (hy_vp, r(sk, e, i))],
                        Owner::J(e),
                    );
                }
            }
        }
        CaseLabel::CycleTwoCut(p) => {
            let hm = p.h_minus(h);
            let labels: Vec<Vertex> = h.vertices().collect();
            for e in 0..m {
                let q = bd.add(format!("q[{}]", keys[e]), Owner::J(e));
                for i in 0..k {
                    bd.attach(
                        format!("Hm[{}][i={}]", keys[e], i + 1),
                        &hm,
                        &labels,
                        &[(p.v, r(sk, e, i)), (p.v_prime, q)],
                        Owner::J(e),
                    );
                }
            }
        }
        CaseLabel::ThreeCut(p) => three_cut(bd, sk, p, h, &keys),
        CaseLabel::TwoCut(p) => {
            for e in 0..m {
                for i in 0..k {
                    for j in 0..k {
                        let bp = b_prefix(&keys[e], i, j);
                        for s in 0..p.s_x - 1 {
                            let x = slot(sk, e, i, j, s);
                            bd.edge(a(sk, e, i, j), x);
                            bd.aliases.insert(format!("pend_a{bp}[s={}]", s + 1), x);
                        }
                        for s in 0..p.s_y - 1 {
                            let x = slot(sk, e, i, j, p.s_x - 1 + s);
                            bd.edge(b(sk, e, i, j), x);
                            bd.aliases.insert(format!("pend_b{bp}[s={}]", s + 1), x);
                        }
                    }
                }
            }
        }
        CaseLabel::CycleStarTwoCut(p) => {
            let (hm, w) = p.h_minus(h);
            let labels: Vec<Vertex> = hm.vertices().collect();
            for e in 0..m {
                for i in 0..k {
                    bd.attach(
                        format!("Hm[{}][i={}]", keys[e], i + 1),
                        &hm,
                        &labels,
                        &[(w, r(sk, e, i))],
                        Owner::J(e),
                    );
                }
            }
        }
        CaseLabel::Commander(p) => {
            let (hx, hx_labels) = piece(h, &p.h_x);
            let (hy, hy_labels) = piece(h, &p.h_y);
            let (x, y) = (local(&hx_labels, p.x), local(&hy_labels, p.y));
            for e in 0..m {
                for i in 0..k {
                    for j in 0..k {
                        let abar = slot(sk, e, i, j, 0);
                        bd.edge(abar, r(sk, e, i));
                        bd.edge(abar, c(sk, e, j));
                        bd.aliases.insert(format!("abar{}", b_prefix(&keys[e], i, j)), abar);
                    }
                }
                for j in 0..k {
                    bd.attach(format!("Hx[{}][j={}]", keys[e], j + 1), &hx, &hx_labels, &[(x, c(sk, e, j))], Owner::J(e));
                }
                for i in 0..k {
                    bd.attach(format!("Hy[{}][i={}]", keys[e], i + 1), &hy, &hy_labels, &[(y, r(sk, e, i))], Owner::J(e));
                }
            }
        }
        CaseLabel::Butternut(p) => {
            let (hx, hx_labels) = piece(h, &p.h_x);
            let x = local(&hx_labels, p.x);
            for e in 0..m {
                let en = next(e);
                for i in 0..k {
                    for j in 0..k {
                        let bp = b_prefix(&keys[e], i, j);
                        let abar = slot(sk, e, i, j, 0);
                        let bbar = slot(sk, e, i, j, 1);
                        bd.edge(abar, r(sk, e, i));
                        bd.edge(abar, c(sk, e, j));
                        bd.edge(bbar, r(sk, en, i));
                        bd.edge(bbar, c(sk, en, j));
                        bd.aliases.insert(format!("abar{bp}"), abar);
                        bd.aliases.insert(format!("bbar{bp}"), bbar);
                    }
                }
                for j in 0..k {
                    bd.attach(format!("Hx[{}][j={}]", keys[e], j + 1), &hx, &hx_labels, &[(x, c(sk, e, j))], Owner::J(e));
                }
            }
        }
        CaseLabel::CrickMinor(p) => {
            for e in 0..m {
                let ep = prev(e);
                for j in 0..k {
                    let d = bd.add(format!("d[{}][j={}]", keys[e], j + 1), Owner::J(e));
                    let f = bd.add(format!("f[{}][j={}]", keys[e], j + 1), Owner::J(e));
                    let g = bd.add(format!("g[{}][j={}]", keys[e], j + 1), Owner::J(e));
                    bd.edge(d, f);
                    bd.edge(f, g);
                    for i in 0..k {
                        bd.edge(b(sk, ep, i, j), d);
                        bd.edge(g, a(sk, e, i, j));
                    }
                }
                for i in 0..k {
                    for j in 0..k {
                        let bp = b_prefix(&keys[e], i, j);
                        for s in 0..p.s - 2 {
                            let x = slot(sk, e, i, j, s);
                            bd.edge(b(sk, e, i, j), x);
                            bd.aliases.insert(format!("pend_b{bp}[s={}]", s + 1), x);
                        }
                    }
                }
            }
        }
        CaseLabel::CrickTM(p) => {
            for e in 0..m {
                let q = bd.add(format!("q[{}]", keys[e]), Owner::J(e));
                for s in 0..p.s {
                    let leaf = bd.add(format!("qpend[{}][s={}]", keys[e], s + 1), Owner::J(e));
                    bd.edge(q, leaf);
                }
                for i in 0..k {
                    bd.edge(q, r(sk, e, i));
                }
            }
        }
    }

    // Register every new J-side vertex with its separator gadget.
    for v in j_before..bd.g.n() {
        if let Owner::J(e) = bd.owner[v] {
            if !sk.j_gadgets[e].contains(&v) {
                sk.j_gadgets[e].push(v);
            }
        }
    }
}

fn three_cut(bd: &mut Builder, sk: &mut Skeleton, p: &ThreeCutPayload, h: &Graph, keys: &[String]) {
    let k = sk.params.k;
    let m = sk.sigma.len();
    let (rc, rc_labels) = piece(h, &p.r_c);
    let (rr, rr_labels) = piece(h, &p.r_r);
    let (ra, ra_labels) = piece(h, &p.r_a);
    let (rb, rb_labels) = piece(h, &p.r_b);
    let near = |x: Vertex, set: &VertexSet| -> Vec<Vertex> {
        h.neighbors(x).iter().copied().filter(|v| set.contains(*v)).collect()
    };
    let ra_to_r = near(p.a_prime, &p.r_a);
    let ra_to_c = near(p.c, &p.r_a);
    let rb_to_c = near(p.c, &p.r_b);
    let rb_to_r = near(p.r, &p.r_b);
    let base = 2 + sk.params.n_h * (sk.params.h - 1);
    let ra_extra: Vec<Vertex> = ra_labels.iter().copied().filter(|&v| v != p.a).collect();
    let rb_extra: Vec<Vertex> = rb_labels.iter().copied().filter(|&v| v != p.b).collect();
    for e in 0..m {
        let en = (e + 1) % m;
        for j in 0..k {
            let cj = sk.j_gadgets[e][j];
            bd.attach(
                format!("Rc[{}][j={}]", keys[e], j + 1),
                &rc,
                &rc_labels,
                &[(local(&rc_labels, p.c), cj)],
                Owner::J(e),
            );
        }
        for i in 0..k {
            let ri = sk.j_gadgets[e][k + i];
            bd.attach(
                format!("Rr[{}][i={}]", keys[e], i + 1),
                &rr,
                &rr_labels,
                &[(local(&rr_labels, p.r), ri)],
                Owner::J(e),
            );
        }
        for i in 0..k {
            for j in 0..k {
                let gadget = &sk.b_gadgets[e][i][j];
                let bp = b_prefix(&keys[e], i, j);
                // R_a copy: a is a^e_{i,j}, the rest occupy the first extra slots.
                let mut map_a = BTreeMap::new();
                map_a.insert(p.a, gadget[0]);
                for (s, &v) in ra_extra.iter().enumerate() {
                    let x = gadget[base + s];
                    map_a.insert(v, x);
                    bd.aliases.insert(format!("Ra{bp}[v={v}]"), x);
                }
                let mut map_b = BTreeMap::new();
                map_b.insert(p.b, gadget[1]);
                for (s, &v) in rb_extra.iter().enumerate() {
                    let x = gadget[base + ra_extra.len() + s];
                    map_b.insert(v, x);
                    bd.aliases.insert(format!("Rb{bp}[v={v}]"), x);
                }
                for (u, w) in ra.edges() {
                    bd.edge(map_a[&ra_labels[u]], map_a[&ra_labels[w]]);
                }
                for (u, w) in rb.edges() {
                    bd.edge(map_b[&rb_labels[u]], map_b[&rb_labels[w]]);
                }
                let (ri, cj) = (sk.j_gadgets[e][k + i], sk.j_gadgets[e][j]);
                let (ri_next, cj_next) = (sk.j_gadgets[en][k + i], sk.j_gadgets[en][j]);
                for v in &ra_to_r {
                    bd.edge(map_a[v], ri);
                }
                for v in &ra_to_c {
                    bd.edge(map_a[v], cj);
                }
                for v in &rb_to_c {
                    bd.edge(map_b[v], cj_next);
                }
                for v in &rb_to_r {
                    bd.edge(map_b[v], ri_next);
                }
                bd.copies.insert(format!("Ra{bp}"), map_a.values().copied().collect());
                bd.copies.insert(format!("Rb{bp}"), map_b.values().copied().collect());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Solutions: embedding, lifting, witnesses
// ---------------------------------------------------------------------------

/// `S_P`: every B-gadget whose cell is not chosen by the permutation.
pub fn embed_solution(fw: &Framework, perm: &[usize]) -> Result<VertexSet> {
    if !fw.instance.is_solution(perm) {
        return Err(Error::Input("not a solution of the instance".into()));
    }
    let k = fw.params.k;
    let mut s = VertexSet::new();
    for e in 0..fw.num_pis_edges() {
        for i in 0..k {
            for j in 0..k {
                if perm[i] != j {
                    s.extend(fw.b_gadget(e, i, j).iter().copied());
                }
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSolution {
    /// `T^e` per instance edge: cells whose B-gadget avoids the deletion set.
    pub grids: Vec<BTreeSet<Cell>>,
    pub consistent: bool,
    /// The permutation read off a consistent lift.
    pub permutation: Option<Vec<usize>>,
}

pub fn lift_solution(fw: &Framework, s: &VertexSet) -> LiftedSolution {
    let k = fw.params.k;
    let grids: Vec<BTreeSet<Cell>> = (0..fw.num_pis_edges())
        .map(|e| {
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|&(i, j)| fw.b_gadget(e, i, j).iter().all(|&v| !s.contains(v)))
                .collect()
        })
        .collect();
    let first = &grids[0];
    let mut perm = vec![usize::MAX; k];
    let mut ok = grids.iter().all(|g| g == first) && first.len() == k;
    if ok {
        for &(i, j) in first {
            if perm[i] != usize::MAX {
                ok = false;
            }
            perm[i] = j;
        }
    }
    ok = ok && fw.instance.is_solution(&perm);
    LiftedSolution {
        grids,
        consistent: ok,
        permutation: ok.then_some(perm),
    }
}

/// Vertices of the subgraph certifying that keeping `b^e_{i,j}` together with
/// `a^{σ(e)}_{i',j}` (for `i ≠ i'`) creates the forbidden graph.
pub fn witness_subgraph(fw: &Framework, e: usize, i: usize, i2: usize, j: usize) -> Result<VertexSet> {
    let k = fw.params.k;
    if e >= fw.num_pis_edges() || i >= k || i2 >= k || j >= k || i == i2 {
        return Err(Error::Input("witness needs a valid edge, two distinct rows and a column".into()));
    }
    let en = fw.next(e);
    let kn = fw.edge_key(en);
    let ke = fw.edge_key(e);
    let mut w = VertexSet::new();
    // The path r_i - b - c - a - r_{i'} shared by most cases.
    let path = [fw.r(en, i), fw.b(e, i, j), fw.c(en, j), fw.a(en, i2, j), fw.r(en, i2)];
    let copy = |name: String| -> Result<Vec<Vertex>> {
        fw.copy(&name)
            .map(<[Vertex]>::to_vec)
            .ok_or_else(|| Error::Input(format!("framework has no copy named {name}")))
    };
    let alias = |name: String| -> Result<Vertex> {
        fw.vertex(&name).ok_or_else(|| Error::Input(format!("framework has no vertex named {name}")))
    };
    let prefixed = |prefix: String| -> Vec<Vertex> {
        // All aliases starting with the prefix (pendant families).
        fw.aliases
            .range(prefix.clone()..)
            .take_while(|(name, _)| name.starts_with(&prefix))
            .map(|(_, &v)| v)
            .collect()
    };
    let bp_e = b_prefix(&ke, i, j);
    let bp_n = b_prefix(&kn, i2, j);
    match &fw.case {
        CaseLabel::NotInScope => return Err(Error::Input("framework has no case".into())),
        CaseLabel::HardGene(_) => {
            w.extend(path[1..4].iter().copied());
            w.extend(copy(format!("HX[{kn}]"))?);
            w.extend(copy(format!("HYm[{kn}][i={}]", i + 1))?);
            w.extend(copy(format!("HYm[{kn}][i={}]", i2 + 1))?);
        }
        CaseLabel::CycleTwoCut(_) | CaseLabel::CycleStarTwoCut(_) => {
            w.extend(path);
            w.extend(copy(format!("Hm[{kn}][i={}]", i + 1))?);
            w.extend(copy(format!("Hm[{kn}][i={}]", i2 + 1))?);
        }
        CaseLabel::ThreeCut(_) => {
            w.insert(fw.r(en, i2));
            w.extend(copy(format!("Ra{bp_n}"))?);
            w.extend(copy(format!("Rc[{kn}][j={}]", j + 1))?);
            w.extend(copy(format!("Rb{bp_e}"))?);
            w.extend(copy(format!("Rr[{kn}][i={}]", i + 1))?);
        }
        CaseLabel::TwoCut(_) => {
            w.extend(path);
            w.extend(prefixed(format!("pend_a{bp_n}")));
            w.extend(prefixed(format!("pend_b{bp_e}")));
        }
        CaseLabel::Commander(_) => {
            w.extend(path);
            w.insert(alias(format!("abar{bp_n}"))?);
            w.extend(copy(format!("Hx[{kn}][j={}]", j + 1))?);
            w.extend(copy(format!("Hy[{kn}][i={}]", i + 1))?);
        }
        CaseLabel::Butternut(_) => {
            w.extend(path);
            w.insert(alias(format!("abar{bp_n}"))?);
            w.insert(alias(format!("bbar{bp_e}"))?);
            w.extend(copy(format!("Hx[{kn}][j={}]", j + 1))?);
        }
        CaseLabel::CrickMinor(_) => {
            w.extend(path);
            for name in ["d", "f", "g"] {
                w.insert(alias(format!("{name}[{kn}][j={}]", j + 1))?);
            }
            w.extend(prefixed(format!("pend_b{bp_e}")));
        }
        CaseLabel::CrickTM(_) => {
            w.extend(path);
            w.insert(alias(format!("q[{kn}]"))?);
            w.extend(prefixed(format!("qpend[{kn}]")).into_iter());
            for s in 0.. {
                match fw.vertex(&format!("qpend[{kn}][s={}]", s + 1)) {
                    Some(v) => {
                        w.insert(v);
                    }
                    None => break,
                }
            }
        }
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// Vertex Cover reduction
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct VcReduction {
    pub graph: Graph,
    pub budget: usize,
    /// The family after discarding members that contain another member.
    pub antichain: Vec<Graph>,
    pub pair: EssentialPair,
    pub names: Vec<String>,
}

impl VcReduction {
    pub fn manifest(&self, rel: Relation) -> String {
        let a = self.pair.core.n();
        let b = self.pair.block.len();
        let mut out = format!(
            "case=VertexCover relation={rel} n={} core={a} block={b} budget={}\n",
            self.graph.n(),
            self.budget
        );
        for (v, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "name {name} {v}");
        }
        out.push_str(&format_edge_list(&self.graph));
        out
    }
}

/// Keeps the members not containing any other member (first of each
/// equivalent pair).
pub fn antichain(fam: &[Graph], rel: Relation, limits: &SearchLimits) -> Result<Vec<Graph>> {
    let mut keep = Vec::new();
    'outer: for (x, h) in fam.iter().enumerate() {
        for (y, other) in fam.iter().enumerate() {
            if x == y {
                continue;
            }
            if contains(other, h, rel, limits)? {
                let mutual = contains(h, other, rel, limits)?;
                if !mutual || y < x {
                    continue 'outer;
                }
            }
        }
        keep.push(h.clone());
    }
    Ok(keep)
}

/// Replaces every vertex of `g` with a copy of the core and every edge with
/// a copy of the essential block, so that `g` has a vertex cover of size
/// `k` iff the result has a deletion set of size `k`.
pub fn vc_reduction(fam: &[Graph], g: &Graph, k: usize, rel: Relation) -> Result<VcReduction> {
    let limits = SearchLimits::default();
    let anti = antichain(fam, rel, &limits)?;
    let pair = essential_pair(&anti)?;
    let h = &anti[pair.host];
    let n = g.n();
    let mut out = Graph::new(n);
    let mut names: Vec<String> = (0..n).map(|v| format!("A[v={v}][u={}]", pair.first)).collect();
    // Core copies: vertex v of g is the copy of a.
    let core_labels: Vec<Vertex> = {
        let mut gone = pair.block.clone();
        gone.remove(pair.first);
        let (_, remap) = h.remove_vertices(&gone)?;
        remap.new_to_old.iter().map(|o| o[0]).collect()
    };
    for v in 0..n {
        let map: Vec<Vertex> = pair
            .core
            .vertices()
            .map(|u| {
                if u == pair.core_first {
                    v
                } else {
                    names.push(format!("A[v={v}][u={}]", core_labels[u]));
                    out.add_vertex()
                }
            })
            .collect();
        for (x, y) in pair.core.edges() {
            out.add_edge(map[x], map[y]);
        }
    }
    let (block, remap) = h.induced_subgraph(&pair.block)?;
    let ba = remap.map(pair.first).unwrap();
    let bb = remap.map(pair.second).unwrap();
    for (v, w) in g.edges() {
        let map: Vec<Vertex> = block
            .vertices()
            .map(|u| {
                if u == ba {
                    v
                } else if u == bb {
                    w
                } else {
                    names.push(format!("B[e=({v},{w})][u={}]", remap.new_to_old[u][0]));
                    out.add_vertex()
                }
            })
            .collect();
        for (x, y) in block.edges() {
            out.add_edge(map[x], map[y]);
        }
    }
    Ok(VcReduction {
        graph: out,
        budget: k,
        antichain: anti,
        pair,
        names,
    })
}
