//! Structural analysis of forbidden graphs: block edge size functions and
//! their order, leaf block cuts, essential pairs, membership in the graph
//! classes that decide hardness, and the dispatcher choosing which gadget
//! construction applies to a single forbidden graph.

use std::cmp::Ordering;
use std::fmt;

use crate::decomposition::{block_cut_tree, blocks, induced_edge_count, BlockCutTree};
use crate::error::{Error, GraphError, Result};
use crate::graph::{named, Graph, Vertex, VertexSet};
use crate::iso::are_isomorphic;
use crate::minors::{find_minor_model, Relation};

// ---------------------------------------------------------------------------
// Block edge size functions
// ---------------------------------------------------------------------------

/// Step representation: `steps[t] = (x_t, value)` means the function equals
/// `value` on `[x_t, x_{t+1})`. The first threshold is 0 and the last value
/// is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BesfFunction {
    pub steps: Vec<(usize, usize)>,
}

impl BesfFunction {
    pub fn eval(&self, x: usize) -> usize {
        let idx = self.steps.partition_point(|&(t, _)| t <= x);
        self.steps[idx - 1].1
    }

    fn thresholds(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|&(t, _)| t)
    }
}

/// Number of edges lying in blocks with at least `x` edges, as a step function.
pub fn besf(h: &Graph) -> Result<BesfFunction> {
    if h.is_empty() {
        return Err(GraphError::TooSmall(1).into());
    }
    if !h.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let mut sizes: Vec<usize> = blocks(h).iter().map(|b| induced_edge_count(h, b)).collect();
    sizes.sort_unstable();
    let mut steps = vec![(0, h.num_edges())];
    let mut remaining = h.num_edges();
    let mut idx = 0;
    while idx < sizes.len() {
        let c = sizes[idx];
        while idx < sizes.len() && sizes[idx] == c {
            remaining -= sizes[idx];
            idx += 1;
        }
        steps.push((c + 1, remaining));
    }
    Ok(BesfFunction { steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesfOrder {
    Less(usize),
    Greater(usize),
    Equal,
}

/// Compares two functions by their behaviour at large arguments. The witness
/// reported is the start of the last interval on which they differ (at least
/// 1): there the smaller function is strictly below, and the two agree
/// beyond it.
pub fn besf_compare(f: &BesfFunction, g: &BesfFunction) -> BesfOrder {
    let mut points: Vec<usize> = f.thresholds().chain(g.thresholds()).collect();
    points.sort_unstable();
    points.dedup();
    for &x in points.iter().rev() {
        let (a, b) = (f.eval(x), g.eval(x));
        if a != b {
            let witness = x.max(1);
            return if a < b { BesfOrder::Less(witness) } else { BesfOrder::Greater(witness) };
        }
    }
    BesfOrder::Equal
}

pub fn besf_cmp(f: &BesfFunction, g: &BesfFunction) -> Ordering {
    match besf_compare(f, g) {
        BesfOrder::Less(_) => Ordering::Less,
        BesfOrder::Greater(_) => Ordering::Greater,
        BesfOrder::Equal => Ordering::Equal,
    }
}

// ---------------------------------------------------------------------------
// Leaf block cuts
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafBlockCut {
    pub x_side: VertexSet,
    pub y_side: VertexSet,
    pub block: VertexSet,
    pub pivot: Vertex,
}

/// Peels leaf blocks with fewer than `k` edges until the remaining block
/// structure has only big leaves, then cuts off the smallest such leaf.
pub fn k_edges_leaf_block_cut(h: &Graph, k: usize) -> Result<LeafBlockCut> {
    let tree = block_cut_tree(h)?;
    if !tree.blocks.iter().any(|b| induced_edge_count(h, b) >= k) {
        return Err(Error::Input(format!("no block with at least {k} edges")));
    }
    if tree.cut_vertices.is_empty() {
        let pivot = 0;
        return Ok(LeafBlockCut {
            x_side: VertexSet::from([pivot]),
            y_side: h.all_vertices(),
            block: h.all_vertices(),
            pivot,
        });
    }

    // Iteratively drop small leaf blocks (all their vertices except the cut
    // vertex attaching them).
    let mut alive = h.all_vertices();
    let (block, pivot) = loop {
        let (sub, remap) = h.induced_subgraph(&alive)?;
        let to_old = |s: &VertexSet| -> VertexSet { s.iter().map(|v| remap.new_to_old[v][0]).collect() };
        let t = block_cut_tree(&sub)?;
        if t.blocks.len() == 1 {
            // A single big block remains; pivot on H's smallest cut vertex in it.
            let block = to_old(&t.blocks[0]);
            let pivot = block
                .iter()
                .find(|&v| tree.cut_vertices.contains(v))
                .expect("H has cut vertices, and the block is not all of H");
            break (block, pivot);
        }
        let small: Vec<usize> = t
            .leaf_blocks()
            .into_iter()
            .filter(|&b| induced_edge_count(&sub, &t.blocks[b]) < k)
            .collect();
        if small.is_empty() {
            let mut leaves: Vec<VertexSet> = t.leaf_blocks().into_iter().map(|b| t.blocks[b].clone()).collect();
            leaves.sort_by_key(|b| (induced_edge_count(&sub, b), b.to_vec()));
            let leaf = leaves.into_iter().next().expect("a tree has leaves");
            let pivot_new = leaf.iter().find(|&v| t.cut_vertices.contains(v)).unwrap();
            break (to_old(&leaf), remap.new_to_old[pivot_new][0]);
        }
        for b in small {
            let cut: Vec<Vertex> = t.cuts_of(b);
            for v in t.blocks[b].iter().filter(|v| !cut.contains(v)) {
                alive.remove(remap.new_to_old[v][0]);
            }
        }
    };

    let (without, remap) = h.remove_vertices(&VertexSet::from([pivot]))?;
    let anchor = block.iter().find(|&v| v != pivot).expect("blocks have two vertices");
    let anchor_new = remap.map(anchor).unwrap();
    let comp = without
        .connected_components()
        .into_iter()
        .find(|c| c.contains(anchor_new))
        .unwrap();
    let mut y_side: VertexSet = comp.iter().map(|v| remap.new_to_old[v][0]).collect();
    y_side.insert(pivot);
    let mut x_side = h.all_vertices().difference(&y_side);
    x_side.insert(pivot);
    Ok(LeafBlockCut {
        x_side,
        y_side,
        block,
        pivot,
    })
}

impl LeafBlockCut {
    /// Checks the defining conditions against `h` and threshold `k`.
    pub fn validate(&self, h: &Graph, k: usize) -> std::result::Result<(), String> {
        if self.x_side.union(&self.y_side) != h.all_vertices() {
            return Err("sides do not cover the graph".into());
        }
        if self.x_side.intersection(&self.y_side) != VertexSet::from([self.pivot]) {
            return Err("sides must meet exactly in the pivot".into());
        }
        if induced_edge_count(h, &self.block) < k || !blocks(h).contains(&self.block) {
            return Err("block is not a block with enough edges".into());
        }
        if !self.block.contains(self.pivot) {
            return Err("pivot lies outside the block".into());
        }
        let (hy, _) = h.induced_subgraph(&self.y_side).map_err(|e| e.to_string())?;
        let (_, remap) = h.induced_subgraph(&self.y_side).map_err(|e| e.to_string())?;
        let big: Vec<VertexSet> = blocks(&hy)
            .into_iter()
            .filter(|b| induced_edge_count(&hy, b) >= k)
            .map(|b| b.iter().map(|v| remap.new_to_old[v][0]).collect())
            .collect();
        if big != vec![self.block.clone()] {
            return Err("the y side must hold exactly one big block".into());
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Essential pairs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialPair {
    /// Index of the chosen member in the family.
    pub host: usize,
    pub block: VertexSet,
    pub first: Vertex,
    pub second: Vertex,
    /// `H \ (V(B) \ {a})`.
    pub core: Graph,
    /// Id of `first` inside `core`.
    pub core_first: Vertex,
}

fn check_connected_collection(fam: &[Graph]) -> Result<()> {
    if fam.is_empty() {
        return Err(Error::Input("the family is empty".into()));
    }
    for (idx, h) in fam.iter().enumerate() {
        if h.n() < 2 || !h.is_connected() {
            return Err(Error::Input(format!(
                "family member {idx} must be connected with at least two vertices"
            )));
        }
    }
    Ok(())
}

/// Picks a leaf block with the fewest edges over all members (ties: first
/// member, then smallest block), its first vertex (the attaching cut vertex,
/// else the smallest vertex) and second vertex (smallest neighbour inside
/// the block).
pub fn essential_pair(fam: &[Graph]) -> Result<EssentialPair> {
    check_connected_collection(fam)?;
    let mut best: Option<(usize, usize, VertexSet, BlockCutTree)> = None;
    for (idx, h) in fam.iter().enumerate() {
        let tree = block_cut_tree(h)?;
        for b in tree.leaf_blocks() {
            let edges = induced_edge_count(h, &tree.blocks[b]);
            if best.as_ref().is_none_or(|(e, _, _, _)| edges < *e) {
                best = Some((edges, idx, tree.blocks[b].clone(), tree.clone()));
            }
        }
    }
    let (_, host, block, tree) = best.expect("connected graphs have leaf blocks");
    let h = &fam[host];
    let first = block
        .iter()
        .find(|&v| tree.cut_vertices.contains(v))
        .unwrap_or_else(|| block.first().unwrap());
    let second = h
        .neighbors(first)
        .iter()
        .copied()
        .find(|&w| block.contains(w))
        .expect("a block vertex has a neighbour in its block");
    let mut gone = block.clone();
    gone.remove(first);
    let (core, remap) = h.remove_vertices(&gone)?;
    Ok(EssentialPair {
        host,
        block,
        first,
        second,
        core,
        core_first: remap.map(first).unwrap(),
    })
}

// ---------------------------------------------------------------------------
// Class membership
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassFlags {
    /// Has a block with at least five edges.
    pub in_c: bool,
    /// `P5`, or not a minor of the banner.
    pub in_q: bool,
    /// A star with at least four leaves.
    pub in_s: bool,
    pub banner_minor: bool,
}

fn star_leaves(h: &Graph) -> Option<usize> {
    h.is_star().filter(|&s| s >= 4)
}

fn max_block_edges(h: &Graph) -> usize {
    blocks(h).iter().map(|b| induced_edge_count(h, b)).max().unwrap_or(0)
}

pub fn class_membership(h: &Graph) -> ClassFlags {
    let banner_minor = find_minor_model(h, &named::banner()).is_some();
    let is_p5 = are_isomorphic(h, &named::path(5));
    ClassFlags {
        in_c: h.is_connected() && max_block_edges(h) >= 5,
        in_q: is_p5 || !banner_minor,
        in_s: star_leaves(h).is_some(),
        banner_minor,
    }
}

// ---------------------------------------------------------------------------
// Case dispatch
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardGenePayload {
    /// Index of the besf-minimal member of the family.
    pub member: usize,
    pub cut: LeafBlockCut,
    /// Smallest neighbour of the pivot inside the block.
    pub v_prime: Vertex,
}

impl HardGenePayload {
    /// `H[X]` and the id of the pivot in it.
    pub fn h_x(&self, h: &Graph) -> (Graph, Vertex) {
        let (g, remap) = h.induced_subgraph(&self.cut.x_side).expect("valid cut");
        (g, remap.map(self.cut.pivot).unwrap())
    }

    /// `H[Y]` minus the edge `{v, v'}`, with the ids of `v` and `v'`.
    pub fn h_y_minus(&self, h: &Graph) -> (Graph, Vertex, Vertex) {
        let (mut g, remap) = h.induced_subgraph(&self.cut.y_side).expect("valid cut");
        let v = remap.map(self.cut.pivot).unwrap();
        let vp = remap.map(self.v_prime).unwrap();
        g.remove_edge(v, vp);
        (g, v, vp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTwoCutPayload {
    /// The unique cycle block holding at least two cut vertices.
    pub block: VertexSet,
    /// The removed edge `{v, v'}`; `v` is glued to the row vertices.
    pub v: Vertex,
    pub v_prime: Vertex,
}

impl CycleTwoCutPayload {
    pub fn h_minus(&self, h: &Graph) -> Graph {
        let mut g = h.clone();
        g.remove_edge(self.v, self.v_prime);
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCutPayload {
    pub a: Vertex,
    pub c: Vertex,
    pub b: Vertex,
    pub a_prime: Vertex,
    pub r: Vertex,
    /// `B_a, B_{a,c}, B_{c,b}, B_b` along the block-cut tree path.
    pub path_blocks: [VertexSet; 4],
    pub r_a: VertexSet,
    pub r_b: VertexSet,
    pub r_c: VertexSet,
    pub r_r: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCutPayload {
    /// The cut vertex whose pendants go on the `a` side (the centre for stars).
    pub x: Vertex,
    /// The second cut vertex; `None` for stars.
    pub y: Option<Vertex>,
    pub s_x: usize,
    pub s_y: usize,
    /// Number of degree-one vertices.
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStarTwoCutPayload {
    /// The two cut vertices, joined by a bridge.
    pub v: Vertex,
    pub v_prime: Vertex,
}

impl CycleStarTwoCutPayload {
    /// `H` with the bridge contracted and the id of the merged vertex.
    pub fn h_minus(&self, h: &Graph) -> (Graph, Vertex) {
        let (g, remap) = h.contract_edge(self.v, self.v_prime).expect("bridge is an edge");
        (g, remap.map(self.v).unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommanderPayload {
    /// Cut vertex on a cycle.
    pub x: Vertex,
    /// Cut vertex on no cycle.
    pub y: Vertex,
    pub cycle: VertexSet,
    /// Component of `H \ ((V(C) ∪ {y}) \ {x})` containing `x`.
    pub h_x: VertexSet,
    /// Component of `H \ {x}` containing `y`.
    pub h_y: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButternutPayload {
    pub x: Vertex,
    pub b1: VertexSet,
    pub b2: VertexSet,
    /// `H \ (V(B1 ∪ B2) \ {x})`.
    pub h_x: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrickPayload {
    pub x: Vertex,
    /// Number of degree-one vertices.
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    HardGene(HardGenePayload),
    CycleTwoCut(CycleTwoCutPayload),
    ThreeCut(ThreeCutPayload),
    TwoCut(TwoCutPayload),
    CycleStarTwoCut(CycleStarTwoCutPayload),
    Commander(CommanderPayload),
    Butternut(ButternutPayload),
    CrickMinor(CrickPayload),
    CrickTM(CrickPayload),
    NotInScope,
}

impl CaseLabel {
    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::HardGene(_) => "HardGene",
            CaseLabel::CycleTwoCut(_) => "CycleTwoCut",
            CaseLabel::ThreeCut(_) => "ThreeCut",
            CaseLabel::TwoCut(_) => "TwoCut",
            CaseLabel::CycleStarTwoCut(_) => "CycleStarTwoCut",
            CaseLabel::Commander(_) => "Commander",
            CaseLabel::Butternut(_) => "Butternut",
            CaseLabel::CrickMinor(_) => "CrickMinor",
            CaseLabel::CrickTM(_) => "CrickTM",
            CaseLabel::NotInScope => "NotInScope",
        }
    }

    /// Human-readable payload dump, one `key=value` per line.
    pub fn describe(&self) -> String {
        match self {
            CaseLabel::HardGene(p) => format!(
                "member={}\nblock={}\npivot={}\nv_prime={}\nx_side={}\ny_side={}\n",
                p.member, p.cut.block, p.cut.pivot, p.v_prime, p.cut.x_side, p.cut.y_side
            ),
            CaseLabel::CycleTwoCut(p) => format!("block={}\nv={}\nv_prime={}\n", p.block, p.v, p.v_prime),
            CaseLabel::ThreeCut(p) => format!(
                "a={} c={} b={} a_prime={} r={}\nR_a={}\nR_b={}\nR_c={}\nR_r={}\n",
                p.a, p.c, p.b, p.a_prime, p.r, p.r_a, p.r_b, p.r_c, p.r_r
            ),
            CaseLabel::TwoCut(p) => format!(
                "x={} y={} s_x={} s_y={} p={}\n",
                p.x,
                p.y.map_or("-".to_string(), |y| y.to_string()),
                p.s_x,
                p.s_y,
                p.p
            ),
            CaseLabel::CycleStarTwoCut(p) => format!("v={} v_prime={}\n", p.v, p.v_prime),
            CaseLabel::Commander(p) => format!(
                "x={} y={}\ncycle={}\nH_x={}\nH_y={}\n",
                p.x, p.y, p.cycle, p.h_x, p.h_y
            ),
            CaseLabel::Butternut(p) => format!("x={}\nB1={}\nB2={}\nH_x={}\n", p.x, p.b1, p.b2, p.h_x),
            CaseLabel::CrickMinor(p) | CaseLabel::CrickTM(p) => format!("x={} s={}\n", p.x, p.s),
            CaseLabel::NotInScope => String::new(),
        }
    }

    /// Checks that the payload meets the structural conditions its
    /// construction relies on.
    pub fn validate(&self, h: &Graph) -> std::result::Result<(), String> {
        let tree = block_cut_tree(h).map_err(|e| e.to_string())?;
        let cuts = &tree.cut_vertices;
        let cycle_blocks: Vec<&VertexSet> = tree.blocks.iter().filter(|b| b.len() >= 3).collect();
        let ensure = |cond: bool, msg: &str| if cond { Ok(()) } else { Err(msg.to_string()) };
        match self {
            CaseLabel::NotInScope => Ok(()),
            CaseLabel::HardGene(p) => {
                p.cut.validate(h, 5)?;
                ensure(p.cut.block.contains(p.v_prime) && h.has_edge(p.cut.pivot, p.v_prime), "v' must neighbour the pivot in B")?;
                let (hx, _) = p.h_x(h);
                let (hy, _, _) = p.h_y_minus(h);
                ensure(hx.is_connected() && hy.is_connected(), "H_X and H_Y^- must be connected")
            }
            CaseLabel::CycleTwoCut(p) => {
                ensure(p.block.len() >= 3 && tree.blocks.contains(&p.block), "block must be a cycle block")?;
                ensure(p.block.iter().filter(|&v| cuts.contains(v)).count() >= 2, "block needs two cut vertices")?;
                let others = cycle_blocks
                    .iter()
                    .filter(|b| b.iter().filter(|&v| cuts.contains(v)).count() >= 2)
                    .count();
                ensure(others == 1, "exactly one cycle may carry two cut vertices")?;
                ensure(
                    h.has_edge(p.v, p.v_prime) && p.block.contains(p.v) && p.block.contains(p.v_prime),
                    "{v, v'} must be an edge of the block",
                )
            }
            CaseLabel::ThreeCut(p) => {
                for v in [p.a, p.b, p.c] {
                    ensure(cuts.contains(v), "a, b, c must be cut vertices")?;
                }
                let [ba, bac, bcb, bb] = &p.path_blocks;
                ensure(tree.leaf_blocks().iter().any(|&i| &tree.blocks[i] == ba), "B_a must be a leaf block")?;
                ensure(ba.contains(p.a) && bac.contains(p.a) && bac.contains(p.c), "path a")?;
                ensure(bcb.contains(p.c) && bcb.contains(p.b) && bb.contains(p.b), "path b")?;
                ensure(
                    !tree.blocks.iter().any(|blk| blk.contains(p.a) && blk.contains(p.b) && blk.contains(p.c)),
                    "a, b, c must not share a block",
                )?;
                ensure(ba.contains(p.a_prime) && p.a_prime != p.a, "a' in B_a \\ {a}")?;
                ensure(bb.contains(p.r) && p.r != p.b, "r in B_b \\ {b}")?;
                let parts = [VertexSet::from([p.a_prime]), p.r_a.clone(), p.r_c.clone(), p.r_b.clone(), p.r_r.clone()];
                let total: usize = parts.iter().map(VertexSet::len).sum();
                let union = parts.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
                ensure(total == h.n() && union == h.all_vertices(), "{a'}, R_a, R_c, R_b, R_r must partition V(H)")?;
                ensure(p.r_a.contains(p.a) && p.r_b.contains(p.b) && p.r_c.contains(p.c) && p.r_r.contains(p.r), "parts hold their anchors")?;
                for part in &parts[1..] {
                    let (g, _) = h.induced_subgraph(part).map_err(|e| e.to_string())?;
                    ensure(g.is_connected(), "every part must be connected")?;
                }
                Ok(())
            }
            CaseLabel::TwoCut(p) => {
                ensure(h.is_tree(), "H must be a tree")?;
                ensure(p.p >= 4 && h.degree_one_vertices().len() == p.p, "at least four leaves")?;
                ensure(p.s_x + p.s_y == p.p, "pendant counts must add up to the leaf count")?;
                match p.y {
                    None => ensure(cuts.len() == 1 && cuts.contains(p.x), "star centre"),
                    Some(y) => {
                        ensure(cuts.len() == 2 && cuts.contains(p.x) && cuts.contains(y), "two cut vertices")?;
                        let pend = |c: Vertex| h.neighbors(c).iter().filter(|&&w| h.degree(w) == 1).count();
                        ensure(pend(p.x) == p.s_x && pend(y) == p.s_y, "pendant counts")
                    }
                }
            }
            CaseLabel::CycleStarTwoCut(p) => {
                ensure(cuts.len() == 2 && cuts.contains(p.v) && cuts.contains(p.v_prime), "two cut vertices")?;
                ensure(h.has_edge(p.v, p.v_prime), "cut vertices must be adjacent")?;
                let on_cycle = |v: Vertex| cycle_blocks.iter().any(|b| b.contains(v));
                ensure(on_cycle(p.v) && on_cycle(p.v_prime), "both cut vertices lie on cycles")
            }
            CaseLabel::Commander(p) => {
                ensure(cuts.len() == 2 && cuts.contains(p.x) && cuts.contains(p.y), "two cut vertices")?;
                ensure(h.has_edge(p.x, p.y), "cut vertices must be adjacent")?;
                let on_cycle = |v: Vertex| cycle_blocks.iter().any(|b| b.contains(v));
                ensure(on_cycle(p.x) && !on_cycle(p.y), "exactly x lies on a cycle")?;
                ensure(p.cycle.contains(p.x) && cycle_blocks.contains(&&p.cycle), "C is a cycle through x")?;
                ensure(p.h_x.contains(p.x) && p.h_y.contains(p.y), "H_x, H_y hold their anchors")?;
                ensure(p.h_x.is_disjoint(&p.cycle.difference(&VertexSet::from([p.x]))), "H_x avoids C")
            }
            CaseLabel::Butternut(p) => {
                ensure(cuts.len() == 1 && cuts.contains(p.x), "exactly one cut vertex")?;
                ensure(p.b1 != p.b2 && cycle_blocks.contains(&&p.b1) && cycle_blocks.contains(&&p.b2), "two cycle blocks")?;
                ensure(p.b1.contains(p.x) && p.b2.contains(p.x), "cycles meet at the cut vertex")?;
                let (g, _) = h.induced_subgraph(&p.h_x).map_err(|e| e.to_string())?;
                ensure(g.is_connected() && p.h_x.contains(p.x), "H_x is connected and holds x")
            }
            CaseLabel::CrickMinor(p) | CaseLabel::CrickTM(p) => {
                ensure(cuts.len() == 1 && cuts.contains(p.x), "exactly one cut vertex")?;
                ensure(cycle_blocks.len() == 1, "exactly one cycle")?;
                ensure(p.s >= 2 && h.degree_one_vertices().len() == p.s, "at least two leaves")?;
                ensure(find_minor_model(h, &named::banner()).is_none(), "H must not be a banner minor")
            }
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Component of `h \ removed` containing `anchor`, in `h`'s ids.
fn component_avoiding(h: &Graph, removed: &VertexSet, anchor: Vertex) -> VertexSet {
    let (g, remap) = h.remove_vertices(removed).expect("in range");
    let a = remap.map(anchor).expect("anchor survives");
    g.connected_components()
        .into_iter()
        .find(|c| c.contains(a))
        .unwrap()
        .iter()
        .map(|v| remap.new_to_old[v][0])
        .collect()
}

fn is_cycle_block(b: &VertexSet) -> bool {
    b.len() >= 3
}

fn three_cut_payload(h: &Graph, tree: &BlockCutTree) -> Option<ThreeCutPayload> {
    let cuts = &tree.cut_vertices;
    for ba in tree.leaf_blocks() {
        let Some(&a) = tree.cuts_of(ba).first() else { continue };
        for bac in tree.blocks_at(a) {
            if bac == ba {
                continue;
            }
            for c in tree.cuts_of(bac) {
                if c == a {
                    continue;
                }
                for bcb in tree.blocks_at(c) {
                    if bcb == bac {
                        continue;
                    }
                    for b in tree.cuts_of(bcb) {
                        if b == c {
                            continue;
                        }
                        for bb in tree.blocks_at(b) {
                            if bb == bcb {
                                continue;
                            }
                            debug_assert!(cuts.contains(b));
                            let a_prime = tree.blocks[ba].iter().find(|&v| v != a).unwrap();
                            let r = tree.blocks[bb].iter().find(|&v| v != b).unwrap();
                            let r_a = component_avoiding(h, &VertexSet::from([a_prime, c]), a);
                            let r_b = component_avoiding(h, &VertexSet::from([c, r]), b);
                            let r_c = component_avoiding(h, &r_a.union(&r_b), c);
                            let r_r = component_avoiding(h, &r_b, r);
                            return Some(ThreeCutPayload {
                                a,
                                c,
                                b,
                                a_prime,
                                r,
                                path_blocks: [
                                    tree.blocks[ba].clone(),
                                    tree.blocks[bac].clone(),
                                    tree.blocks[bcb].clone(),
                                    tree.blocks[bb].clone(),
                                ],
                                r_a,
                                r_b,
                                r_c,
                                r_r,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Has at least one cycle among the given vertices (in the graph `h`).
fn side_has_cycle(h: &Graph, side: &VertexSet) -> bool {
    let (g, _) = h.induced_subgraph(side).expect("in range");
    g.cycle_rank() > 0
}

/// Payload for a single forbidden graph in class C.
pub fn hard_gene_payload(fam: &[Graph]) -> Result<HardGenePayload> {
    check_connected_collection(fam)?;
    let mut best: Option<(usize, BesfFunction)> = None;
    for (idx, h) in fam.iter().enumerate() {
        if max_block_edges(h) < 5 {
            return Err(Error::NotInScope(format!(
                "family member {idx} has no block with at least five edges"
            )));
        }
        let f = besf(h)?;
        if best.as_ref().is_none_or(|(_, g)| besf_cmp(&f, g) == Ordering::Less) {
            best = Some((idx, f));
        }
    }
    let (member, _) = best.unwrap();
    let h = &fam[member];
    let cut = k_edges_leaf_block_cut(h, 5)?;
    let v_prime = h
        .neighbors(cut.pivot)
        .iter()
        .copied()
        .find(|&w| cut.block.contains(w))
        .unwrap();
    Ok(HardGenePayload { member, cut, v_prime })
}

/// Picks the construction that applies to `h` under `rel`, following the
/// case analysis for single forbidden graphs.
pub fn classify_case(h: &Graph, rel: Relation) -> Result<CaseLabel> {
    if h.n() < 2 || !h.is_connected() {
        return Err(Error::Input("the forbidden graph must be connected with at least two vertices".into()));
    }
    let flags = class_membership(h);
    if !flags.in_q {
        return Ok(CaseLabel::NotInScope);
    }
    if let Some(p) = star_leaves(h) {
        return Ok(match rel {
            Relation::Minor => {
                let centre = h.vertices().max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v))).unwrap();
                CaseLabel::TwoCut(TwoCutPayload {
                    x: centre,
                    y: None,
                    s_x: p - 2,
                    s_y: 2,
                    p,
                })
            }
            Relation::TopologicalMinor => CaseLabel::NotInScope,
        });
    }
    if flags.in_c {
        return Ok(CaseLabel::HardGene(hard_gene_payload(std::slice::from_ref(h))?));
    }

    let tree = block_cut_tree(h)?;
    let cuts = &tree.cut_vertices;
    let cycles: Vec<&VertexSet> = tree.blocks.iter().filter(|b| is_cycle_block(b)).collect();
    let cut_count = |b: &VertexSet| b.iter().filter(|&v| cuts.contains(v)).count();

    let loaded: Vec<&VertexSet> = cycles.iter().copied().filter(|b| cut_count(b) >= 2).collect();
    if loaded.len() == 1 {
        return Ok(CaseLabel::CycleTwoCut(cycle_two_cut(h, loaded[0])));
    }

    if cuts.len() >= 3 && !tree.blocks.iter().any(|b| cuts.is_subset(b)) {
        if let Some(p) = three_cut_payload(h, &tree) {
            return Ok(CaseLabel::ThreeCut(p));
        }
    }

    if cuts.len() == 2 {
        let x0 = cuts.first().unwrap();
        let y0 = cuts.max().unwrap();
        let shared = tree
            .blocks
            .iter()
            .find(|b| b.contains(x0) && b.contains(y0))
            .expect("two cut vertices share a block");
        if is_cycle_block(shared) {
            return Ok(CaseLabel::CycleTwoCut(cycle_two_cut(h, shared)));
        }
        // Remove the bridge and look at the two sides.
        let mut g = h.clone();
        g.remove_edge(x0, y0);
        let side_of = |v: Vertex| -> VertexSet {
            g.connected_components().into_iter().find(|c| c.contains(v)).unwrap()
        };
        let (sx, sy) = (side_of(x0), side_of(y0));
        let (cx, cy) = (side_has_cycle(h, &sx), side_has_cycle(h, &sy));
        return Ok(match (cx, cy) {
            (true, true) => CaseLabel::CycleStarTwoCut(CycleStarTwoCutPayload { v: x0, v_prime: y0 }),
            (true, false) | (false, true) => {
                let (x, y) = if cx { (x0, y0) } else { (y0, x0) };
                let cycle = cycles
                    .iter()
                    .copied()
                    .filter(|b| b.contains(x))
                    .min_by_key(|b| (b.len(), b.to_vec()))
                    .unwrap()
                    .clone();
                let mut removed = cycle.clone();
                removed.insert(y);
                removed.remove(x);
                let h_x = component_avoiding(h, &removed, x);
                let h_y = component_avoiding(h, &VertexSet::from([x]), y);
                CaseLabel::Commander(CommanderPayload { x, y, cycle, h_x, h_y })
            }
            (false, false) => {
                let pend = |c: Vertex| h.neighbors(c).iter().filter(|&&w| h.degree(w) == 1).count();
                CaseLabel::TwoCut(TwoCutPayload {
                    x: x0,
                    y: Some(y0),
                    s_x: pend(x0),
                    s_y: pend(y0),
                    p: h.degree_one_vertices().len(),
                })
            }
        });
    }

    if cuts.len() == 1 {
        let x = cuts.first().unwrap();
        if cycles.len() >= 2 {
            let mut at_x: Vec<&VertexSet> = cycles.iter().copied().filter(|b| b.contains(x)).collect();
            at_x.sort_by_key(|b| (b.len(), b.to_vec()));
            let (b1, b2) = (at_x[0].clone(), at_x[1].clone());
            let mut removed = b1.union(&b2);
            removed.remove(x);
            let h_x = h.all_vertices().difference(&removed);
            return Ok(CaseLabel::Butternut(ButternutPayload { x, b1, b2, h_x }));
        }
        if cycles.len() == 1 {
            let payload = CrickPayload {
                x,
                s: h.degree_one_vertices().len(),
            };
            return Ok(match rel {
                Relation::Minor => CaseLabel::CrickMinor(payload),
                Relation::TopologicalMinor => CaseLabel::CrickTM(payload),
            });
        }
    }
    Ok(CaseLabel::NotInScope)
}

fn cycle_two_cut(h: &Graph, block: &VertexSet) -> CycleTwoCutPayload {
    let (v, v_prime) = h
        .edges()
        .into_iter()
        .find(|&(u, w)| block.contains(u) && block.contains(w))
        .expect("a cycle block has edges");
    CycleTwoCutPayload {
        block: block.clone(),
        v,
        v_prime,
    }
}

/// Single-line machine-readable classification record.
pub fn classification_record(h: &Graph, rel: Relation) -> Result<(String, CaseLabel)> {
    let flags = class_membership(h);
    let case = classify_case(h, rel)?;
    Ok((
        format!(
            "case={} in_C={} in_Q={} in_S={} banner_minor={}",
            case.name(),
            flags.in_c,
            flags.in_q,
            flags.in_s,
            flags.banner_minor
        ),
        case,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn two_k4s() -> Graph {
        // Two K4s sharing vertex 3.
        let mut g = complete(4);
        for _ in 0..3 {
            g.add_vertex();
        }
        for (u, v) in [(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)] {
            g.add_edge(u, v);
        }
        g
    }

    #[test]
    fn besf_examples() {
        assert_eq!(besf(&path(2)).unwrap().steps, vec![(0, 1), (2, 0)]);
        let b = besf(&banner()).unwrap();
        assert_eq!(b.steps, vec![(0, 5), (2, 4), (5, 0)]);
        assert_eq!((0..7).map(|x| b.eval(x)).collect::<Vec<_>>(), vec![5, 5, 4, 4, 4, 0, 0]);
        assert_eq!(besf(&complete(4)).unwrap().steps, vec![(0, 6), (7, 0)]);
        assert!(besf(&Graph::new(2)).is_err());
    }

    #[test]
    fn besf_ordering() {
        let banner_f = besf(&banner()).unwrap();
        let k4 = besf(&complete(4)).unwrap();
        assert_eq!(besf_compare(&banner_f, &k4), BesfOrder::Less(5));
        assert_eq!(besf_compare(&k4, &banner_f), BesfOrder::Greater(5));
        assert_eq!(besf_compare(&k4, &k4), BesfOrder::Equal);
        let k2 = besf(&path(2)).unwrap();
        let p3 = besf(&path(3)).unwrap();
        assert_eq!(besf_compare(&k2, &p3), BesfOrder::Less(1));
    }

    #[test]
    fn leaf_block_cuts() {
        let cut = k_edges_leaf_block_cut(&complete(4), 5).unwrap();
        assert_eq!(cut.x_side, VertexSet::from([0]));
        assert_eq!(cut.y_side, complete(4).all_vertices());
        cut.validate(&complete(4), 5).unwrap();

        let g = two_k4s();
        let cut = k_edges_leaf_block_cut(&g, 5).unwrap();
        assert_eq!(cut.pivot, 3);
        assert_eq!(cut.block, VertexSet::from([0, 1, 2, 3]));
        assert_eq!(cut.x_side, VertexSet::from([3, 4, 5, 6]));
        cut.validate(&g, 5).unwrap();

        assert!(k_edges_leaf_block_cut(&banner(), 5).is_err());

        // K4 with a pendant path: the path is peeled, pivot is K4's cut vertex.
        let mut g = complete(4);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(2, a);
        g.add_edge(a, b);
        let cut = k_edges_leaf_block_cut(&g, 5).unwrap();
        assert_eq!(cut.pivot, 2);
        assert_eq!(cut.y_side, VertexSet::from([0, 1, 2, 3]));
        assert_eq!(cut.x_side, VertexSet::from([2, a, b]));
        cut.validate(&g, 5).unwrap();
    }

    #[test]
    fn essential_pairs() {
        let p = essential_pair(&[cycle(3)]).unwrap();
        assert_eq!((p.first, p.second), (0, 1));
        assert_eq!(p.core.n(), 1);

        let p = essential_pair(&[path(3)]).unwrap();
        assert_eq!(p.block.len(), 2);
        assert_eq!(p.first, 1);
        assert_eq!(p.core, path(2));

        let p = essential_pair(&[banner(), complete(4)]).unwrap();
        assert_eq!(p.host, 0);
        assert_eq!(p.block, VertexSet::from([0, 4]));
        assert_eq!((p.first, p.second), (0, 4));
        assert!(essential_pair(&[]).is_err());
        assert!(essential_pair(&[Graph::new(1)]).is_err());
    }

    #[test]
    fn class_examples() {
        let p5 = class_membership(&path(5));
        assert!(p5.in_q && p5.banner_minor && !p5.in_c);
        let k14 = class_membership(&star(4));
        assert!(k14.in_s && k14.in_q && !k14.in_c && !k14.banner_minor);
        assert!(!class_membership(&chair()).in_q);
        assert!(!class_membership(&banner()).in_q);
        assert!(class_membership(&complete(4)).in_c);
    }

    #[test]
    fn dispatcher_examples() {
        let case = classify_case(&path(5), Relation::Minor).unwrap();
        assert_eq!(case.name(), "ThreeCut");
        case.validate(&path(5)).unwrap();
        if let CaseLabel::ThreeCut(p) = &case {
            assert_eq!((p.a, p.c, p.b, p.a_prime, p.r), (1, 2, 3, 0, 4));
        }
        for rel in [Relation::Minor, Relation::TopologicalMinor] {
            assert_eq!(classify_case(&complete(4), rel).unwrap().name(), "HardGene");
        }
        assert_eq!(classify_case(&cricket(), Relation::Minor).unwrap().name(), "CrickMinor");
        assert_eq!(classify_case(&cricket(), Relation::TopologicalMinor).unwrap().name(), "CrickTM");
        let star_case = classify_case(&star(4), Relation::Minor).unwrap();
        assert_eq!(
            star_case,
            CaseLabel::TwoCut(TwoCutPayload {
                x: 0,
                y: None,
                s_x: 2,
                s_y: 2,
                p: 4
            })
        );
        assert_eq!(classify_case(&star(4), Relation::TopologicalMinor).unwrap(), CaseLabel::NotInScope);
        assert_eq!(classify_case(&chair(), Relation::Minor).unwrap(), CaseLabel::NotInScope);
        assert!(classify_case(&Graph::new(1), Relation::Minor).is_err());
    }

    #[test]
    fn hard_gene_derived_graphs() {
        let CaseLabel::HardGene(p) = classify_case(&complete(4), Relation::TopologicalMinor).unwrap() else {
            panic!("expected HardGene");
        };
        let (hx, _) = p.h_x(&complete(4));
        assert_eq!(hx.n(), 1);
        let (hy, v, vp) = p.h_y_minus(&complete(4));
        assert!(are_isomorphic(&hy, &diamond()));
        assert!(!hy.has_edge(v, vp));
    }
}
