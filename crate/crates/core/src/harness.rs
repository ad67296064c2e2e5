//! Desk-scale verification of the framework reductions: brute-force PIS,
//! the structured deletion search, witness checks, and the aggregated
//! equivalence report.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minors::{contains, Relation, SearchLimits};
use crate::reductions::{
    build_enhanced_framework, embed_solution, lift_solution, witness_subgraph, Framework, Owner, PisInstance,
};

/// Largest `k` the brute-force PIS solver accepts by default.
pub const DEFAULT_MAX_K: usize = 8;

pub fn solve_pis(inst: &PisInstance) -> Result<Option<Vec<usize>>> {
    solve_pis_limited(inst, DEFAULT_MAX_K)
}

/// Lexicographically first solution by brute force over all `k!` column
/// assignments.
pub fn solve_pis_limited(inst: &PisInstance, max_k: usize) -> Result<Option<Vec<usize>>> {
    if inst.k > max_k {
        return Err(Error::Refused(format!("k = {} exceeds the PIS limit {max_k}", inst.k)));
    }
    fn go(inst: &PisInstance, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == inst.k {
            return true;
        }
        for j in 0..inst.k {
            if used[j] || (0..i).any(|i0| inst.has_edge((i0, perm[i0]), (i, j))) {
                continue;
            }
            used[j] = true;
            perm.push(j);
            if go(inst, perm, used) {
                return true;
            }
            perm.pop();
            used[j] = false;
        }
        false
    }
    let mut perm = Vec::with_capacity(inst.k);
    let mut used = vec![false; inst.k];
    Ok(go(inst, &mut perm, &mut used).then_some(perm))
}

/// Checks every component of `fw − s` against the family. Returns the first
/// component containing a member, or `None` if the residual is family-free.
pub struct ResidualChecker<'a> {
    fw: &'a Framework,
    limits: SearchLimits,
    cache: HashMap<(usize, Vec<(Vertex, Vertex)>), bool>,
}

impl<'a> ResidualChecker<'a> {
    pub fn new(fw: &'a Framework, limits: SearchLimits) -> Self {
        ResidualChecker {
            fw,
            limits,
            cache: HashMap::new(),
        }
    }

    /// Whether the induced subgraph on `set` contains some family member.
    pub fn subgraph_contains(&mut self, set: &VertexSet) -> Result<bool> {
        let (g, _) = self.fw.graph.induced_subgraph(set)?;
        let key = (g.n(), g.edges());
        if let Some(&hit) = self.cache.get(&key) {
            return Ok(hit);
        }
        let rel = self.fw.params.relation;
        let mut hit = false;
        for h in &self.fw.family {
            if contains(h, &g, rel, &self.limits)? {
                hit = true;
                break;
            }
        }
        self.cache.insert(key, hit);
        Ok(hit)
    }

    pub fn offending_component(&mut self, s: &VertexSet) -> Result<Option<VertexSet>> {
        let keep = self.fw.graph.all_vertices().difference(s);
        let (rest, remap) = self.fw.graph.induced_subgraph(&keep)?;
        for comp in rest.connected_components() {
            let original: VertexSet = comp.iter().map(|v| remap.new_to_old[v][0]).collect();
            if self.subgraph_contains(&original)? {
                return Ok(Some(original));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReimitationReport {
    pub ok: bool,
    pub problems: Vec<String>,
}

/// Whether `s` keeps exactly one whole B-gadget per column of every `D^e`,
/// deletes the rest entirely, leaves every `J^e` untouched, and has size ℓ.
pub fn check_reimitation(fw: &Framework, s: &VertexSet) -> ReimitationReport {
    let k = fw.params.k;
    let mut problems = Vec::new();
    for v in s.iter() {
        if v >= fw.graph.n() {
            problems.push(format!("vertex {v} is not in the framework"));
        } else if let Owner::J(_) = fw.owner(v) {
            problems.push(format!("separator vertex {} is deleted", fw.name(v)));
        }
    }
    for e in 0..fw.num_pis_edges() {
        for j in 0..k {
            let mut survivors = 0;
            for i in 0..k {
                let gadget = fw.b_gadget(e, i, j);
                let gone = gadget.iter().filter(|&&v| s.contains(v)).count();
                if gone == 0 {
                    survivors += 1;
                } else if gone < gadget.len() {
                    problems.push(format!(
                        "B[{}][i={},j={}] is partially deleted",
                        fw.edge_key(e),
                        i + 1,
                        j + 1
                    ));
                }
            }
            if survivors != 1 {
                problems.push(format!(
                    "column j={} of D[{}] keeps {survivors} B-gadgets",
                    j + 1,
                    fw.edge_key(e)
                ));
            }
        }
    }
    if s.len() != fw.params.ell {
        problems.push(format!("size {} differs from the budget {}", s.len(), fw.params.ell));
    }
    ReimitationReport {
        ok: problems.is_empty(),
        problems,
    }
}

/// The structured candidate keeping B-gadget `rows[e][j]` in column `j` of
/// `D^e` and deleting the other rows of that column.
pub fn structured_candidate(fw: &Framework, rows: &[Vec<usize>]) -> VertexSet {
    let k = fw.params.k;
    let mut s = VertexSet::new();
    for (e, cols) in rows.iter().enumerate() {
        for (j, &keep) in cols.iter().enumerate() {
            for i in (0..k).filter(|&i| i != keep) {
                s.extend(fw.b_gadget(e, i, j).iter().copied());
            }
        }
    }
    s
}

/// Searches the `k^{km}` structured candidates in odometer order and returns
/// the first whose residual is family-free.
pub fn structured_deletion_search(fw: &Framework, limits: &SearchLimits) -> Result<Option<VertexSet>> {
    let (k, m) = (fw.params.k, fw.num_pis_edges());
    let total = u32::try_from(k * m)
        .ok()
        .and_then(|exp| k.checked_pow(exp))
        .filter(|&t| t as u64 <= limits.max_nodes)
        .ok_or_else(|| {
            Error::Refused(format!("{k}^({k}*{m}) structured candidates exceed the node limit {}", limits.max_nodes))
        })?;
    let mut checker = ResidualChecker::new(fw, *limits);
    let mut witness_cache: HashMap<(usize, usize, usize, usize), bool> = HashMap::new();
    let mut rows = vec![vec![0usize; k]; m];
    for _ in 0..total {
        if candidate_accepted(fw, &rows, &mut checker, &mut witness_cache)? {
            let s = structured_candidate(fw, &rows);
            assert_eq!(s.len(), fw.params.ell, "structured candidates always meet the budget");
            return Ok(Some(s));
        }
        // advance the odometer; the last (e, j) digit moves fastest
        for digit in (0..k * m).rev() {
            let cell = &mut rows[digit / k][digit % k];
            *cell += 1;
            if *cell < k {
                break;
            }
            *cell = 0;
        }
    }
    Ok(None)
}

fn candidate_accepted(
    fw: &Framework,
    rows: &[Vec<usize>],
    checker: &mut ResidualChecker<'_>,
    witness_cache: &mut HashMap<(usize, usize, usize, usize), bool>,
) -> Result<bool> {
    let (k, m) = (fw.params.k, fw.num_pis_edges());
    // Cheap certificates first: a retained endpoint pair of some instance
    // edge, or a retained witness configuration across consecutive gadgets.
    for e in 0..m {
        let ((i1, j1), (i2, j2)) = fw.pis_edge(e);
        if rows[e][j1] == i1 && rows[e][j2] == i2 {
            let mut pair = VertexSet::new();
            pair.extend(fw.b_gadget(e, i1, j1).iter().copied());
            pair.extend(fw.b_gadget(e, i2, j2).iter().copied());
            if checker.subgraph_contains(&pair)? {
                return Ok(false);
            }
        }
        let en = fw.next(e);
        for j in 0..k {
            let (i, i2) = (rows[e][j], rows[en][j]);
            if i == i2 {
                continue;
            }
            let key = (e, i, i2, j);
            let hit = match witness_cache.get(&key) {
                Some(&hit) => hit,
                None => {
                    let w = witness_subgraph(fw, e, i, i2, j)?;
                    let hit = checker.subgraph_contains(&w)?;
                    witness_cache.insert(key, hit);
                    hit
                }
            };
            if hit {
                return Ok(false);
            }
        }
    }
    let s = structured_candidate(fw, rows);
    Ok(checker.offending_component(&s)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl Outcome {
    fn from_refusal(err: Error) -> Outcome {
        Outcome::Inconclusive(err.to_string())
    }

    fn text(&self) -> String {
        match self {
            Outcome::Pass => "pass".into(),
            Outcome::Fail(why) => format!("fail {why}"),
            Outcome::Inconclusive(why) => format!("inconclusive {why}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub e: usize,
    pub i: usize,
    pub i2: usize,
    pub j: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub k: usize,
    pub m: usize,
    pub case: String,
    pub relation: Relation,
    pub pis_answer: Option<Vec<usize>>,
    /// Residual check of `F − S_P`; `None` on no-instances.
    pub forward: Option<Outcome>,
    /// `Ok(Some(S))`, `Ok(None)`, or the refusal message.
    pub structured: std::result::Result<Option<VertexSet>, String>,
    /// Whether the structured solution lifts back to one permutation and has
    /// the reimitation shape.
    pub round_trip: Option<Outcome>,
    pub witness_checks: Vec<WitnessCheck>,
    pub timings: Vec<(&'static str, Duration)>,
    pub verdict: Verdict,
}

impl EquivalenceReport {
    pub fn to_text(&self, timings: bool) -> String {
        let mut out = format!("instance k={} m={}\ncase={} relation={}\n", self.k, self.m, self.case, self.relation);
        match &self.pis_answer {
            Some(p) => {
                let cols: Vec<String> = p.iter().map(|j| (j + 1).to_string()).collect();
                let _ = writeln!(out, "pis=yes permutation={}", cols.join(","));
            }
            None => out.push_str("pis=no\n"),
        }
        if let Some(f) = &self.forward {
            let _ = writeln!(out, "forward={}", f.text());
        }
        match &self.structured {
            Ok(Some(s)) => {
                let _ = writeln!(out, "structured=yes size={}", s.len());
            }
            Ok(None) => out.push_str("structured=no\n"),
            Err(why) => {
                let _ = writeln!(out, "structured=inconclusive {why}");
            }
        }
        if let Some(rt) = &self.round_trip {
            let _ = writeln!(out, "round_trip={}", rt.text());
        }
        let passed = self.witness_checks.iter().filter(|w| w.outcome == Outcome::Pass).count();
        for w in &self.witness_checks {
            if w.outcome != Outcome::Pass {
                let _ = writeln!(
                    out,
                    "witness e={} i={} i'={} j={} {}",
                    w.e + 1,
                    w.i + 1,
                    w.i2 + 1,
                    w.j + 1,
                    w.outcome.text()
                );
            }
        }
        let _ = writeln!(out, "witnesses={passed}/{}", self.witness_checks.len());
        if timings {
            for (name, d) in &self.timings {
                let _ = writeln!(out, "time {name} {:.3}s", d.as_secs_f64());
            }
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "verdict={verdict}");
        out
    }
}

/// Runs the full pipeline on one instance. Out-of-scope families and invalid
/// inputs are errors; search refusals make the report inconclusive.
pub fn verify_equivalence(
    fam: &[Graph],
    inst: &PisInstance,
    rel: Relation,
    limits: &SearchLimits,
) -> Result<EquivalenceReport> {
    let mut timings = Vec::new();
    let clock = Instant::now();
    let fw = build_enhanced_framework(fam, inst, rel)?;
    timings.push(("build", clock.elapsed()));

    let clock = Instant::now();
    let pis_answer = solve_pis(&fw.instance)?;
    timings.push(("pis", clock.elapsed()));

    let clock = Instant::now();
    let mut checker = ResidualChecker::new(&fw, *limits);
    let forward = match &pis_answer {
        None => None,
        Some(perm) => {
            let s = embed_solution(&fw, perm)?;
            Some(match checker.offending_component(&s) {
                Ok(None) => Outcome::Pass,
                Ok(Some(comp)) => Outcome::Fail(format!("component {comp}")),
                Err(err) => Outcome::from_refusal(err),
            })
        }
    };
    timings.push(("forward", clock.elapsed()));

    let clock = Instant::now();
    let structured = structured_deletion_search(&fw, limits).map_err(|e| e.to_string());
    let round_trip = match &structured {
        Ok(Some(s)) => {
            let lifted = lift_solution(&fw, s);
            let shape = check_reimitation(&fw, s);
            Some(if !lifted.consistent {
                Outcome::Fail("structured solution does not lift to a permutation".into())
            } else if !shape.ok {
                Outcome::Fail(shape.problems.join("; "))
            } else {
                Outcome::Pass
            })
        }
        _ => None,
    };
    timings.push(("structured", clock.elapsed()));

    let clock = Instant::now();
    let k = fw.params.k;
    let mut witness_checks = Vec::new();
    for e in 0..fw.num_pis_edges() {
        for i in 0..k {
            for i2 in (0..k).filter(|&x| x != i) {
                for j in 0..k {
                    let outcome = match witness_subgraph(&fw, e, i, i2, j).and_then(|w| checker.subgraph_contains(&w)) {
                        Ok(true) => Outcome::Pass,
                        Ok(false) => Outcome::Fail("no forbidden graph in the witness".into()),
                        Err(err) => Outcome::from_refusal(err),
                    };
                    witness_checks.push(WitnessCheck { e, i, i2, j, outcome });
                }
            }
        }
    }
    timings.push(("witnesses", clock.elapsed()));

    let mut outcomes: Vec<&Outcome> = forward.iter().chain(round_trip.iter()).collect();
    outcomes.extend(witness_checks.iter().map(|w| &w.outcome));
    let structured_matches = match &structured {
        Ok(found) => found.is_some() == pis_answer.is_some(),
        Err(_) => true,
    };
    let verdict = if outcomes.iter().any(|o| matches!(o, Outcome::Fail(_))) || !structured_matches {
        Verdict::Fail
    } else if structured.is_err() || outcomes.iter().any(|o| matches!(o, Outcome::Inconclusive(_))) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(EquivalenceReport {
        k,
        m: fw.num_pis_edges(),
        case: fw.case.name().to_string(),
        relation: rel,
        pis_answer,
        forward,
        structured,
        round_trip,
        witness_checks,
        timings,
        verdict,
    })
}
