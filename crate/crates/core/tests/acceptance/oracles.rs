//! Brute-force reference implementations, written independently of the
//! library's search code.

use minorforge::graph::Graph;

/// Whether `g` has a vertex cover with at most `k` vertices.
pub fn has_vertex_cover(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let edges = g.edges();
    (0u32..(1 << n)).any(|mask| {
        mask.count_ones() as usize <= k && edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
    })
}

/// Minor containment by enumerating every map from `V(g)` to the branch sets
/// of `h` (or to "unused").
pub fn is_minor_by_branch_sets(h: &Graph, g: &Graph) -> bool {
    let (p, n) = (h.n(), g.n());
    if p == 0 {
        return true;
    }
    if p > n {
        return false;
    }
    let mut assign = vec![0; n];
    loop {
        if model_ok(h, g, &assign) {
            return true;
        }
        // odometer over {0, .., p} per host vertex, where p means unused
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            assign[i] += 1;
            if assign[i] <= p {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn model_ok(h: &Graph, g: &Graph, assign: &[usize]) -> bool {
    let p = h.n();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); p];
    for (v, &x) in assign.iter().enumerate() {
        if x < p {
            members[x].push(v);
        }
    }
    if members.iter().any(Vec::is_empty) {
        return false;
    }
    for set in &members {
        // connectivity of the branch set by flood fill
        let mut seen = vec![set[0]];
        let mut idx = 0;
        while idx < seen.len() {
            let u = seen[idx];
            idx += 1;
            for &w in g.neighbors(u) {
                if assign[w] == assign[set[0]] && !seen.contains(&w) {
                    seen.push(w);
                }
            }
        }
        if seen.len() != set.len() {
            return false;
        }
    }
    h.edges().iter().all(|&(x, y)| {
        members[x]
            .iter()
            .any(|&u| g.neighbors(u).iter().any(|&w| assign[w] == y))
    })
}
