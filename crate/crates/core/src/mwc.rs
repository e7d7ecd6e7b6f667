//! FPT multiway cut solver and the shared vertex min-cut kernel.
//!
//! The solver branches over important separators between one terminal and
//! the rest, which keeps the search tree within `O(4^k)` nodes. Vertex
//! capacities are realized by the usual in/out splitting with unit
//! capacity on the internal arc.

use std::collections::VecDeque;

use crate::undirected::UndirectedGraph;
use crate::{Error, Result};

/// Multiway cut instance: delete at most `k` non-terminal vertices so that
/// no two terminals share a connected component.
#[derive(Debug, Clone)]
pub struct MwcInstance {
    pub graph: UndirectedGraph,
    /// Sorted, deduplicated terminal ids.
    pub terminals: Vec<usize>,
    pub k: usize,
}

impl MwcInstance {
    pub fn new(graph: UndirectedGraph, mut terminals: Vec<usize>, k: usize) -> Result<Self> {
        terminals.sort_unstable();
        terminals.dedup();
        if let Some(&t) = terminals.iter().find(|&&t| t >= graph.vertex_count()) {
            return Err(Error::VertexOutOfRange(t));
        }
        Ok(MwcInstance { graph, terminals, k })
    }
}

/// Search statistics; `nodes` counts recursion nodes of both the branching
/// search and the separator enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct MwcStats {
    pub nodes: usize,
}

const INF: u32 = u32::MAX / 2;

/// Unit-capacity flow network over split vertices with BFS augmentation.
struct FlowNet {
    to: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, u: usize, v: usize, cap: u32) {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.adj[v].push(e + 1);
    }

    /// Push one unit along a shortest augmenting path, if any.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(e);
                    if v == t {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some(e) = pred[v] {
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }

    /// Nodes that can reach `t` through positive-residual arcs.
    fn reaches_sink(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                // Walk backwards: u can step to v when the forward arc
                // u -> v has residual, i.e. the reverse entry e^1 has cap.
                let u = self.to[e];
                if self.cap[e ^ 1] > 0 && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Split-vertex network between merged source set `a` and sink set `b`.
/// Interior vertex v maps to nodes 2v (in) and 2v+1 (out).
struct CutNetwork {
    net: FlowNet,
    source: usize,
    sink: usize,
    direct_edge: bool,
}

fn build_cut_network(
    g: &UndirectedGraph,
    removed: &[bool],
    in_a: &[bool],
    in_b: &[bool],
) -> CutNetwork {
    let n = g.vertex_count();
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    let mut direct_edge = false;

    for v in 0..n {
        if !removed[v] && !in_a[v] && !in_b[v] {
            net.add(2 * v, 2 * v + 1, 1);
        }
    }
    for &(u, v) in g.edges() {
        if removed[u] || removed[v] {
            continue;
        }
        match ((in_a[u], in_b[u]), (in_a[v], in_b[v])) {
            ((true, _), (true, _)) | ((_, true), (_, true)) => {}
            ((true, _), (_, true)) | ((_, true), (true, _)) => direct_edge = true,
            ((true, _), _) => net.add(source, 2 * v, INF),
            (_, (true, _)) => net.add(source, 2 * u, INF),
            ((_, true), _) => net.add(2 * v + 1, sink, INF),
            (_, (_, true)) => net.add(2 * u + 1, sink, INF),
            _ => {
                net.add(2 * u + 1, 2 * v, INF);
                net.add(2 * v + 1, 2 * u, INF);
            }
        }
    }
    CutNetwork { net, source, sink, direct_edge }
}

fn flags(n: usize, set: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n];
    for &v in set {
        out[v] = true;
    }
    out
}

/// Minimum number of interior vertices (outside `a` and `b`) whose removal
/// disconnects `a` from `b`, computed exactly up to `cap`; returns `cap + 1`
/// when the cut is larger, and in particular when a direct `a`-`b` edge
/// makes the pair uncuttable.
pub fn min_vertex_cut(g: &UndirectedGraph, a: &[usize], b: &[usize], cap: usize) -> usize {
    let n = g.vertex_count();
    let removed = vec![false; n];
    min_vertex_cut_masked(g, &removed, &flags(n, a), &flags(n, b), cap)
}

fn min_vertex_cut_masked(
    g: &UndirectedGraph,
    removed: &[bool],
    in_a: &[bool],
    in_b: &[bool],
    cap: usize,
) -> usize {
    let mut net = build_cut_network(g, removed, in_a, in_b);
    if net.direct_edge {
        return cap + 1;
    }
    let mut flow = 0;
    while flow <= cap && net.net.augment(net.source, net.sink) {
        flow += 1;
    }
    flow.min(cap + 1)
}

/// Enumerate vertex separators between `a` and `b` of size at most `k`,
/// covering every important separator (the enumeration may also emit some
/// further minimal separators, which is harmless for the callers here).
/// Every emitted set is a valid `a`-`b` separator disjoint from both sides.
fn enumerate_separators(
    g: &UndirectedGraph,
    adj: &[Vec<usize>],
    removed: &mut Vec<bool>,
    in_a: &mut Vec<bool>,
    in_b: &[bool],
    k: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut usize,
) {
    *nodes += 1;
    let mut net = build_cut_network(g, removed, in_a, in_b);
    if net.direct_edge {
        return;
    }
    let mut flow = 0;
    while flow <= k && net.net.augment(net.source, net.sink) {
        flow += 1;
    }
    if flow > k {
        return;
    }
    if flow == 0 {
        let mut sep = prefix.clone();
        sep.sort_unstable();
        out.push(sep);
        return;
    }

    // Minimum cut pushed toward b: vertices whose out-node still reaches
    // the sink in the residual network while the in-node does not.
    let reach = net.net.reaches_sink(net.sink);
    let cut: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| {
            !removed[v] && !in_a[v] && !in_b[v] && !reach[2 * v] && reach[2 * v + 1]
        })
        .collect();
    debug_assert_eq!(cut.len(), flow);

    // Source side of that cut, absorbed into a for both branches.
    let mut r_max = in_a.clone();
    let mut queue: VecDeque<usize> =
        (0..g.vertex_count()).filter(|&v| in_a[v]).collect();
    let cut_flags = flags(g.vertex_count(), &cut);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !removed[v] && !cut_flags[v] && !r_max[v] {
                r_max[v] = true;
                queue.push_back(v);
            }
        }
    }
    debug_assert!(r_max.iter().zip(in_b).all(|(&r, &b)| !(r && b)));

    let pivot = cut[0];
    let saved_a = std::mem::replace(in_a, r_max);

    // Branch: pivot joins the separator.
    removed[pivot] = true;
    prefix.push(pivot);
    enumerate_separators(g, adj, removed, in_a, in_b, k - 1, prefix, out, nodes);
    prefix.pop();
    removed[pivot] = false;

    // Branch: pivot stays on the source side.
    in_a[pivot] = true;
    enumerate_separators(g, adj, removed, in_a, in_b, k, prefix, out, nodes);

    *in_a = saved_a;
}

/// Solve the instance: a set of at most `k` non-terminal vertices whose
/// removal pairwise separates the terminals, or `None` if no such set
/// exists. Deterministic: candidate separators are explored smallest and
/// lexicographically first.
pub fn solve_mwc(inst: &MwcInstance) -> Option<Vec<usize>> {
    solve_mwc_with_stats(inst).0
}

pub fn solve_mwc_with_stats(inst: &MwcInstance) -> (Option<Vec<usize>>, MwcStats) {
    let mut stats = MwcStats::default();
    let n = inst.graph.vertex_count();
    let term_flags = flags(n, &inst.terminals);

    // Adjacent terminals can never be separated by non-terminal deletions.
    for &(u, v) in inst.graph.edges() {
        if term_flags[u] && term_flags[v] {
            return (None, stats);
        }
    }

    let adj = inst.graph.adjacency();
    let mut removed = vec![false; n];
    let result = mwc_branch(inst, &adj, &term_flags, &mut removed, inst.k, &mut stats);
    (result, stats)
}

fn mwc_branch(
    inst: &MwcInstance,
    adj: &[Vec<usize>],
    term_flags: &[bool],
    removed: &mut Vec<bool>,
    k: usize,
    stats: &mut MwcStats,
) -> Option<Vec<usize>> {
    stats.nodes += 1;
    let active = match connected_terminal(inst, adj, removed) {
        Some(t) => t,
        None => return Some(Vec::new()),
    };

    let mut in_a = flags(adj.len(), &[active]);
    let in_b: Vec<bool> = (0..adj.len())
        .map(|v| term_flags[v] && v != active && !removed[v])
        .collect();
    let mut seps = Vec::new();
    let mut prefix = Vec::new();
    enumerate_separators(
        &inst.graph,
        adj,
        removed,
        &mut in_a,
        &in_b,
        k,
        &mut prefix,
        &mut seps,
        &mut stats.nodes,
    );
    seps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    for sep in seps {
        for &v in &sep {
            removed[v] = true;
        }
        let sub = mwc_branch(inst, adj, term_flags, removed, k - sep.len(), stats);
        for &v in &sep {
            removed[v] = false;
        }
        if let Some(rest) = sub {
            let mut sol = sep;
            sol.extend(rest);
            sol.sort_unstable();
            return Some(sol);
        }
    }
    None
}

/// Lowest-id terminal that still reaches another terminal.
fn connected_terminal(
    inst: &MwcInstance,
    adj: &[Vec<usize>],
    removed: &[bool],
) -> Option<usize> {
    for &t in &inst.terminals {
        if removed[t] {
            continue;
        }
        let mut seen = vec![false; adj.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if removed[v] || seen[v] {
                    continue;
                }
                if inst.terminals.binary_search(&v).is_ok() {
                    return Some(t);
                }
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Flood-fill check that `xs` pairwise separates the terminals.
pub fn is_mwc_solution(inst: &MwcInstance, xs: &[usize]) -> bool {
    if xs.iter().any(|v| inst.terminals.binary_search(v).is_ok()) {
        return false;
    }
    let mut removed = flags(inst.graph.vertex_count(), xs);
    for &t in &inst.terminals {
        removed[t] = false;
    }
    let comp = inst.graph.components_excluding(&removed);
    for (i, &t1) in inst.terminals.iter().enumerate() {
        for &t2 in &inst.terminals[i + 1..] {
            if comp[t1] == comp[t2] {
                return false;
            }
        }
    }
    true
}
