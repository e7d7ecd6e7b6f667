//! Shared test machinery: seeded instance generators and independent
//! reference oracles (cycle enumeration, bipartiteness, forest checks,
//! path-value enumeration) that never touch the solver code paths they
//! are used to judge.

#![allow(dead_code)]

use gfvs::compress::{CompressionInstance, UntangledInstance};
use gfvs::{GroupElement, GroupOracle, GroupSpec, LabeledGraph, UndirectedGraph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The finite group kinds exercised by the randomized suites.
pub fn finite_oracles() -> Vec<GroupOracle> {
    vec![
        GroupOracle::cyclic(2).unwrap(),
        GroupOracle::cyclic(3).unwrap(),
        GroupOracle::bitvector(2),
        GroupOracle::symmetric(3).unwrap(),
    ]
}

pub fn random_element(r: &mut ChaCha8Rng, oracle: &GroupOracle) -> GroupElement {
    match oracle.spec() {
        GroupSpec::Cyclic(n) => oracle.residue(r.random_range(0..n)).unwrap(),
        GroupSpec::BitVector(m) => {
            let bits: Vec<bool> = (0..m).map(|_| r.random()).collect();
            oracle.bits(&bits).unwrap()
        }
        GroupSpec::Symmetric(n) => {
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(r);
            oracle.permutation(&images).unwrap()
        }
        GroupSpec::Free(bound) => {
            // Single-token labels keep word growth proportional to walk length.
            let gens = bound.unwrap_or(5).min(5);
            match r.random_range(0..2 * gens + 1) {
                0 => oracle.identity(),
                t => {
                    let id = (t - 1) / 2 + 1;
                    let neg = t % 2 == 0;
                    oracle.free_reduce(&[(id, neg)]).unwrap()
                }
            }
        }
    }
}

/// Random simple labeled graph with `n` vertices and up to `m` edges.
pub fn random_labeled_graph(
    r: &mut ChaCha8Rng,
    oracle: &GroupOracle,
    n: usize,
    m: usize,
) -> LabeledGraph {
    let mut g = LabeledGraph::new(n, oracle.clone());
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let u = r.random_range(0..n);
        let v = r.random_range(0..n);
        if u == v || g.label(u, v).is_some() {
            continue;
        }
        g.add_edge(u, v, random_element(r, oracle)).unwrap();
    }
    g
}

/// Random undirected multigraph (parallel edges possible, no loops).
pub fn random_undirected(r: &mut ChaCha8Rng, n: usize, m: usize) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let u = r.random_range(0..n);
        let v = r.random_range(0..n);
        if u != v {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random compression instance whose promise holds: deleting `z` leaves
/// no non-null cycle. Rejection-sample a few times, then force the
/// promise by relabeling interior edges with the identity.
pub fn random_compression(
    r: &mut ChaCha8Rng,
    oracle: &GroupOracle,
    n: usize,
    m: usize,
    k: usize,
    z_max: usize,
) -> CompressionInstance {
    for attempt in 0..6 {
        let graph = random_labeled_graph(r, oracle, n, m);
        let z_size = r.random_range(1..=z_max.min(n));
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(r);
        let z: Vec<usize> = ids[..z_size].to_vec();
        if graph.delete_vertices(&z).is_solution(&[]) {
            return CompressionInstance::new(graph, k, z).unwrap();
        }
        if attempt == 5 {
            let mut forced = LabeledGraph::new(n, oracle.clone());
            let in_z = |v: usize| z.contains(&v);
            for (u, v, label) in graph.underlying_edges() {
                let label = if in_z(u) || in_z(v) { label.clone() } else { oracle.identity() };
                forced.add_edge(u, v, label).unwrap();
            }
            return CompressionInstance::new(forced, k, z).unwrap();
        }
    }
    unreachable!()
}

/// All simple cycles of length >= 3, one canonical representative each:
/// smallest vertex first, and the smaller of the two orientations.
pub fn enumerate_simple_cycles(g: &LabeledGraph) -> Vec<Vec<usize>> {
    fn dfs(
        g: &LabeledGraph,
        start: usize,
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        for (v, _) in g.arcs_from(u) {
            if v == start {
                if path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(path.clone());
                }
            } else if v > start && !used[v] {
                used[v] = true;
                path.push(v);
                dfs(g, start, path, used, out);
                path.pop();
                used[v] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    for start in g.vertices() {
        used[start] = true;
        let mut path = vec![start];
        dfs(g, start, &mut path, &mut used, &mut out);
        used[start] = false;
    }
    out
}

/// Non-null cycle detection by exhaustive enumeration.
pub fn has_non_null_cycle(g: &LabeledGraph) -> bool {
    let oracle = g.oracle();
    enumerate_simple_cycles(g)
        .iter()
        .any(|c| !oracle.is_identity(&g.cycle_value(c).unwrap()))
}

fn subsets_by_size(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) <= max {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Minimum vertex set whose deletion makes `ok` true, by subset search.
fn optimum_by_search<F>(n: usize, ok: F) -> usize
where
    F: Fn(&[usize]) -> bool,
{
    for xs in subsets_by_size(n, n) {
        if ok(&xs) {
            return xs.len();
        }
    }
    unreachable!("deleting every vertex always succeeds")
}

fn is_deleted(xs: &[usize], v: usize) -> bool {
    xs.contains(&v)
}

/// Bipartiteness of the surviving graph (parallel edges are harmless).
pub fn is_bipartite_after(g: &UndirectedGraph, xs: &[usize]) -> bool {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut color = vec![usize::MAX; n];
    for s in 0..n {
        if is_deleted(xs, s) || color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if is_deleted(xs, v) {
                    continue;
                }
                if color[v] == usize::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn oct_optimum(g: &UndirectedGraph) -> usize {
    optimum_by_search(g.vertex_count(), |xs| is_bipartite_after(g, xs))
}

/// Forest check on the surviving multigraph: edges = vertices - components.
pub fn is_forest_after(g: &UndirectedGraph, xs: &[usize]) -> bool {
    let n = g.vertex_count();
    let surviving = g
        .edges()
        .iter()
        .filter(|&&(u, v)| !is_deleted(xs, u) && !is_deleted(xs, v))
        .count();
    let mut removed = vec![false; n];
    for &v in xs {
        removed[v] = true;
    }
    let comp = g.components_excluding(&removed);
    let components = comp
        .iter()
        .filter(|&&c| c != usize::MAX)
        .collect::<std::collections::HashSet<_>>()
        .len();
    surviving == n - xs.len() - components
}

pub fn fvs_optimum(g: &UndirectedGraph) -> usize {
    optimum_by_search(g.vertex_count(), |xs| is_forest_after(g, xs))
}

/// No surviving cycle through a special edge: a special edge (u, v) lies
/// on a cycle exactly when u and v stay connected without that edge copy.
pub fn esfvs_valid(g: &UndirectedGraph, special: &[usize], xs: &[usize]) -> bool {
    for &idx in special {
        let (u, v) = g.edges()[idx];
        if is_deleted(xs, u) || is_deleted(xs, v) {
            continue;
        }
        // BFS from u avoiding xs, not using edge `idx` itself.
        let mut seen = vec![false; g.vertex_count()];
        seen[u] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            for (j, &(x, y)) in g.edges().iter().enumerate() {
                if j == idx {
                    continue;
                }
                let b = if x == a {
                    y
                } else if y == a {
                    x
                } else {
                    continue;
                };
                if !is_deleted(xs, b) && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        if seen[v] {
            return false;
        }
    }
    true
}

pub fn esfvs_optimum(g: &UndirectedGraph, special: &[usize]) -> usize {
    optimum_by_search(g.vertex_count(), |xs| esfvs_valid(g, special, xs))
}

/// Optimal multiway cut size, or `None` when even deleting every
/// non-terminal fails (adjacent terminals).
pub fn mwc_optimum(g: &UndirectedGraph, terminals: &[usize]) -> Option<usize> {
    let inst = gfvs::mwc::MwcInstance::new(g.clone(), terminals.to_vec(), g.vertex_count())
        .unwrap();
    gfvs::brute::brute_mwc(&inst).unwrap().map(|xs| xs.len())
}

/// Minimum deletion set size over the whole vertex range (always defined).
pub fn gfvs_optimum(g: &LabeledGraph) -> usize {
    let inst = gfvs::GfvsInstance::new(g.clone(), g.alive_count());
    gfvs::brute::brute_gfvs(&inst).unwrap().expect("deleting everything works").len()
}

/// Every solution of size at most `k` that avoids `z`, by subset search.
pub fn all_restricted_solutions(inst: &CompressionInstance) -> Vec<Vec<usize>> {
    let pool: Vec<usize> =
        inst.graph.vertices().filter(|v| inst.z.binary_search(v).is_err()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pool.len()) {
        if (mask.count_ones() as usize) > inst.k {
            continue;
        }
        let xs: Vec<usize> =
            pool.iter().enumerate().filter_map(|(i, &v)| (mask >> i & 1 == 1).then_some(v)).collect();
        if inst.graph.is_solution(&xs) {
            out.push(xs);
        }
    }
    out
}

/// Values of all simple external paths from `z1` to `z2`, by path
/// enumeration on the original labels.
pub fn external_path_values(
    inst: &UntangledInstance,
    z1: usize,
    z2: usize,
) -> Vec<GroupElement> {
    fn rec(
        inst: &UntangledInstance,
        z2: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<GroupElement>,
    ) {
        let u = *path.last().unwrap();
        let oracle = inst.graph.oracle().clone();
        for (v, _) in inst.graph.arcs_from(u) {
            if v == z2 {
                path.push(v);
                let value = inst.graph.walk_value(path).unwrap();
                if !out.iter().any(|known| oracle.eq(known, &value)) {
                    out.push(value);
                }
                path.pop();
            } else if !inst.in_z(v) && !path.contains(&v) {
                path.push(v);
                rec(inst, z2, path, out);
                path.pop();
            }
        }
    }

    let mut out = Vec::new();
    rec(inst, z2, &mut vec![z1], &mut out);
    out
}

/// Same multiset of elements, compared through the oracle.
pub fn same_value_set(oracle: &GroupOracle, a: &[GroupElement], b: &[GroupElement]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| oracle.eq(x, y)))
        && b.iter().all(|x| a.iter().any(|y| oracle.eq(x, y)))
}

/// One z vertex fanning `k + 2` distinct labels: a direct arc to a hub
/// vertex plus `k + 1` two-step paths through private middle vertices.
/// The hub collects `k + 2` disjoint paths to distinct labels, so the
/// reduction rule fires on it, and deleting it is the only size-`k` fix.
/// Returns the instance and the hub vertex.
pub fn firing_instance(r: &mut ChaCha8Rng, k: usize) -> (UntangledInstance, usize) {
    let spokes = k + 1;
    let modulus = (k + 3 + r.random_range(0..3)) as u64;
    let oracle = GroupOracle::cyclic(modulus).unwrap();
    let mut values: Vec<u64> = (0..modulus).collect();
    values.shuffle(r);
    let extras = r.random_range(0..=2);
    let n = 2 + spokes + extras;
    let mut g = LabeledGraph::new(n, oracle.clone());
    let hub = 1;
    g.add_edge(0, hub, oracle.residue(values[0]).unwrap()).unwrap();
    for i in 0..spokes {
        let mid = 2 + i;
        g.add_edge(0, mid, oracle.residue(values[i + 1]).unwrap()).unwrap();
        g.add_edge(mid, hub, oracle.identity()).unwrap();
    }
    for e in 0..extras {
        let v = 2 + spokes + e;
        // Harmless decoration: identity arcs cannot create non-null cycles.
        g.add_edge(0, v, oracle.identity()).unwrap();
        if e == 1 {
            g.add_edge(v - 1, v, oracle.identity()).unwrap();
        }
    }
    let ci = CompressionInstance::new(g, k, vec![0]).unwrap();
    (UntangledInstance::new_checked(ci).unwrap(), hub)
}

/// Two z vertices joined by `count` disjoint interior 2-paths whose first
/// arcs carry pairwise distinct labels, so the external-path value set has
/// exactly `count` members while the reduction rule never fires.
pub fn sigma_fan(r: &mut ChaCha8Rng, k: usize, count: usize) -> CompressionInstance {
    let modulus = (count + r.random_range(0..3)) as u64;
    let oracle = GroupOracle::cyclic(modulus).unwrap();
    let mut values: Vec<u64> = (0..modulus).collect();
    values.shuffle(r);
    let n = count + 2;
    let z2 = n - 1;
    let mut g = LabeledGraph::new(n, oracle.clone());
    for (i, &val) in values.iter().take(count).enumerate() {
        g.add_edge(0, i + 1, oracle.residue(val).unwrap()).unwrap();
        g.add_edge(i + 1, z2, oracle.identity()).unwrap();
    }
    CompressionInstance::new(g, k, vec![0, z2]).unwrap()
}

/// Fundamental cycles of a BFS spanning forest: for every non-tree edge
/// `{u, v}` the tree path from `u` to `v` (the closing arc is implied).
pub fn fundamental_cycles(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.arcs_from(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    tree_adj[u].push(v);
                    tree_adj[v].push(u);
                    queue.push_back(v);
                } else if u < v && parent[v] != Some(u) && parent[u] != Some(v) {
                    chords.push((u, v));
                }
            }
        }
    }

    let tree_path = |from: usize, to: usize| -> Vec<usize> {
        // BFS restricted to tree edges; small graphs only.
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &tree_adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    pred[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while let Some(p) = pred[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    };

    chords.into_iter().map(|(u, v)| tree_path(u, v)).collect()
}
