//! Compression step: given a labeled graph together with a feasible
//! solution `Z` already in hand, find a solution of size at most `k` that
//! is disjoint from `Z`, or report that none exists.
//!
//! Pipeline:
//!
//! 1. *Untangle*: relabel so that every arc with both endpoints outside
//!    `Z` carries the identity. Untangling never changes any cycle value,
//!    so solution sets are preserved.
//! 2. *Reduction rule*: a vertex with `k + 2` paths to distinct labels out
//!    of some `z ∈ Z` (vertex-disjoint apart from itself) lies in every
//!    solution; delete it and decrement the budget.
//! 3. *No-instance check*: once the rule is exhausted, a pair of `Z`
//!    vertices joined by external paths realizing `k³(k+1)² + 2` distinct
//!    values rules out any solution.
//! 4. *Boundary labelings*: enumerate the candidate labelings of `Z`
//!    (forests over `Z`, values propagated from the external-path value
//!    sets), and reduce each fixed labeling to a multiway cut instance.
//!
//! The labeling stream is deterministic; with `GFVS_THREADS` set, fixed
//! labelings are evaluated in parallel batches and the hit with the
//! earliest stream position wins, so results do not depend on timing.

use std::collections::VecDeque;

use crate::graph::{LabeledGraph, LabelingResult};
use crate::group::GroupElement;
use crate::mwc::{min_vertex_cut, solve_mwc, MwcInstance};
use crate::undirected::UndirectedGraph;
use crate::{Error, Result};

/// Instance of the compression problem. `z` is sorted and deduplicated;
/// the problem promises that deleting `z` leaves no non-null cycle.
#[derive(Debug, Clone)]
pub struct CompressionInstance {
    pub graph: LabeledGraph,
    pub k: usize,
    pub z: Vec<usize>,
}

impl CompressionInstance {
    pub fn new(graph: LabeledGraph, k: usize, mut z: Vec<usize>) -> Result<Self> {
        z.sort_unstable();
        z.dedup();
        if let Some(&v) = z.iter().find(|&&v| !graph.is_alive(v)) {
            return Err(Error::VertexOutOfRange(v));
        }
        Ok(CompressionInstance { graph, k, z })
    }
}

/// A compression instance whose arcs outside `Z` all carry the identity.
/// Obtained through [`untangle_instance`] or checked construction.
#[derive(Debug, Clone)]
pub struct UntangledInstance {
    pub graph: LabeledGraph,
    pub k: usize,
    pub z: Vec<usize>,
}

impl UntangledInstance {
    /// Wrap an instance after verifying that every interior arc carries
    /// the identity (which also implies the feasibility of `z`: interior
    /// cycles multiply to the identity).
    pub fn new_checked(inst: CompressionInstance) -> Result<Self> {
        let oracle = inst.graph.oracle().clone();
        for (u, v, g) in inst.graph.underlying_edges() {
            if inst.z.binary_search(&u).is_err()
                && inst.z.binary_search(&v).is_err()
                && !oracle.is_identity(g)
            {
                return Err(Error::NotUntangled(u, v));
            }
        }
        Ok(UntangledInstance { graph: inst.graph, k: inst.k, z: inst.z })
    }

    pub fn in_z(&self, v: usize) -> bool {
        self.z.binary_search(&v).is_ok()
    }

    /// Alive vertices outside `z`, ascending.
    pub fn outside(&self) -> Vec<usize> {
        self.graph.vertices().filter(|&v| !self.in_z(v)).collect()
    }
}

/// Relabel around `x`: arcs leaving `x` are premultiplied by `g`, arcs
/// entering `x` are postmultiplied by `g⁻¹`. Every cycle value is
/// unchanged, and so is the set of solutions.
pub fn untangle_around(g: &LabeledGraph, x: usize, h: &GroupElement) -> Result<LabeledGraph> {
    if !g.is_alive(x) {
        return Err(Error::VertexOutOfRange(x));
    }
    let oracle = g.oracle().clone();
    let h_inv = oracle.inv(h)?;
    let mut out = g.clone();
    out.relabel_arcs(|u, v, label| {
        if u == x {
            oracle.mul(h, label)
        } else if v == x {
            oracle.mul(label, &h_inv)
        } else {
            Ok(label.clone())
        }
    })?;
    Ok(out)
}

/// Untangle the whole instance: compute a consistent labeling `λ` of the
/// graph without `z` and untangle around every outside vertex with its
/// label, after which every interior arc carries the identity.
///
/// Fails when deleting `z` leaves a non-null cycle, i.e. the instance
/// violates its own promise; the witness cycle is attached.
pub fn untangle_instance(inst: &CompressionInstance) -> Result<UntangledInstance> {
    let interior = inst.graph.delete_vertices(&inst.z);
    let labeling = match interior.find_consistent_labeling() {
        LabelingResult::Consistent(l) => l,
        LabelingResult::NonNull(w) => return Err(Error::InfeasibleHeldSolution(w)),
    };
    let oracle = inst.graph.oracle().clone();
    let mut graph = inst.graph.clone();
    // One pass over the arcs equals untangling vertex by vertex.
    graph.relabel_arcs(|u, v, label| {
        let mut value = label.clone();
        if inst.z.binary_search(&u).is_err() {
            let lu = labeling.get(u).expect("interior vertices are labeled");
            value = oracle.mul(lu, &value)?;
        }
        if inst.z.binary_search(&v).is_err() {
            let lv = labeling.get(v).expect("interior vertices are labeled");
            value = oracle.mul(&value, &oracle.inv(lv)?)?;
        }
        Ok(value)
    })?;
    UntangledInstance::new_checked(CompressionInstance { graph, k: inst.k, z: inst.z.clone() })
}

/// Flow graph for one `z`: the interior of the instance plus one vertex
/// per distinct label on arcs from `z` into the interior.
#[derive(Debug, Clone)]
pub struct FlowGraph {
    /// Vertices `0..outside.len()` are interior vertices; the rest are
    /// label vertices in the order of `labels`.
    pub graph: UndirectedGraph,
    /// Real ids of the interior vertices, ascending.
    pub outside: Vec<usize>,
    /// Distinct labels on arcs from `z` into the interior (`Σ_z`).
    pub labels: Vec<GroupElement>,
}

pub fn build_flow_graph(inst: &UntangledInstance, z: usize) -> FlowGraph {
    debug_assert!(inst.in_z(z));
    let oracle = inst.graph.oracle();
    let outside = inst.outside();
    let index_of = |v: usize| outside.binary_search(&v).expect("interior vertex");

    let mut labels: Vec<GroupElement> = Vec::new();
    let mut label_edges: Vec<(usize, usize)> = Vec::new();
    for (v, g) in inst.graph.arcs_from(z) {
        if inst.in_z(v) {
            continue;
        }
        let li = match labels.iter().position(|known| oracle.eq(known, g)) {
            Some(li) => li,
            None => {
                labels.push(g.clone());
                labels.len() - 1
            }
        };
        label_edges.push((li, index_of(v)));
    }

    let p = outside.len();
    let mut graph = UndirectedGraph::new(p + labels.len());
    for (u, v, _) in inst.graph.underlying_edges() {
        if !inst.in_z(u) && !inst.in_z(v) {
            graph.add_edge(index_of(u), index_of(v)).expect("interior edge");
        }
    }
    for (li, vi) in label_edges {
        graph.add_edge(p + li, vi).expect("label edge");
    }
    FlowGraph { graph, outside, labels }
}

/// Find an interior vertex with at least `k + 2` paths to the label set of
/// some flow graph, vertex-disjoint apart from the vertex itself. Such a
/// vertex lies in every solution. Returns the first hit scanning `z` then
/// interior vertices in ascending order, or `None`.
pub fn reduction_rule_scan(inst: &UntangledInstance) -> Option<usize> {
    let need = inst.k + 2;
    for &z in &inst.z {
        let fg = build_flow_graph(inst, z);
        // Each path ends in its own label vertex, so fewer labels than
        // `need` can never fire the rule.
        if fg.labels.len() < need {
            continue;
        }
        let p = fg.outside.len();
        let mut h = fg.graph.clone();
        let sink = h.add_vertex();
        for li in 0..fg.labels.len() {
            h.add_edge(p + li, sink).expect("sink edge");
        }
        for (vi, &v) in fg.outside.iter().enumerate() {
            if min_vertex_cut(&h, &[vi], &[sink], inst.k + 1) >= need {
                return Some(v);
            }
        }
    }
    None
}

/// List size at which a pair of `Z` vertices certifies a no-instance.
pub fn sigma_threshold(k: usize) -> usize {
    k.saturating_pow(3).saturating_mul((k + 1).saturating_pow(2)).saturating_add(2)
}

/// Values of external paths from `z1` to `z2` (both endpoints in `Z`, all
/// internal vertices outside), as a duplicate-free list capped at
/// [`sigma_threshold`]. On an untangled instance only the first and last
/// arc of an external path carry labels, so the values are the direct-arc
/// label plus the products over boundary-arc pairs whose interior
/// endpoints share a connected component.
pub fn compute_sigma_pair(inst: &UntangledInstance, z1: usize, z2: usize) -> Vec<GroupElement> {
    assert!(z1 != z2 && inst.in_z(z1) && inst.in_z(z2));
    let oracle = inst.graph.oracle().clone();
    let cap = sigma_threshold(inst.k);
    let comp = interior_components(inst);
    let mut out: Vec<GroupElement> = Vec::new();
    let push = |g: GroupElement, out: &mut Vec<GroupElement>| {
        if !out.iter().any(|known| oracle.eq(known, &g)) {
            out.push(g);
        }
    };

    if let Some(g) = inst.graph.label(z1, z2) {
        push(g.clone(), &mut out);
    }
    let from_z1: Vec<(usize, GroupElement)> = inst
        .graph
        .arcs_from(z1)
        .filter(|(v, _)| !inst.in_z(*v))
        .map(|(v, g)| (v, g.clone()))
        .collect();
    let into_z2: Vec<(usize, GroupElement)> = inst
        .graph
        .arcs_from(z2)
        .filter(|(v, _)| !inst.in_z(*v))
        .map(|(v, g)| (v, inst.graph.oracle().inv(g).expect("same oracle")))
        .collect();
    'outer: for (u, g1) in &from_z1 {
        for (v, g2) in &into_z2 {
            if comp[*u] == comp[*v] {
                let value = inst.graph.oracle().mul(g1, g2).expect("same oracle");
                push(value, &mut out);
                if out.len() >= cap {
                    break 'outer;
                }
            }
        }
    }
    out
}

/// Component id per vertex over the interior (outside `Z`), `usize::MAX`
/// elsewhere.
fn interior_components(inst: &UntangledInstance) -> Vec<usize> {
    let n = inst.graph.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in inst.outside() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (v, _) in inst.graph.arcs_from(u) {
                if !inst.in_z(v) && comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Report NO when some pair of `Z` vertices reaches the threshold number
/// of distinct external-path values. Sound only after
/// [`reduction_rule_scan`] came up empty.
pub fn no_instance_check(inst: &UntangledInstance) -> bool {
    let threshold = sigma_threshold(inst.k);
    for (i, &z1) in inst.z.iter().enumerate() {
        for &z2 in &inst.z[i + 1..] {
            if compute_sigma_pair(inst, z1, z2).len() >= threshold {
                return true;
            }
        }
    }
    false
}

/// Total labeling of `Z`, aligned with the sorted `z` list.
#[derive(Debug, Clone)]
pub struct BoundaryLabeling {
    pub z: Vec<usize>,
    pub values: Vec<GroupElement>,
}

impl BoundaryLabeling {
    pub fn get(&self, z: usize) -> &GroupElement {
        let i = self.z.binary_search(&z).expect("z vertex");
        &self.values[i]
    }
}

/// Deterministic stream of candidate boundary labelings.
///
/// For every forest on `Z` (edges restricted to pairs joined by at least
/// one external path), each tree is rooted at its minimum-id vertex with
/// the identity, and values propagate along tree edges through the
/// external-path value sets: `φ(child) = φ(parent) · g` for each
/// `g ∈ Σ(parent, child)`. For every yes-instance at least one emitted
/// labeling extends to a consistent labeling after deleting some valid
/// solution. Duplicates across forests are suppressed.
pub struct BoundaryLabelings<'a> {
    inst: &'a UntangledInstance,
    sigma: Vec<Vec<Vec<GroupElement>>>,
    forests: Vec<Vec<(usize, usize)>>,
    fi: usize,
    started: bool,
    steps: Vec<(usize, usize)>,
    choices: Vec<usize>,
    emitted: Vec<Vec<GroupElement>>,
}

pub fn enumerate_boundary_labelings(inst: &UntangledInstance) -> BoundaryLabelings<'_> {
    let zn = inst.z.len();
    let mut sigma = vec![vec![Vec::new(); zn]; zn];
    for i in 0..zn {
        for j in 0..zn {
            if i != j {
                sigma[i][j] = compute_sigma_pair(inst, inst.z[i], inst.z[j]);
            }
        }
    }
    let mut allowed = Vec::new();
    for i in 0..zn {
        for j in i + 1..zn {
            if !sigma[i][j].is_empty() {
                allowed.push((i, j));
            }
        }
    }
    let forests = forests_over(zn, &allowed);
    BoundaryLabelings {
        inst,
        sigma,
        forests,
        fi: 0,
        started: false,
        steps: Vec::new(),
        choices: Vec::new(),
        emitted: Vec::new(),
    }
}

impl BoundaryLabelings<'_> {
    pub fn forest_count(&self) -> usize {
        self.forests.len()
    }

    fn advance_odometer(&mut self) -> bool {
        let mut i = self.choices.len();
        while i > 0 {
            i -= 1;
            let (p, c) = self.steps[i];
            self.choices[i] += 1;
            if self.choices[i] < self.sigma[p][c].len() {
                return true;
            }
            self.choices[i] = 0;
        }
        false
    }
}

impl Iterator for BoundaryLabelings<'_> {
    type Item = BoundaryLabeling;

    fn next(&mut self) -> Option<BoundaryLabeling> {
        let oracle = self.inst.graph.oracle().clone();
        let zn = self.inst.z.len();
        loop {
            if self.fi >= self.forests.len() {
                return None;
            }
            if !self.started {
                self.steps = propagation_order(zn, &self.forests[self.fi]);
                self.choices = vec![0; self.steps.len()];
                self.started = true;
            } else if !self.advance_odometer() {
                self.fi += 1;
                self.started = false;
                continue;
            }

            let mut values: Vec<GroupElement> = vec![oracle.identity(); zn];
            for (idx, &(p, c)) in self.steps.iter().enumerate() {
                let g = &self.sigma[p][c][self.choices[idx]];
                values[c] = oracle.mul(&values[p], g).expect("same oracle");
            }
            let duplicate = self
                .emitted
                .iter()
                .any(|prev| prev.iter().zip(&values).all(|(a, b)| oracle.eq(a, b)));
            if duplicate {
                continue;
            }
            self.emitted.push(values.clone());
            return Some(BoundaryLabeling { z: self.inst.z.clone(), values });
        }
    }
}

/// All forests over `0..zn` using only `allowed` edges, enumerated by
/// including/excluding edges in ascending lexicographic order with the
/// empty forest first.
fn forests_over(zn: usize, allowed: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut parent: Vec<usize> = (0..zn).collect();
    // No path compression: unions must undo exactly when backtracking.
    fn find(parent: &[usize], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }
    fn rec(
        allowed: &[(usize, usize)],
        idx: usize,
        chosen: &mut Vec<(usize, usize)>,
        parent: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if idx == allowed.len() {
            out.push(chosen.clone());
            return;
        }
        rec(allowed, idx + 1, chosen, parent, out);
        let (a, b) = allowed[idx];
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            chosen.push((a, b));
            rec(allowed, idx + 1, chosen, parent, out);
            chosen.pop();
            parent[ra] = ra;
        }
    }
    rec(allowed, 0, &mut Vec::new(), &mut parent, &mut out);
    out
}

/// Order forest edges as (parent, child) steps, BFS from the minimum
/// vertex of each tree, so every child is labeled after its parent.
fn propagation_order(zn: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); zn];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut seen = vec![false; zn];
    let mut steps = Vec::new();
    for root in 0..zn {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    steps.push((u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    steps
}

/// Find a set of at most `k` interior vertices whose deletion admits a
/// consistent labeling that agrees with `phi` on `Z`, or `None`.
///
/// After the consistency precheck on arcs inside `Z`, the problem is a
/// multiway cut: the terminals are the distinct values `φ(u) · Λ((u,v))`
/// over boundary arcs, each attached to the interior endpoints it would
/// label; two terminals in one surviving component would force one vertex
/// to carry two different labels.
pub fn solve_fixed_labeling(inst: &UntangledInstance, phi: &BoundaryLabeling) -> Option<Vec<usize>> {
    let oracle = inst.graph.oracle().clone();

    for &z1 in &inst.z {
        for (z2, g) in inst.graph.arcs_from(z1) {
            if inst.in_z(z2) {
                let expect = oracle.mul(phi.get(z1), g).expect("same oracle");
                if !oracle.eq(&expect, phi.get(z2)) {
                    return None;
                }
            }
        }
    }

    let outside = inst.outside();
    let index_of = |v: usize| outside.binary_search(&v).expect("interior vertex");
    let mut terminal_values: Vec<GroupElement> = Vec::new();
    let mut terminal_edges: Vec<(usize, usize)> = Vec::new();
    for &z1 in &inst.z {
        for (v, g) in inst.graph.arcs_from(z1) {
            if inst.in_z(v) {
                continue;
            }
            let value = oracle.mul(phi.get(z1), g).expect("same oracle");
            let ti = match terminal_values.iter().position(|known| oracle.eq(known, &value)) {
                Some(ti) => ti,
                None => {
                    terminal_values.push(value);
                    terminal_values.len() - 1
                }
            };
            let edge = (ti, index_of(v));
            if !terminal_edges.contains(&edge) {
                terminal_edges.push(edge);
            }
        }
    }

    let p = outside.len();
    let mut graph = UndirectedGraph::new(p + terminal_values.len());
    for (u, v, _) in inst.graph.underlying_edges() {
        if !inst.in_z(u) && !inst.in_z(v) {
            graph.add_edge(index_of(u), index_of(v)).expect("interior edge");
        }
    }
    for (ti, vi) in terminal_edges {
        graph.add_edge(p + ti, vi).expect("terminal edge");
    }
    let terminals: Vec<usize> = (p..p + terminal_values.len()).collect();
    let mwc = MwcInstance::new(graph, terminals, inst.k).expect("well-formed cut instance");
    solve_mwc(&mwc).map(|xs| {
        let mut real: Vec<usize> = xs.into_iter().map(|vi| outside[vi]).collect();
        real.sort_unstable();
        real
    })
}

/// Worker count for the labeling stream; 0 or unset means sequential.
fn labeling_threads() -> usize {
    std::env::var("GFVS_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

/// Solve the compression instance end to end. Returns the solution
/// (sorted, disjoint from `z`, size at most `k`) or `None`; errs when the
/// instance breaks its promise that deleting `z` is feasible.
pub fn solve_compression(inst: &CompressionInstance) -> Result<Option<Vec<usize>>> {
    solve_compression_with_threads(inst, labeling_threads())
}

pub fn solve_compression_with_threads(
    inst: &CompressionInstance,
    threads: usize,
) -> Result<Option<Vec<usize>>> {
    let mut inst = untangle_instance(inst)?;
    let mut forced: Vec<usize> = Vec::new();
    while let Some(v) = reduction_rule_scan(&inst) {
        if inst.k == 0 {
            return Ok(None);
        }
        // Deleting an interior vertex keeps the instance untangled.
        inst.graph.delete_vertices_mut(&[v]);
        inst.k -= 1;
        forced.push(v);
    }
    if no_instance_check(&inst) {
        return Ok(None);
    }

    let found = run_labelings(&inst, threads);
    Ok(found.map(|xs| {
        forced.extend(xs);
        forced.sort_unstable();
        forced
    }))
}

fn run_labelings(inst: &UntangledInstance, threads: usize) -> Option<Vec<usize>> {
    let mut stream = enumerate_boundary_labelings(inst);
    if threads <= 1 {
        return stream.find_map(|phi| solve_fixed_labeling(inst, &phi));
    }
    loop {
        let batch: Vec<BoundaryLabeling> = stream.by_ref().take(threads).collect();
        if batch.is_empty() {
            return None;
        }
        let results: Vec<Option<Vec<usize>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = batch
                .iter()
                .map(|phi| scope.spawn(move || solve_fixed_labeling(inst, phi)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("labeling worker")).collect()
        });
        // Earliest position in the stream wins, independent of timing.
        if let Some(hit) = results.into_iter().flatten().next() {
            return Some(hit);
        }
    }
}
