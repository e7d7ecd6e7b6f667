//! Encoders from classical problems into labeled-graph instances.
//!
//! Each encoder preserves the budget and the optimum: a vertex set solves
//! the output exactly when a set of the same size solves the input. The
//! equivalences are exercised against brute force in the test suites.
//!
//! The labeled graph is simple, so an input multigraph gets one direct
//! edge per pair and a subdivided copy for every further parallel edge;
//! the two halves multiply to the original label.

use crate::graph::LabeledGraph;
use crate::group::{GroupElement, GroupOracle};
use crate::solver::GfvsInstance;
use crate::undirected::UndirectedGraph;
use crate::{Error, Result};

/// Edge-subset feedback vertex set instance: hit every cycle that uses at
/// least one special edge.
#[derive(Debug, Clone)]
pub struct EsfvsInstance {
    pub graph: UndirectedGraph,
    /// Indices into `graph.edges()`, sorted and deduplicated.
    pub special: Vec<usize>,
    pub k: usize,
}

impl EsfvsInstance {
    pub fn new(graph: UndirectedGraph, mut special: Vec<usize>, k: usize) -> Result<Self> {
        special.sort_unstable();
        special.dedup();
        if let Some(&idx) = special.iter().find(|&&idx| idx >= graph.edge_count()) {
            let (u, v) = (idx, idx);
            return Err(Error::MissingSpecialEdge(u, v));
        }
        Ok(EsfvsInstance { graph, special, k })
    }
}

/// Add an undirected labeled edge, subdividing when the pair already has
/// an arc: `u - w - v` with the label on the first half.
fn add_edge_subdividing(
    g: &mut LabeledGraph,
    u: usize,
    v: usize,
    label: GroupElement,
) -> Result<()> {
    if g.label(u, v).is_none() {
        g.add_edge(u, v, label)
    } else {
        let w = g.add_vertex();
        g.add_edge(u, w, label)?;
        g.add_edge(w, v, g.oracle().identity())
    }
}

/// Label the `i`-th special edge with the `i`-th basis vector of `Z_2^|S|`
/// and everything else with the identity. A cycle then evaluates to the
/// xor of the distinct basis vectors of its special edges, which is
/// nonzero exactly when the cycle uses a special edge.
pub fn encode_esfvs(inst: &EsfvsInstance) -> Result<GfvsInstance> {
    let oracle = GroupOracle::bitvector(inst.special.len());
    let mut graph = LabeledGraph::new(inst.graph.vertex_count(), oracle.clone());
    for (idx, &(u, v)) in inst.graph.edges().iter().enumerate() {
        let label = match inst.special.binary_search(&idx) {
            Ok(pos) => oracle.basis(pos)?,
            Err(_) => oracle.identity(),
        };
        add_edge_subdividing(&mut graph, u, v, label)?;
    }
    Ok(GfvsInstance { graph, k: inst.k })
}

/// Feedback vertex set: every edge is special.
pub fn encode_fvs(graph: &UndirectedGraph, k: usize) -> Result<GfvsInstance> {
    let all: Vec<usize> = (0..graph.edge_count()).collect();
    encode_esfvs(&EsfvsInstance::new(graph.clone(), all, k)?)
}

/// Odd cycle transversal: label every edge with the generator of `Z_2`,
/// so non-null cycles are exactly the odd ones.
pub fn encode_oct(graph: &UndirectedGraph, k: usize) -> Result<GfvsInstance> {
    let oracle = GroupOracle::cyclic(2)?;
    let one = oracle.residue(1)?;
    let mut out = LabeledGraph::new(graph.vertex_count(), oracle);
    for &(u, v) in graph.edges() {
        add_edge_subdividing(&mut out, u, v, one.clone())?;
    }
    Ok(GfvsInstance { graph: out, k })
}

/// Multiway cut: contract the terminals into one undeletable hub vertex.
///
/// The edge that used to reach terminal number `t` now reaches the hub
/// with label `t` in `Z_|T|`; every other edge keeps the identity. A path
/// between two distinct former terminals closes a cycle through the hub
/// whose value is `g_t1 · g_t2⁻¹ ≠ 1`, and conversely every non-null cycle
/// passes the hub with two distinct terminal labels. An edge directly
/// between two terminals becomes a non-null triangle through two further
/// undeletable vertices, making the instance infeasible for every budget,
/// exactly like the source instance.
pub fn encode_mwc(graph: &UndirectedGraph, terminals: &[usize], k: usize) -> Result<GfvsInstance> {
    let mut terminals: Vec<usize> = terminals.to_vec();
    terminals.sort_unstable();
    terminals.dedup();
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    if let Some(&t) = terminals.iter().find(|&&t| t >= graph.vertex_count()) {
        return Err(Error::VertexOutOfRange(t));
    }

    let oracle = GroupOracle::cyclic(terminals.len() as u64)?;
    // Non-terminals keep their relative order; the hub comes last.
    let mut map = vec![usize::MAX; graph.vertex_count()];
    let mut next = 0;
    for (v, slot) in map.iter_mut().enumerate() {
        if terminals.binary_search(&v).is_err() {
            *slot = next;
            next += 1;
        }
    }
    let hub = next;
    let mut out = LabeledGraph::new(next + 1, oracle.clone());
    let mut forbidden = vec![hub];

    let term_label = |v: usize| -> Option<GroupElement> {
        terminals.binary_search(&v).ok().map(|i| oracle.residue(i as u64).unwrap())
    };

    for &(u, v) in graph.edges() {
        match (term_label(u), term_label(v)) {
            (None, None) => {
                add_edge_subdividing(&mut out, map[u], map[v], oracle.identity())?
            }
            (Some(g), None) => add_edge_subdividing(&mut out, hub, map[v], g)?,
            (None, Some(g)) => add_edge_subdividing(&mut out, hub, map[u], g)?,
            (Some(gu), Some(gv)) => {
                let w1 = out.add_vertex();
                let w2 = out.add_vertex();
                out.add_edge(hub, w1, gu)?;
                out.add_edge(w1, w2, oracle.identity())?;
                out.add_edge(hub, w2, gv)?;
                forbidden.push(w1);
                forbidden.push(w2);
            }
        }
    }

    apply_forbidden_gadget(&GfvsInstance { graph: out, k }, &forbidden)
}

/// Protect each vertex of `f` by expanding it into a `(k+1)`-clique with
/// identity labels: the vertex keeps its id and gains `k` twins that
/// inherit all of its arcs. Hitting a cycle through a protected vertex now
/// costs more than the whole budget, so optimal solutions of the output
/// correspond to solutions of the input that avoid `f`.
pub fn apply_forbidden_gadget(inst: &GfvsInstance, f: &[usize]) -> Result<GfvsInstance> {
    let mut f: Vec<usize> = f.to_vec();
    f.sort_unstable();
    f.dedup();
    let mut graph = inst.graph.clone();
    let identity = graph.oracle().identity();
    for &v in &f {
        if !graph.is_alive(v) {
            return Err(Error::VertexOutOfRange(v));
        }
        let neighbors: Vec<(usize, GroupElement)> =
            graph.arcs_from(v).map(|(to, g)| (to, g.clone())).collect();
        let twins: Vec<usize> = (0..inst.k).map(|_| graph.add_vertex()).collect();
        for &t in &twins {
            for (to, g) in &neighbors {
                graph.add_edge(t, *to, g.clone())?;
            }
        }
        let mut clique = vec![v];
        clique.extend(&twins);
        for i in 0..clique.len() {
            for j in i + 1..clique.len() {
                graph.add_edge(clique[i], clique[j], identity.clone())?;
            }
        }
    }
    Ok(GfvsInstance { graph, k: inst.k })
}
