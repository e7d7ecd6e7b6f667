//! Group-labeled directed graphs.
//!
//! Every arc `(u, v)` is paired with the reverse arc `(v, u)` carrying the
//! inverse label, so the structure behaves like an undirected graph whose
//! traversal direction decides which label you read. The graph is simple:
//! no self-loops and at most one arc per ordered pair (encoders subdivide
//! parallel edges instead).
//!
//! Vertices are dense ids. Deletion masks a vertex out rather than
//! renumbering, so solver modules can delete and still report solutions in
//! the caller's ids.

use std::collections::VecDeque;

use crate::group::{GroupElement, GroupOracle};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    label: GroupElement,
}

#[derive(Debug, Clone)]
pub struct LabeledGraph {
    oracle: GroupOracle,
    adj: Vec<Vec<Arc>>,
    alive: Vec<bool>,
}

/// Partial vertex labeling `λ: V → Σ`; unlabeled slots are `None`.
#[derive(Debug, Clone)]
pub struct Labeling {
    values: Vec<Option<GroupElement>>,
}

impl Labeling {
    pub fn get(&self, v: usize) -> Option<&GroupElement> {
        self.values.get(v).and_then(|slot| slot.as_ref())
    }
}

/// A simple cycle whose label product is not the identity, returned as
/// evidence that no consistent labeling exists.
#[derive(Debug, Clone)]
pub struct NonNullWitness {
    /// Cycle vertices in order, without repeating the first.
    pub cycle: Vec<usize>,
    /// Product of the arc labels along `cycle`, in listed order.
    pub value: GroupElement,
}

/// Outcome of [`LabeledGraph::find_consistent_labeling`]: exactly one of a
/// total consistent labeling or a witness cycle.
#[derive(Debug, Clone)]
pub enum LabelingResult {
    Consistent(Labeling),
    NonNull(NonNullWitness),
}

impl LabelingResult {
    pub fn labeling(self) -> Option<Labeling> {
        match self {
            LabelingResult::Consistent(l) => Some(l),
            LabelingResult::NonNull(_) => None,
        }
    }

    pub fn witness(self) -> Option<NonNullWitness> {
        match self {
            LabelingResult::Consistent(_) => None,
            LabelingResult::NonNull(w) => Some(w),
        }
    }
}

impl LabeledGraph {
    pub fn new(n: usize, oracle: GroupOracle) -> Self {
        LabeledGraph { oracle, adj: vec![Vec::new(); n], alive: vec![true; n] }
    }

    pub fn oracle(&self) -> &GroupOracle {
        &self.oracle
    }

    /// Total number of vertex slots, dead ones included.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Alive vertex ids in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter().enumerate().filter_map(|(v, &a)| a.then_some(v))
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.adj.len() - 1
    }

    /// Add the paired arcs `(u, v, g)` and `(v, u, g⁻¹)`.
    pub fn add_edge(&mut self, u: usize, v: usize, label: GroupElement) -> Result<()> {
        for w in [u, v] {
            if !self.is_alive(w) {
                return Err(Error::VertexOutOfRange(w));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.label(u, v).is_some() {
            return Err(Error::DuplicateArc(u, v));
        }
        let inverse = self.oracle.inv(&label)?;
        self.adj[u].push(Arc { to: v, label });
        self.adj[v].push(Arc { to: u, label: inverse });
        Ok(())
    }

    /// Label of the arc `(u, v)`, if present (and both ends alive).
    pub fn label(&self, u: usize, v: usize) -> Option<&GroupElement> {
        if !self.is_alive(u) || !self.is_alive(v) {
            return None;
        }
        self.adj[u].iter().find(|arc| arc.to == v).map(|arc| &arc.label)
    }

    /// Arcs leaving `u` toward alive vertices.
    pub fn arcs_from(&self, u: usize) -> impl Iterator<Item = (usize, &GroupElement)> + '_ {
        let live = self.is_alive(u);
        self.adj[u]
            .iter()
            .filter(move |arc| live && self.alive[arc.to])
            .map(|arc| (arc.to, &arc.label))
    }

    /// Arc count over ordered pairs (twice the edge count).
    pub fn arc_count(&self) -> usize {
        self.vertices().map(|u| self.arcs_from(u).count()).sum()
    }

    /// Unordered alive pairs `(u, v)` with `u < v`, with the label of the
    /// `u → v` direction.
    pub fn underlying_edges(&self) -> impl Iterator<Item = (usize, usize, &GroupElement)> + '_ {
        self.vertices().flat_map(move |u| {
            self.arcs_from(u).filter(move |&(v, _)| u < v).map(move |(v, g)| (u, v, g))
        })
    }

    pub fn delete_vertices_mut(&mut self, xs: &[usize]) {
        for &v in xs {
            assert!(v < self.alive.len(), "vertex {v} out of range");
            self.alive[v] = false;
        }
    }

    /// Induced labeled subgraph with `xs` removed. Ids are preserved.
    pub fn delete_vertices(&self, xs: &[usize]) -> LabeledGraph {
        let mut g = self.clone();
        g.delete_vertices_mut(xs);
        g
    }

    /// Replace the label of every arc between alive vertices through
    /// `relabel(u, v, label)`.
    pub(crate) fn relabel_arcs<F>(&mut self, mut relabel: F) -> Result<()>
    where
        F: FnMut(usize, usize, &GroupElement) -> Result<GroupElement>,
    {
        for u in 0..self.adj.len() {
            if !self.alive[u] {
                continue;
            }
            for idx in 0..self.adj[u].len() {
                let to = self.adj[u][idx].to;
                if !self.alive[to] {
                    continue;
                }
                let new = relabel(u, to, &self.adj[u][idx].label)?;
                self.adj[u][idx].label = new;
            }
        }
        Ok(())
    }

    /// Ordered label product around a closed walk; the arc from the last
    /// vertex back to the first is implied.
    pub fn cycle_value(&self, walk: &[usize]) -> Result<GroupElement> {
        if walk.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let mut value = self.walk_value(walk)?;
        let (last, first) = (walk[walk.len() - 1], walk[0]);
        let closing = self.label(last, first).ok_or(Error::MissingArc(last, first))?;
        value = self.oracle.mul(&value, closing)?;
        Ok(value)
    }

    /// Ordered label product along an open walk.
    pub fn walk_value(&self, walk: &[usize]) -> Result<GroupElement> {
        if walk.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let mut value = self.oracle.identity();
        for pair in walk.windows(2) {
            let g = self.label(pair[0], pair[1]).ok_or(Error::MissingArc(pair[0], pair[1]))?;
            value = self.oracle.mul(&value, g)?;
        }
        Ok(value)
    }

    /// Either a total consistent labeling (`λ(v) = λ(u) · Λ((u,v))` on every
    /// arc) or a simple non-null witness cycle; exactly one of the two.
    ///
    /// Labels are assigned by BFS per connected component with the root
    /// labeled by the identity; the first arc that contradicts its BFS
    /// labels closes a non-null walk through the BFS tree, from which a
    /// simple non-null subcycle is extracted.
    pub fn find_consistent_labeling(&self) -> LabelingResult {
        let n = self.adj.len();
        let mut values: Vec<Option<GroupElement>> = vec![None; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];

        for root in self.vertices() {
            if values[root].is_some() {
                continue;
            }
            values[root] = Some(self.oracle.identity());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let base = values[u].clone().expect("queued vertices are labeled");
                for (v, g) in self.arcs_from(u) {
                    if values[v].is_none() {
                        values[v] = Some(self.oracle.mul(&base, g).expect("same oracle"));
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                }
            }
        }

        for u in self.vertices() {
            let lu = values[u].clone().expect("alive vertices are labeled");
            for (v, g) in self.arcs_from(u) {
                let expect = self.oracle.mul(&lu, g).expect("same oracle");
                let lv = values[v].as_ref().expect("alive vertices are labeled");
                if !self.oracle.eq(&expect, lv) {
                    let walk = self.tree_closed_walk(&parent, u, v);
                    return LabelingResult::NonNull(self.extract_simple_non_null(walk));
                }
            }
        }

        LabelingResult::Consistent(Labeling { values })
    }

    /// Closed walk root → u (tree), arc (u, v), v → root (tree).
    fn tree_closed_walk(&self, parent: &[Option<usize>], u: usize, v: usize) -> Vec<usize> {
        let path_to_root = |mut w: usize| {
            let mut path = vec![w];
            while let Some(p) = parent[w] {
                path.push(p);
                w = p;
            }
            path
        };
        let mut walk = path_to_root(u);
        walk.reverse();
        walk.extend(path_to_root(v));
        walk
    }

    /// Shrink a non-null closed walk (explicit first == last) to a simple
    /// non-null cycle. Splitting the walk at any repeated vertex leaves at
    /// least one non-null part, so the walk shrinks until it is simple.
    fn extract_simple_non_null(&self, mut walk: Vec<usize>) -> NonNullWitness {
        loop {
            debug_assert!(walk.len() >= 3 && walk[0] == walk[walk.len() - 1]);
            let mut repeat = None;
            'scan: for i in 0..walk.len() - 1 {
                for j in i + 1..walk.len() {
                    if walk[i] == walk[j] && (i, j) != (0, walk.len() - 1) {
                        repeat = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = repeat else { break };
            let inner = walk[i..=j].to_vec();
            let inner_value =
                self.cycle_value(&inner[..inner.len() - 1]).expect("walk arcs exist");
            if !self.oracle.is_identity(&inner_value) {
                walk = inner;
            } else {
                walk.drain(i + 1..=j);
            }
        }
        let cycle: Vec<usize> = walk[..walk.len() - 1].to_vec();
        let value = self.cycle_value(&cycle).expect("walk arcs exist");
        debug_assert!(!self.oracle.is_identity(&value));
        NonNullWitness { cycle, value }
    }

    /// True when `labeling` satisfies the consistency equation on every arc.
    pub fn is_consistent(&self, labeling: &Labeling) -> bool {
        self.vertices().all(|u| {
            let Some(lu) = labeling.get(u) else { return false };
            self.arcs_from(u).all(|(v, g)| match labeling.get(v) {
                Some(lv) => {
                    let expect = self.oracle.mul(lu, g).expect("same oracle");
                    self.oracle.eq(&expect, lv)
                }
                None => false,
            })
        })
    }

    /// Does deleting `xs` leave a graph without non-null cycles?
    pub fn is_solution(&self, xs: &[usize]) -> bool {
        matches!(self.delete_vertices(xs).find_consistent_labeling(), LabelingResult::Consistent(_))
    }

    /// Structural comparison for tests and round-trip checks: same oracle,
    /// same alive set, same arcs with equal labels.
    pub fn structurally_eq(&self, other: &LabeledGraph) -> bool {
        if self.oracle.spec() != other.oracle.spec()
            || self.vertex_count() != other.vertex_count()
            || self.alive != other.alive
        {
            return false;
        }
        self.vertices().all(|u| {
            let mut mine: Vec<_> = self.arcs_from(u).collect();
            let mut theirs: Vec<_> = other.arcs_from(u).collect();
            mine.sort_by_key(|(v, _)| *v);
            theirs.sort_by_key(|(v, _)| *v);
            mine.len() == theirs.len()
                && mine
                    .iter()
                    .zip(&theirs)
                    .all(|((v1, g1), (v2, g2))| v1 == v2 && self.oracle.eq(g1, g2))
        })
    }
}
