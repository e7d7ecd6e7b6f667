//! Top-level solver via iterative compression.
//!
//! Vertices enter the graph one at a time in ascending id order. After
//! step `i` the running set is a verified solution of the graph induced on
//! the first `i` vertices. When it grows to `k + 1`, every subset of it is
//! tried as the part that survives into a smaller solution, and the
//! compression solver searches for the replacement disjoint from that
//! subset.

use std::cmp::Reverse;

use crate::compress::{solve_compression, CompressionInstance};
use crate::graph::{LabeledGraph, LabelingResult, NonNullWitness};

/// Problem instance: delete at most `k` vertices so that no non-null
/// cycle remains.
#[derive(Debug, Clone)]
pub struct GfvsInstance {
    pub graph: LabeledGraph,
    pub k: usize,
}

impl GfvsInstance {
    pub fn new(graph: LabeledGraph, k: usize) -> Self {
        GfvsInstance { graph, k }
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone)]
pub enum Verification {
    Valid,
    OverBudget { size: usize, budget: usize },
    NonNull(NonNullWitness),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Solve the instance: a sorted set of at most `k` vertices whose removal
/// leaves no non-null cycle, or `None` when no such set exists.
pub fn solve(inst: &GfvsInstance) -> Option<Vec<usize>> {
    let ids: Vec<usize> = inst.graph.vertices().collect();
    let mut solution: Vec<usize> = Vec::new();

    for (i, &v) in ids.iter().enumerate() {
        let prefix_graph = inst.graph.delete_vertices(&ids[i + 1..]);
        if prefix_graph.is_solution(&solution) {
            // The carried set already covers the new vertex.
            continue;
        }
        let mut held = solution.clone();
        held.push(v);
        held.sort_unstable();
        if held.len() <= inst.k {
            solution = held;
            continue;
        }
        assert!(held.len() < 64, "budget too large for subset enumeration");
        let mut masks: Vec<u64> = (0..1u64 << held.len()).collect();
        masks.sort_by_key(|m| (Reverse(m.count_ones()), *m));

        let mut compressed = None;
        for mask in masks {
            let kept: Vec<usize> = held
                .iter()
                .enumerate()
                .filter_map(|(j, &z)| (mask >> j & 1 == 1).then_some(z))
                .collect();
            if kept.is_empty() {
                // Removing all k + 1 held vertices already busts the budget.
                continue;
            }
            let dropped: Vec<usize> =
                held.iter().copied().filter(|z| !kept.contains(z)).collect();
            let sub = prefix_graph.delete_vertices(&dropped);
            let budget = kept.len() - 1;
            let ci = CompressionInstance::new(sub, budget, kept).expect("held vertices alive");
            let found = solve_compression(&ci)
                .expect("held set is feasible for the prefix graph by induction");
            if let Some(mut xs) = found {
                xs.extend(dropped);
                xs.sort_unstable();
                compressed = Some(xs);
                break;
            }
        }

        {
            let xs = compressed?;
            solution = xs
        }
    }
    Some(solution)
}

/// Check a candidate solution: within budget and no non-null cycle left.
/// On failure the reason is returned, including a witness cycle when one
/// survives.
pub fn verify(inst: &GfvsInstance, xs: &[usize]) -> Verification {
    let mut xs: Vec<usize> = xs.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() > inst.k {
        return Verification::OverBudget { size: xs.len(), budget: inst.k };
    }
    match inst.graph.delete_vertices(&xs).find_consistent_labeling() {
        LabelingResult::Consistent(_) => Verification::Valid,
        LabelingResult::NonNull(w) => Verification::NonNull(w),
    }
}
