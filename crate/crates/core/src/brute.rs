//! Exponential reference oracles. These enumerate candidate sets by size
//! and then lexicographically, so the first hit is the optimum with the
//! lexicographically smallest witness. A hard vertex-count guard keeps
//! them from being pointed at anything beyond desk scale.

use crate::compress::CompressionInstance;
use crate::mwc::{is_mwc_solution, MwcInstance};
use crate::solver::GfvsInstance;
use crate::{Error, Result};

const GUARD: usize = 20;

fn check_guard(n: usize) -> Result<()> {
    if n > GUARD {
        return Err(Error::GuardExceeded(n, GUARD));
    }
    Ok(())
}

/// Smallest (size, then lexicographic) subset of `pool` with at most `k`
/// elements satisfying `pred`.
fn smallest_subset<F>(pool: &[usize], k: usize, mut pred: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    fn rec<F>(pool: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, pred: &mut F) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        if left == 0 {
            return pred(cur);
        }
        for i in start..=pool.len().saturating_sub(left) {
            cur.push(pool[i]);
            if rec(pool, i + 1, left - 1, cur, pred) {
                return true;
            }
            cur.pop();
        }
        false
    }

    for size in 0..=k.min(pool.len()) {
        let mut cur = Vec::with_capacity(size);
        if rec(pool, 0, size, &mut cur, &mut pred) {
            return Some(cur);
        }
    }
    None
}

/// Optimal solution by exhaustive search, or `None` when nothing within
/// the budget works.
pub fn brute_gfvs(inst: &GfvsInstance) -> Result<Option<Vec<usize>>> {
    check_guard(inst.graph.alive_count())?;
    let pool: Vec<usize> = inst.graph.vertices().collect();
    Ok(smallest_subset(&pool, inst.k, |xs| inst.graph.is_solution(xs)))
}

/// As [`brute_gfvs`], restricted to candidate sets disjoint from `z`.
pub fn brute_restricted_gfvs(inst: &CompressionInstance) -> Result<Option<Vec<usize>>> {
    check_guard(inst.graph.alive_count())?;
    let pool: Vec<usize> =
        inst.graph.vertices().filter(|v| inst.z.binary_search(v).is_err()).collect();
    Ok(smallest_subset(&pool, inst.k, |xs| inst.graph.is_solution(xs)))
}

/// Optimal multiway cut by exhaustive search over non-terminal subsets,
/// verified by flood fill.
pub fn brute_mwc(inst: &MwcInstance) -> Result<Option<Vec<usize>>> {
    check_guard(inst.graph.vertex_count())?;
    let pool: Vec<usize> = (0..inst.graph.vertex_count())
        .filter(|v| inst.terminals.binary_search(v).is_err())
        .collect();
    Ok(smallest_subset(&pool, inst.k, |xs| is_mwc_solution(inst, xs)))
}
