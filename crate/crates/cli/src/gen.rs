//! Seeded random instance generator for the bench subcommand.

use gfvs::{GfvsInstance, GroupElement, GroupOracle, GroupSpec, LabeledGraph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

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
            let gens = bound.unwrap_or(5).min(5);
            match r.random_range(0..2 * gens + 1) {
                0 => oracle.identity(),
                t => oracle.free_reduce(&[((t - 1) / 2 + 1, t % 2 == 0)]).unwrap(),
            }
        }
    }
}

pub fn random_instance(
    r: &mut ChaCha8Rng,
    oracle: &GroupOracle,
    n: usize,
    m: usize,
    k: usize,
) -> GfvsInstance {
    let mut graph = LabeledGraph::new(n, oracle.clone());
    if n >= 2 {
        for _ in 0..m {
            let u = r.random_range(0..n);
            let v = r.random_range(0..n);
            if u != v && graph.label(u, v).is_none() {
                let label = random_element(r, oracle);
                graph.add_edge(u, v, label).unwrap();
            }
        }
    }
    GfvsInstance::new(graph, k)
}
