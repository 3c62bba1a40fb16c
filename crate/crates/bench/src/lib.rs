//! Workload generators shared by the benchmarks.

use eccforge_core::{gen, Multigraph, Op};

/// Planted clusters with sparse links, one cluster per 16 vertices.
pub fn planted(seed: u64, n: usize) -> Multigraph {
    let mut rng = gen::rng(seed);
    gen::planted(&mut rng, n, (n / 16).max(1), 0.4, n / 4)
}

pub fn sparse(seed: u64, n: usize, per_vertex: usize) -> Multigraph {
    let mut rng = gen::rng(seed);
    gen::gnm(&mut rng, n, per_vertex * n)
}

/// A mixed update/query stream over `n` vertices.
pub fn stream(seed: u64, n: usize, ops: usize) -> Vec<Op> {
    let mut rng = gen::rng(seed);
    gen::dynamic_stream(&mut rng, n, ops, 0.7)
}
