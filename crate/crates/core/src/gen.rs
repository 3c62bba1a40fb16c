//! Seeded workload generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::Op;
use crate::graph::{Multigraph, VertexId};

/// The generator behind every seeded workload.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pair<R: Rng>(rng: &mut R, n: usize) -> (VertexId, VertexId) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (VertexId::from_index(a), VertexId::from_index(b))
}

/// `m` edges with endpoints drawn uniformly among distinct pairs; parallel
/// edges allowed.
pub fn gnm_edges<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<(VertexId, VertexId)> {
    if n < 2 {
        return Vec::new();
    }
    (0..m).map(|_| pair(rng, n)).collect()
}

pub fn gnm<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    Multigraph::from_edges(n, gnm_edges(rng, n, m)).expect("generated edges are valid")
}

/// Edges of a graph with dense clusters of random sizes joined by a few
/// sparse links, shuffled.
pub fn planted_edges<R: Rng>(
    rng: &mut R,
    n: usize,
    clusters: usize,
    density: f64,
    links: usize,
) -> Vec<(VertexId, VertexId)> {
    let clusters = clusters.clamp(1, n.max(1));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut label = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        label[v] = if i < clusters {
            i
        } else {
            rng.gen_range(0..clusters)
        };
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if label[a] == label[b] {
                let copies = if rng.gen_bool(density) {
                    1 + rng.gen_range(0..2)
                } else {
                    0
                };
                for _ in 0..copies {
                    edges.push((VertexId::from_index(a), VertexId::from_index(b)));
                }
            }
        }
    }
    if n >= 2 {
        for _ in 0..links {
            edges.push(pair(rng, n));
        }
    }
    edges.shuffle(rng);
    edges
}

pub fn planted<R: Rng>(
    rng: &mut R,
    n: usize,
    clusters: usize,
    density: f64,
    links: usize,
) -> Multigraph {
    Multigraph::from_edges(n, planted_edges(rng, n, clusters, density, links))
        .expect("generated edges are valid")
}

/// The insertion sequence `(1,2), (1,2), (3,1), (3,2), …, (j,j−2), (j,j−1)`
/// on `n` vertices, zero-based.
pub fn ladder_sequence(n: usize) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    out.push((VertexId(0), VertexId(1)));
    out.push((VertexId(0), VertexId(1)));
    for j in 3..=n as u32 {
        out.push((VertexId(j - 1), VertexId(j - 3)));
        out.push((VertexId(j - 1), VertexId(j - 2)));
    }
    out
}

/// A mixed update/query stream over `n` vertices: roughly `insert_bias` of
/// the updates are insertions, deletions pick a uniformly random live edge.
pub fn dynamic_stream<R: Rng>(rng: &mut R, n: usize, ops: usize, insert_bias: f64) -> Vec<Op> {
    let mut out: Vec<Op> = (0..n).map(|_| Op::AddVertex).collect();
    let mut live: Vec<(VertexId, VertexId)> = Vec::new();
    if n < 2 {
        return out;
    }
    for _ in 0..ops {
        let roll: f64 = rng.gen();
        if roll < 0.3 {
            let (a, b) = pair(rng, n);
            out.push(Op::Query(a, b));
        } else if live.is_empty() || rng.gen_bool(insert_bias) {
            let (a, b) = pair(rng, n);
            live.push((a, b));
            out.push(Op::AddEdge(a, b));
        } else {
            let i = rng.gen_range(0..live.len());
            let (a, b) = live.swap_remove(i);
            out.push(Op::DeleteEdge(a, b));
        }
    }
    out
}
