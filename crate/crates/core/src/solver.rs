//! Static maximal k-edge-connected subgraphs by repeated removal of cuts
//! smaller than k.

use std::collections::{BTreeMap, BinaryHeap};

use thiserror::Error;

use crate::certificate::k_certificate;
use crate::graph::{Cut, EdgeId, Multigraph, VertexId};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
}

/// Weighted contraction over local vertices `0..n`. Returns the lightest
/// phase cut as `(value, side)`, stopping at the first phase cut lighter than
/// `stop_below` when given.
fn stoer_wagner(n: usize, pairs: &[(usize, usize)], stop_below: Option<u64>) -> (u64, Vec<usize>) {
    let mut adj: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
    for &(u, v) in pairs {
        *adj[u].entry(v).or_default() += 1;
        *adj[v].entry(u).or_default() += 1;
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = (u64::MAX, Vec::new());
    let mut key = vec![0u64; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut heap = BinaryHeap::new();
        heap.push((0u64, std::cmp::Reverse(active[0])));
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        let mut count = 0;
        while count < active.len() {
            let (k, std::cmp::Reverse(v)) = match heap.pop() {
                Some(top) => top,
                None => {
                    // Disconnected remainder: pick any vertex not yet added.
                    let v = *active.iter().find(|&&v| !added[v]).unwrap();
                    (0, std::cmp::Reverse(v))
                }
            };
            if added[v] || k != key[v] {
                continue;
            }
            added[v] = true;
            count += 1;
            prev = last;
            last = v;
            for (&w, &c) in &adj[v] {
                if !added[w] {
                    key[w] += c;
                    heap.push((key[w], std::cmp::Reverse(w)));
                }
            }
        }
        let phase = key[last];
        if phase < best.0 {
            best = (phase, groups[last].clone());
        }
        if stop_below.is_some_and(|s| best.0 < s) {
            break;
        }
        // Merge `last` into `prev`.
        let moved = std::mem::take(&mut adj[last]);
        for (w, c) in moved {
            adj[w].remove(&last);
            if w != prev {
                *adj[prev].entry(w).or_default() += c;
                *adj[w].entry(prev).or_default() += c;
            }
        }
        let g = std::mem::take(&mut groups[last]);
        groups[prev].extend(g);
        active.retain(|&v| v != last);
    }
    best.1.sort_unstable();
    best
}

fn cut_from_side(g: &Multigraph, side: Vec<VertexId>) -> Cut {
    let mut inside = vec![false; g.vertex_count()];
    side.iter().for_each(|v| inside[v.index()] = true);
    let edges: Vec<EdgeId> = g
        .edges()
        .filter(|&(_, u, v)| inside[u.index()] != inside[v.index()])
        .map(|(e, _, _)| e)
        .collect();
    Cut {
        value: edges.len(),
        edges,
        side,
    }
}

/// A minimum edge cut of a connected multigraph.
pub fn global_min_cut(g: &Multigraph) -> Result<Cut, SolverError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SolverError::TooSmall);
    }
    if g.connected_components().len() > 1 {
        return Err(SolverError::Disconnected);
    }
    let pairs: Vec<(usize, usize)> = g.edges().map(|(_, u, v)| (u.index(), v.index())).collect();
    let (_, side) = stoer_wagner(n, &pairs, None);
    Ok(cut_from_side(
        g,
        side.into_iter().map(VertexId::from_index).collect(),
    ))
}

/// Maximal k-edge-connected subgraphs. With `use_certificate` and `k ≥ 3` the
/// graph is first replaced by its k-certificate.
pub fn max_kec_subgraphs(g: &Multigraph, k: usize, use_certificate: bool) -> Partition {
    let n = g.vertex_count();
    if k <= 1 {
        return Partition::from_classes(n, g.connected_components());
    }
    let report;
    let g = if use_certificate && k >= 3 {
        report = k_certificate(g, k);
        &report.certificate
    } else {
        g
    };
    let mut local = vec![usize::MAX; n];
    let mut done = Vec::new();
    let mut work: Vec<Vec<VertexId>> = g.connected_components();
    while let Some(set) = work.pop() {
        if set.len() == 1 {
            done.push(set);
            continue;
        }
        for (i, v) in set.iter().enumerate() {
            local[v.index()] = i;
        }
        let mut pairs = Vec::new();
        for &u in &set {
            for &e in g.incident(u) {
                let w = g.opposite(e, u).unwrap();
                if u < w && local[w.index()] != usize::MAX {
                    pairs.push((local[u.index()], local[w.index()]));
                }
            }
        }
        let (value, side) = stoer_wagner(set.len(), &pairs, Some(k as u64));
        for v in &set {
            local[v.index()] = usize::MAX;
        }
        if value >= k as u64 {
            done.push(set);
            continue;
        }
        // Split along the cut, then by connectivity on each side.
        let mut on_side = vec![false; set.len()];
        side.iter().for_each(|&i| on_side[i] = true);
        let mut parts: [Vec<VertexId>; 2] = [Vec::new(), Vec::new()];
        for (i, &v) in set.iter().enumerate() {
            parts[on_side[i] as usize].push(v);
        }
        for members in parts {
            work.extend(components_within(g, &members, &mut local));
        }
    }
    Partition::from_classes(n, done)
}

/// Connected components of the subgraph induced by `set`.
fn components_within(g: &Multigraph, set: &[VertexId], mark: &mut [usize]) -> Vec<Vec<VertexId>> {
    const SEEN: usize = usize::MAX - 1;
    for v in set {
        mark[v.index()] = 0;
    }
    let mut out = Vec::new();
    for &s in set {
        if mark[s.index()] == SEEN {
            continue;
        }
        mark[s.index()] = SEEN;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &e in g.incident(u) {
                let w = g.opposite(e, u).unwrap();
                if mark[w.index()] == 0 {
                    mark[w.index()] = SEEN;
                    comp.push(w);
                }
            }
        }
        out.push(comp);
    }
    for v in set {
        mark[v.index()] = usize::MAX;
    }
    out
}
