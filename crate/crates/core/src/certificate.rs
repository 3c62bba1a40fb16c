//! Forest decompositions and sparse certificates that keep the maximal
//! k-edge-connected subgraphs of a graph.

use crate::dsu::{DsuForest, ItemId};
use crate::graph::{EdgeId, Multigraph};

/// Forests `F_1..F_t`: each `F_i` is a spanning forest of the graph minus the
/// earlier forests. Later forests may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub forests: Vec<Vec<EdgeId>>,
}

impl ForestDecomposition {
    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    /// All edges of the first `i` forests, sorted by id.
    pub fn union_of_first(&self, i: usize) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.forests.iter().take(i).flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone)]
pub struct CertificateReport {
    /// The certificate on the same vertex set, edges renumbered in the order
    /// of `edges`.
    pub certificate: Multigraph,
    /// Source ids of the certificate's edges, ascending.
    pub edges: Vec<EdgeId>,
    /// Superset of the k-interconnection edges, ascending source ids.
    pub interconnection_superset: Vec<EdgeId>,
    /// Forests whose union forms the superset.
    pub forests_used: usize,
}

impl CertificateReport {
    /// `(|E′|, |certificate|)`.
    pub fn sizes(&self) -> (usize, usize) {
        (self.interconnection_superset.len(), self.edges.len())
    }
}

/// `max(1, ⌈4k·log2 n⌉)`.
pub fn forest_count(k: usize, n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let t = (4.0 * k as f64 * (n as f64).log2()).ceil();
    (t as usize).max(1)
}

/// Peels up to `t` spanning forests off the edges with `allowed[e]` set,
/// scanning vertices in order and each adjacency list in order.
fn peel(g: &Multigraph, t: usize, allowed: &mut [bool]) -> Vec<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut left = allowed.iter().filter(|&&a| a).count();
    let mut forests = Vec::with_capacity(t);
    while forests.len() < t {
        if left == 0 {
            forests.push(Vec::new());
            continue;
        }
        let mut dsu: DsuForest<()> = DsuForest::new();
        for _ in 0..n {
            dsu.make_set(());
        }
        let mut forest = Vec::new();
        for u in g.vertices() {
            for &e in g.incident(u) {
                if !allowed[e.index()] {
                    continue;
                }
                let w = g.opposite(e, u).expect("incident edge");
                if dsu.join(ItemId(u.0), ItemId(w.0), ()) {
                    allowed[e.index()] = false;
                    forest.push(e);
                }
            }
        }
        left -= forest.len();
        forests.push(forest);
    }
    forests
}

pub fn forest_decomposition(g: &Multigraph, t: usize) -> ForestDecomposition {
    let mut allowed: Vec<bool> = (0..g.edge_id_bound())
        .map(|i| g.contains_edge(EdgeId(i as u32)))
        .collect();
    ForestDecomposition {
        forests: peel(g, t.max(1), &mut allowed),
    }
}

/// Union of the first `forest_count(k, n)` forests of a decomposition. Every
/// edge joining two different maximal k-edge-connected subgraphs is in it.
pub fn interconnection_superset(g: &Multigraph, k: usize) -> Vec<EdgeId> {
    let t = forest_count(k, g.vertex_count());
    forest_decomposition(g, t).union_of_first(t)
}

/// `E′ ∪` the first `k` forests of a decomposition of `G ∖ E′`.
pub fn k_certificate(g: &Multigraph, k: usize) -> CertificateReport {
    let t = forest_count(k, g.vertex_count());
    let mut allowed: Vec<bool> = (0..g.edge_id_bound())
        .map(|i| g.contains_edge(EdgeId(i as u32)))
        .collect();
    let first = peel(g, t, &mut allowed);
    let mut eprime: Vec<EdgeId> = first.into_iter().flatten().collect();
    eprime.sort_unstable();
    let rest = peel(g, k.max(1), &mut allowed);
    let mut edges: Vec<EdgeId> = eprime
        .iter()
        .copied()
        .chain(rest.into_iter().flatten())
        .collect();
    edges.sort_unstable();
    CertificateReport {
        certificate: g.spanning_subgraph(&edges),
        edges,
        interconnection_superset: eprime,
        forests_used: t,
    }
}
