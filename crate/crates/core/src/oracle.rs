//! Brute-force ground truth built on unit-capacity augmenting paths.
//!
//! Deliberately slow and independent of the solver: nothing here calls into
//! the cut or certificate modules.

use std::collections::VecDeque;

use crate::graph::{EdgeId, GraphError, Multigraph, VertexId};
use crate::partition::Partition;

/// Diagonal entry of a λ table.
pub const LAMBDA_SELF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `lambda[u][v]`, with [`LAMBDA_SELF`] on the diagonal.
    pub lambda: Vec<Vec<u32>>,
    pub kecc: Partition,
    pub maximal: Partition,
}

/// Residual network of an undirected multigraph restricted to a vertex mask.
/// Each edge becomes a pair of opposite arcs of capacity one that serve as
/// each other's reverse.
struct FlowNet {
    head: Vec<u32>,
    cap: Vec<u8>,
    out: Vec<Vec<u32>>,
}

impl FlowNet {
    fn new(g: &Multigraph, inside: Option<&[bool]>) -> Self {
        let n = g.vertex_count();
        let mut net = FlowNet {
            head: Vec::with_capacity(2 * g.edge_count()),
            cap: Vec::with_capacity(2 * g.edge_count()),
            out: vec![Vec::new(); n],
        };
        for (_, u, v) in g.edges() {
            if let Some(mask) = inside {
                if !mask[u.index()] || !mask[v.index()] {
                    continue;
                }
            }
            let a = net.head.len() as u32;
            net.head.push(v.0);
            net.cap.push(1);
            net.head.push(u.0);
            net.cap.push(1);
            net.out[u.index()].push(a);
            net.out[v.index()].push(a + 1);
        }
        net
    }

    /// Pushes up to `limit` units from `s` to `t`; returns the flow value.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.out.len();
        let mut flow = 0;
        let mut via = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            via.iter_mut().for_each(|x| *x = u32::MAX);
            via[s] = u32::MAX - 1;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.out[u] {
                    let w = self.head[a as usize] as usize;
                    if self.cap[a as usize] > 0 && via[w] == u32::MAX {
                        via[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if via[t] == u32::MAX {
                break;
            }
            let mut w = t;
            while w != s {
                let a = via[w] as usize;
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                w = self.head[a ^ 1] as usize;
            }
            flow += 1;
        }
        flow
    }

    /// Vertices reachable from `s` through arcs with residual capacity.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let w = self.head[a as usize] as usize;
                if self.cap[a as usize] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

fn check(g: &Multigraph, v: VertexId) -> Result<(), GraphError> {
    if g.contains_vertex(v) {
        Ok(())
    } else {
        Err(GraphError::UnknownVertex(v))
    }
}

/// Number of pairwise edge-disjoint paths between `u` and `v`.
pub fn edge_connectivity(g: &Multigraph, u: VertexId, v: VertexId) -> Result<usize, GraphError> {
    check(g, u)?;
    check(g, v)?;
    if u == v {
        return Ok(LAMBDA_SELF as usize);
    }
    let mut net = FlowNet::new(g, None);
    Ok(net.max_flow(u.index(), v.index(), u32::MAX) as usize)
}

/// `min(λ(u, v), cap)` within the subgraph induced by `inside`.
fn capped_lambda(
    g: &Multigraph,
    inside: Option<&[bool]>,
    u: VertexId,
    v: VertexId,
    cap: u32,
) -> u32 {
    FlowNet::new(g, inside).max_flow(u.index(), v.index(), cap)
}

pub fn lambda_table(g: &Multigraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut table = vec![vec![LAMBDA_SELF; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let l = capped_lambda(
                g,
                None,
                VertexId::from_index(u),
                VertexId::from_index(v),
                u32::MAX,
            );
            table[u][v] = l;
            table[v][u] = l;
        }
    }
    table
}

/// Classes of the relation `λ(u, v) ≥ k` in the whole graph.
pub fn kecc_partition(g: &Multigraph, k: usize) -> Partition {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        for t in s + 1..n {
            if label[t] == usize::MAX
                && capped_lambda(
                    g,
                    None,
                    VertexId::from_index(s),
                    VertexId::from_index(t),
                    k as u32,
                ) >= k as u32
            {
                label[t] = s;
            }
        }
    }
    Partition::from_labels(&label)
}

/// Maximal vertex sets whose induced subgraph is k-edge-connected, by direct
/// search: a set is split along a minimum `x–y` cut of its induced subgraph
/// as long as some pair inside it is less than k-connected there.
pub fn maximal_kec_bruteforce(g: &Multigraph, k: usize) -> Partition {
    let n = g.vertex_count();
    let mut done: Vec<Vec<VertexId>> = Vec::new();
    let mut work: Vec<Vec<VertexId>> = vec![g.vertices().collect()];
    let mut inside = vec![false; n];
    while let Some(set) = work.pop() {
        if set.len() <= 1 {
            done.extend((!set.is_empty()).then_some(set));
            continue;
        }
        set.iter().for_each(|v| inside[v.index()] = true);
        let x = set[0];
        let mut split = None;
        for &y in &set[1..] {
            let mut net = FlowNet::new(g, Some(&inside));
            if net.max_flow(x.index(), y.index(), k as u32) < k as u32 {
                split = Some(net.reachable(x.index()));
                break;
            }
        }
        set.iter().for_each(|v| inside[v.index()] = false);
        match split {
            None => done.push(set),
            Some(side) => {
                let (a, b): (Vec<_>, Vec<_>) = set.into_iter().partition(|v| side[v.index()]);
                work.push(a);
                work.push(b);
            }
        }
    }
    Partition::from_classes(n, done)
}

/// Edges whose endpoints lie in different maximal k-edge-connected subgraphs.
pub fn interconnection_edges(g: &Multigraph, maximal: &Partition) -> Vec<EdgeId> {
    g.edges()
        .filter(|&(_, u, v)| !maximal.same_class(u, v))
        .map(|(e, _, _)| e)
        .collect()
}

/// Whether the subgraph induced by `set` is k-edge-connected.
pub fn induces_kec(g: &Multigraph, set: &[VertexId], k: usize) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut inside = vec![false; g.vertex_count()];
    set.iter().for_each(|v| inside[v.index()] = true);
    set[1..]
        .iter()
        .all(|&y| capped_lambda(g, Some(&inside), set[0], y, k as u32) >= k as u32)
}

pub fn analyze(g: &Multigraph, k: usize) -> OracleResult {
    OracleResult {
        lambda: lambda_table(g),
        kecc: kecc_partition(g, k),
        maximal: maximal_kec_bruteforce(g, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Multigraph {
        Multigraph::from_edges(
            n,
            edges
                .iter()
                .map(|&(a, b)| (VertexId(a - 1), VertexId(b - 1))),
        )
        .unwrap()
    }

    fn k4(offset: u32) -> Vec<(u32, u32)> {
        let mut e = Vec::new();
        for a in 1..=4 {
            for b in a + 1..=4 {
                e.push((a + offset, b + offset));
            }
        }
        e
    }

    fn v(i: u32) -> VertexId {
        VertexId(i - 1)
    }

    #[test]
    fn small_connectivities() {
        let path = graph(3, &[(1, 2), (2, 3)]);
        assert_eq!(edge_connectivity(&path, v(1), v(3)).unwrap(), 1);
        let split = graph(4, &[(1, 2), (3, 4)]);
        assert_eq!(edge_connectivity(&split, v(1), v(4)).unwrap(), 0);
        let tri = graph(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(edge_connectivity(&tri, v(1), v(2)).unwrap(), 2);
        let k = graph(4, &k4(0));
        assert_eq!(edge_connectivity(&k, v(1), v(4)).unwrap(), 3);
        let par = graph(2, &[(1, 2), (1, 2), (2, 1)]);
        assert_eq!(edge_connectivity(&par, v(2), v(1)).unwrap(), 3);
        assert!(edge_connectivity(&par, v(1), v(3)).is_err());
    }

    #[test]
    fn k_ecc_versus_maximal() {
        // Two K4s joined by two vertex-disjoint ladders of length two: pairs
        // across are 3-connected in the whole graph only through outside
        // vertices.
        let mut e = k4(0);
        e.extend(k4(4));
        e.extend([(1, 9), (9, 5), (2, 10), (10, 6), (3, 7)]);
        let g = graph(10, &e);
        let maximal = maximal_kec_bruteforce(&g, 3);
        let kecc = kecc_partition(&g, 3);
        assert!(maximal.refines(&kecc));
        assert_eq!(kecc.class_count(), 3);
        assert_eq!(maximal.class_count(), 4);
        for c in maximal.classes() {
            assert!(induces_kec(&g, c, 3));
        }
    }

    #[test]
    fn cycle_and_bridge() {
        let c5 = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert_eq!(maximal_kec_bruteforce(&c5, 3), Partition::singletons(5));
        assert_eq!(maximal_kec_bruteforce(&c5, 2).class_count(), 1);
        let mut e = k4(0);
        e.extend(k4(4));
        e.push((4, 5));
        let g = graph(8, &e);
        let p = maximal_kec_bruteforce(&g, 3);
        assert_eq!(p, Partition::from_labels(&[0, 0, 0, 0, 1, 1, 1, 1]));
        assert_eq!(interconnection_edges(&g, &p).len(), 1);
    }

    #[test]
    fn table_is_symmetric_and_ultrametric() {
        let g = graph(
            6,
            &[
                (1, 2),
                (1, 2),
                (2, 3),
                (3, 1),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
                (5, 1),
            ],
        );
        let t = lambda_table(&g);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(t[a][b], t[b][a]);
                for c in 0..6 {
                    if a != c && a != b && b != c {
                        assert!(t[a][c] >= t[a][b].min(t[b][c]));
                    }
                }
            }
        }
    }
}
