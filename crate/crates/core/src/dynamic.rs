//! Fully dynamic maximal k-edge-connectivity by sparsification: edges live in
//! fixed-capacity groups at the leaves of a balanced tree whose internal
//! nodes hold a k-certificate of their children's graphs. Only one
//! leaf-to-root path is recomputed per update, and the root certificate is
//! solved statically after each one.

use std::collections::HashMap;

use crate::certificate::k_certificate;
use crate::graph::{GraphError, Multigraph, VertexId};
use crate::partition::Partition;
use crate::solver::max_kec_subgraphs;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SparsCounters {
    pub updates: u64,
    /// Tree nodes recomputed over all updates.
    pub recomputed: u64,
    /// Tree nodes recomputed by the latest update.
    pub last_recomputed: usize,
    pub rebuilds: u64,
}

#[derive(Debug, Clone, Default)]
struct Group {
    slots: Vec<Option<(VertexId, VertexId)>>,
}

#[derive(Debug, Clone)]
pub struct SparsTree {
    k: usize,
    n: usize,
    capacity: usize,
    groups: Vec<Group>,
    /// Heap-ordered: node 1 is the root, leaf `i` is node `leaves + i`.
    nodes: Vec<Multigraph>,
    leaves: usize,
    tombstones: usize,
    slots_of: HashMap<(VertexId, VertexId), Vec<(usize, usize)>>,
    partition: Partition,
    counters: SparsCounters,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

impl SparsTree {
    pub fn build(g: &Multigraph, k: usize) -> Self {
        let mut t = SparsTree {
            k,
            n: g.vertex_count(),
            capacity: 0,
            groups: Vec::new(),
            nodes: Vec::new(),
            leaves: 0,
            tombstones: 0,
            slots_of: HashMap::new(),
            partition: Partition::singletons(g.vertex_count()),
            counters: SparsCounters::default(),
        };
        let edges: Vec<_> = g.edges().map(|(_, u, v)| (u, v)).collect();
        t.rebuild(edges);
        t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.slots_of.values().map(Vec::len).sum()
    }

    pub fn counters(&self) -> SparsCounters {
        self.counters
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Root-to-leaf distance; at most `⌈log2(groups)⌉ + 1`.
    pub fn height(&self) -> usize {
        self.leaves.trailing_zeros() as usize
    }

    pub fn root_certificate(&self) -> &Multigraph {
        &self.nodes[1]
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        for g in &mut self.nodes {
            g.add_vertex();
        }
        self.partition = max_kec_subgraphs(&self.nodes[1], self.k, false);
        VertexId::from_index(self.n - 1)
    }

    pub fn insert(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.counters.updates += 1;
        let fits = self
            .groups
            .last()
            .is_some_and(|g| g.slots.len() < self.capacity);
        if !fits && self.groups.len() == self.leaves {
            let mut edges = self.live_edges();
            edges.push((u, v));
            self.rebuild(edges);
            return Ok(());
        }
        if !fits {
            self.groups.push(Group::default());
        }
        let gi = self.groups.len() - 1;
        let slot = self.groups[gi].slots.len();
        self.groups[gi].slots.push(Some((u, v)));
        self.slots_of.entry(key(u, v)).or_default().push((gi, slot));
        self.refresh(gi);
        Ok(())
    }

    /// Removes one copy of an edge between `u` and `v`.
    pub fn delete(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        let list = self.slots_of.get_mut(&key(u, v)).filter(|l| !l.is_empty());
        let Some(list) = list else {
            return Err(GraphError::NoEdgeBetween(u, v));
        };
        let (gi, slot) = list.pop().unwrap();
        if list.is_empty() {
            self.slots_of.remove(&key(u, v));
        }
        self.counters.updates += 1;
        self.groups[gi].slots[slot] = None;
        self.tombstones += 1;
        if self.tombstones > self.capacity / 2 {
            let edges = self.live_edges();
            self.rebuild(edges);
        } else {
            self.refresh(gi);
        }
        Ok(())
    }

    pub fn max_k_edge(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.partition.same_class(u, v))
    }

    /// Recomputes every internal node against its children; for tests.
    pub fn validate(&self) -> Result<(), String> {
        for i in 0..self.leaves {
            let raw = self.group_graph(i);
            if edge_multiset(&raw) != edge_multiset(&self.nodes[self.leaves + i]) {
                return Err(format!("leaf {i} does not hold its group"));
            }
        }
        for i in (1..self.leaves).rev() {
            let want = self.combine(i);
            if edge_multiset(&want) != edge_multiset(&self.nodes[i]) {
                return Err(format!("node {i} is stale"));
            }
        }
        Ok(())
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() < self.n {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    fn live_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.groups
            .iter()
            .flat_map(|g| g.slots.iter().flatten().copied())
            .collect()
    }

    fn group_graph(&self, i: usize) -> Multigraph {
        let edges = self
            .groups
            .get(i)
            .into_iter()
            .flat_map(|g| g.slots.iter().flatten().copied());
        Multigraph::from_edges(self.n, edges).expect("stored edges are valid")
    }

    fn combine(&self, i: usize) -> Multigraph {
        let both = self.nodes[2 * i]
            .edges()
            .chain(self.nodes[2 * i + 1].edges());
        let union = Multigraph::from_edges(self.n, both.map(|(_, u, v)| (u, v))).expect("valid");
        k_certificate(&union, self.k).certificate
    }

    fn rebuild(&mut self, edges: Vec<(VertexId, VertexId)>) {
        self.counters.rebuilds += 1;
        self.capacity = self.n.max(64);
        self.tombstones = 0;
        self.slots_of.clear();
        self.groups = edges
            .chunks(self.capacity)
            .map(|c| Group {
                slots: c.iter().copied().map(Some).collect(),
            })
            .collect();
        if self.groups.is_empty() {
            self.groups.push(Group::default());
        }
        for (gi, g) in self.groups.iter().enumerate() {
            for (s, e) in g.slots.iter().enumerate() {
                let (u, v) = e.unwrap();
                self.slots_of.entry(key(u, v)).or_default().push((gi, s));
            }
        }
        // Room to double before the next rebuild.
        self.leaves = (2 * self.groups.len()).next_power_of_two();
        self.nodes = vec![Multigraph::with_vertices(self.n); 2 * self.leaves];
        for i in 0..self.groups.len() {
            self.nodes[self.leaves + i] = self.group_graph(i);
        }
        for i in (1..self.leaves).rev() {
            self.nodes[i] = self.combine(i);
        }
        self.counters.last_recomputed = 2 * self.leaves - 1;
        self.counters.recomputed += self.counters.last_recomputed as u64;
        self.partition = max_kec_subgraphs(&self.nodes[1], self.k, false);
    }

    /// Recomputes the path from group `gi`'s leaf to the root.
    fn refresh(&mut self, gi: usize) {
        let mut i = self.leaves + gi;
        self.nodes[i] = self.group_graph(gi);
        let mut touched = 1;
        while i > 1 {
            i /= 2;
            self.nodes[i] = self.combine(i);
            touched += 1;
        }
        self.counters.last_recomputed = touched;
        self.counters.recomputed += touched as u64;
        self.partition = max_kec_subgraphs(&self.nodes[1], self.k, false);
    }
}

fn edge_multiset(g: &Multigraph) -> Vec<(VertexId, VertexId)> {
    let mut out: Vec<_> = g.edges().map(|(_, u, v)| key(u, v)).collect();
    out.sort_unstable();
    out
}
