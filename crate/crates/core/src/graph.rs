//! Undirected multigraph with stable vertex and edge identifiers.
//!
//! Vertices are dense indices assigned in insertion order. Edge ids are never
//! reused after removal, so an id recorded in a cut or a log keeps meaning the
//! same edge for the lifetime of the graph.

use std::fmt;

use thiserror::Error;

/// Dense vertex identifier. Zero-based in memory, one-based in text files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at {0} is not allowed")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("no edge between {0} and {1}")]
    NoEdgeBetween(VertexId, VertexId),
}

/// An edge cut `[S, V \ S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub value: usize,
    pub edges: Vec<EdgeId>,
    /// One side `S` of the cut, sorted.
    pub side: Vec<VertexId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    adjacency: Vec<Vec<EdgeId>>,
    edges: Vec<Option<[VertexId; 2]>>,
    live_edges: usize,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with `n` isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Multigraph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
            live_edges: 0,
        }
    }

    /// Builds a graph on `n` vertices from endpoint pairs; edge ids follow the
    /// order of `pairs`.
    pub fn from_edges(
        n: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::with_vertices(n);
        for (u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adjacency.push(Vec::new());
        VertexId::from_index(self.adjacency.len() - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Some([u, v]));
        self.adjacency[u.index()].push(id);
        self.adjacency[v.index()].push(id);
        self.live_edges += 1;
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        let [u, v] = self
            .edges
            .get_mut(e.index())
            .and_then(Option::take)
            .ok_or(GraphError::UnknownEdge(e))?;
        for w in [u, v] {
            let list = &mut self.adjacency[w.index()];
            let pos = list
                .iter()
                .position(|&x| x == e)
                .expect("adjacency out of sync");
            list.swap_remove(pos);
        }
        self.live_edges -= 1;
        Ok(())
    }

    /// Removes one copy of an edge between `u` and `v`, returning its id.
    pub fn remove_edge_between(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = self
            .find_edge(u, v)
            .ok_or(GraphError::NoEdgeBetween(u, v))?;
        self.remove_edge(e)?;
        Ok(e)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// Upper bound (exclusive) on edge ids handed out so far.
    #[inline]
    pub fn edge_id_bound(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.adjacency.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.index()), Some(Some(_)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adjacency.len()).map(VertexId::from_index)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges
            .get(e.index())
            .copied()
            .flatten()
            .map(|[u, v]| (u, v))
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Live edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|[u, v]| (EdgeId(i as u32), u, v)))
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return 0;
        }
        self.adjacency[u.index()]
            .iter()
            .filter(|&&e| self.opposite(e, u) == Some(v))
            .count()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return None;
        }
        self.adjacency[u.index()]
            .iter()
            .copied()
            .find(|&e| self.opposite(e, u) == Some(v))
    }

    /// Spanning subgraph on the same vertex set keeping only `keep`, in the
    /// given order. Edge ids of the result are renumbered from zero.
    pub fn spanning_subgraph(&self, keep: &[EdgeId]) -> Multigraph {
        let mut g = Multigraph::with_vertices(self.vertex_count());
        for &e in keep {
            let (u, v) = self.endpoints(e).expect("edge not in graph");
            g.add_edge(u, v).expect("endpoints valid");
        }
        g
    }

    /// Connected components, each sorted, ordered by minimum member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(VertexId::from_index(u));
                for &e in &self.adjacency[u] {
                    let w = self.opposite(e, VertexId::from_index(u)).unwrap().index();
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks the structural invariants: endpoints exist, no self-loops,
    /// adjacency lists agree with the edge map, and the degree sum is `2m`.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut live = 0usize;
        let mut expected = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            let Some([u, v]) = *e else { continue };
            live += 1;
            if u.index() >= n || v.index() >= n {
                return Err(format!("edge e{} has a missing endpoint", i + 1));
            }
            if u == v {
                return Err(format!("edge e{} is a self-loop", i + 1));
            }
            expected[u.index()].push(EdgeId(i as u32));
            expected[v.index()].push(EdgeId(i as u32));
        }
        if live != self.live_edges {
            return Err(format!(
                "edge counter {} but {} live edges",
                self.live_edges, live
            ));
        }
        let mut degree_sum = 0;
        for (v, want) in expected.iter_mut().enumerate() {
            let mut have = self.adjacency[v].clone();
            have.sort_unstable();
            want.sort_unstable();
            if have != *want {
                return Err(format!("adjacency of v{} disagrees with edge map", v + 1));
            }
            degree_sum += have.len();
        }
        if degree_sum != 2 * live {
            return Err("degree sum differs from 2m".into());
        }
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }
}
