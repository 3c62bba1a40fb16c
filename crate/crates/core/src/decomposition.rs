//! Incremental maintenance of the maximal 3-edge-connected subgraphs.
//!
//! The tree alternates node kinds by depth: the root (the whole graph) has
//! connected components as children, each component has its 2-edge-connected
//! components as children, and those have their 3-edge-connected components.
//! A 3-edge-connected component that is not 3-edge-connected as an induced
//! subgraph roots the same construction again; the leaves are the maximal
//! 3-edge-connected subgraphs. Each component node keeps its children in a
//! block tree; each 2-edge-connected node keeps its children in a cactus.

use crate::block_forest::{BlockForest, BlockNode, BlockStats};
use crate::cactus::{CactusForest, CactusNode, CactusStats, OriginStats};
use crate::dsu::{DsuForest, ItemId};
use crate::graph::{GraphError, Multigraph, VertexId};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Root,
    Ecc1,
    Ecc2,
    Ecc3,
}

impl NodeKind {
    pub fn child_kind(self) -> NodeKind {
        match self {
            NodeKind::Root | NodeKind::Ecc3 => NodeKind::Ecc1,
            NodeKind::Ecc1 => NodeKind::Ecc2,
            NodeKind::Ecc2 => NodeKind::Ecc3,
        }
    }
}

/// Where a node is represented inside its parent's structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Repr {
    None,
    Block(BlockNode),
    Cactus(CactusNode),
}

#[derive(Debug, Clone)]
struct DecompNode {
    kind: NodeKind,
    parent: Option<u32>,
    children: Vec<u32>,
    slot: u32,
    level: u32,
    alive: bool,
    repr: Repr,
    /// Any vertex of the leaf's set; `Some` exactly for leaves.
    leaf_vertex: Option<VertexId>,
    mark: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecompCounters {
    /// User insertions whose endpoints lay in different leaves.
    pub affecting: u64,
    /// Calls of the insertion routine, re-insertions included.
    pub insert_calls: u64,
    pub reinsertions: u64,
    pub leaf_expansions: u64,
    pub condensations: u64,
    /// Children moved between nodes by sibling merges.
    pub redirections: u64,
}

type Bridge = (VertexId, VertexId);

#[derive(Debug, Clone)]
pub struct DecompTree {
    nodes: Vec<DecompNode>,
    blocks: BlockForest<u32, Bridge>,
    cacti: CactusForest<u32, Bridge>,
    /// Vertex index → leaf node id.
    leaves: DsuForest<u32>,
    counters: DecompCounters,
    live: usize,
}

const ROOT: u32 = 0;

impl Default for DecompTree {
    fn default() -> Self {
        Self::new()
    }
}

impl DecompTree {
    pub fn new() -> Self {
        DecompTree {
            nodes: vec![DecompNode {
                kind: NodeKind::Root,
                parent: None,
                children: Vec::new(),
                slot: 0,
                level: 0,
                alive: true,
                repr: Repr::None,
                leaf_vertex: None,
                mark: false,
            }],
            blocks: BlockForest::new(),
            cacti: CactusForest::new(),
            leaves: DsuForest::new(),
            counters: DecompCounters::default(),
            live: 1,
        }
    }

    /// Builds the tree by inserting the vertices of `g`, then its edges in id
    /// order.
    pub fn from_graph(g: &Multigraph) -> Self {
        let mut t = DecompTree::new();
        for _ in 0..g.vertex_count() {
            t.insert_vertex();
        }
        for (_, u, v) in g.edges() {
            t.insert_edge(u, v).expect("graph edges are valid");
        }
        t
    }

    pub fn vertex_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn counters(&self) -> DecompCounters {
        self.counters
    }

    pub fn block_stats(&self) -> BlockStats {
        self.blocks.stats()
    }

    pub fn cactus_stats(&self) -> CactusStats {
        self.cacti.stats()
    }

    /// Segment-walk work per joined cycle.
    pub fn cactus_origins(&self) -> &[OriginStats] {
        self.cacti.origin_stats()
    }

    /// Live nodes of the tree, root included.
    pub fn node_count(&self) -> usize {
        self.live
    }

    /// Number of maximal 3-edge-connected subgraphs.
    pub fn count(&self) -> usize {
        self.leaves.set_count()
    }

    pub fn insert_vertex(&mut self) -> VertexId {
        if self.nodes[ROOT as usize].leaf_vertex.is_some() {
            // A 3-edge-connected graph is a single root leaf; a new vertex
            // disconnects it, so the old vertices move down into a chain.
            self.expand_leaf(ROOT);
        }
        let v = VertexId::from_index(self.leaves.len());
        let leaf = self.add_chain(ROOT);
        self.leaves.make_set(leaf);
        self.nodes[leaf as usize].leaf_vertex = Some(v);
        v
    }

    pub fn insert_edge(&mut self, x: VertexId, y: VertexId) -> Result<(), GraphError> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(GraphError::SelfLoop(x));
        }
        self.insert(x, y, false);
        Ok(())
    }

    pub fn same_max_3ec(&mut self, x: VertexId, y: VertexId) -> Result<bool, GraphError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.leaves.same_set(ItemId(x.0), ItemId(y.0)))
    }

    /// The leaf holding `x`.
    pub fn leaf_of(&mut self, x: VertexId) -> Result<NodeId, GraphError> {
        self.check(x)?;
        Ok(NodeId(self.leaf(x)))
    }

    /// Vertex set of the maximal 3-edge-connected subgraph containing `x`.
    pub fn subgraph_of(&mut self, x: VertexId) -> Result<Vec<VertexId>, GraphError> {
        self.check(x)?;
        let root = self.leaves.root(ItemId(x.0));
        let mut out: Vec<VertexId> = self
            .leaves
            .members(root)
            .expect("root of a set")
            .into_iter()
            .map(|i| VertexId(i.0))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn partition(&mut self) -> Partition {
        let n = self.vertex_count();
        let reps: Vec<ItemId> = self.leaves.roots().collect();
        let classes = reps.into_iter().map(|r| {
            self.leaves
                .members(r)
                .expect("root of a set")
                .into_iter()
                .map(|i| VertexId(i.0))
                .collect::<Vec<_>>()
        });
        Partition::from_classes(n, classes.collect::<Vec<_>>())
    }

    pub fn kind(&self, n: NodeId) -> NodeKind {
        self.nodes[n.0 as usize].kind
    }

    pub fn level(&self, n: NodeId) -> u32 {
        self.nodes[n.0 as usize].level
    }

    pub fn parent(&self, n: NodeId) -> Option<NodeId> {
        self.nodes[n.0 as usize].parent.map(NodeId)
    }

    pub fn children(&self, n: NodeId) -> Vec<NodeId> {
        self.nodes[n.0 as usize]
            .children
            .iter()
            .map(|&c| NodeId(c))
            .collect()
    }

    pub fn root(&self) -> NodeId {
        NodeId(ROOT)
    }

    // ---- insertion ----

    fn insert(&mut self, x: VertexId, y: VertexId, reinsertion: bool) {
        self.counters.insert_calls += 1;
        if reinsertion {
            self.counters.reinsertions += 1;
        }
        let lx = self.leaf(x);
        let ly = self.leaf(y);
        if lx == ly {
            return;
        }
        if !reinsertion {
            self.counters.affecting += 1;
        }
        let (px, py, n) = self.nca(lx, ly);
        let c1 = *px.last().expect("leaf below its ancestor");
        let c2 = *py.last().expect("leaf below its ancestor");
        match self.nodes[n as usize].kind {
            NodeKind::Root | NodeKind::Ecc3 => {
                let g1 = px[px.len() - 2];
                let g2 = py[py.len() - 2];
                let b1 = self.block_of(g1);
                let b2 = self.block_of(g2);
                self.blocks
                    .join_trees(b1, b2, (x, y))
                    .expect("components have separate trees");
                self.merge_siblings(&[c1, c2]);
            }
            NodeKind::Ecc1 => self.insert_at_ecc1(n, c1, c2, x, y),
            NodeKind::Ecc2 => self.insert_at_ecc2(n, c1, c2, x, y),
        }
    }

    /// `(x, y)` joins two 2-edge-connected components of component `n`: the
    /// block path between them becomes one new 2-edge-connected node whose
    /// cactus gains a cycle through the merged 3-edge-connected parts.
    fn insert_at_ecc1(&mut self, n: u32, c1: u32, c2: u32, x: VertexId, y: VertexId) {
        let b1 = self.block_of(c1);
        let b2 = self.block_of(c2);
        let path = self
            .blocks
            .compress_path(b1, b2)
            .expect("one tree per component");
        let xs: Vec<u32> = path
            .handles
            .iter()
            .map(|h| h.expect("bound handle"))
            .collect();
        let bridges: Vec<Bridge> = path
            .payloads
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let la = self.leaf(a);
                if self.ancestor_below(la, n) == xs[i] {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        let k = xs.len();
        let mut joined = Vec::with_capacity(k);
        for (i, &xi) in xs.iter().enumerate() {
            let from = if i == 0 { x } else { bridges[i - 1].1 };
            let to = if i + 1 == k { y } else { bridges[i].0 };
            let lf = self.leaf(from);
            let lt = self.leaf(to);
            let da = self.ancestor_below(lf, xi);
            let db = self.ancestor_below(lt, xi);
            let d = if da == db {
                da
            } else {
                let (ca, cb) = (self.cactus_of(da), self.cactus_of(db));
                let r = self
                    .cacti
                    .compress_cycle_path(ca, cb)
                    .expect("one cactus per block");
                let ds: Vec<u32> = r.handles.iter().map(|h| h.expect("bound handle")).collect();
                self.merge3ecc(&ds, r.payloads, r.merged)
            };
            joined.push(self.cactus_of(d));
        }
        let merged = self.merge_siblings(&xs);
        self.blocks.set_handle(path.merged, merged).unwrap();
        self.nodes[merged as usize].repr = Repr::Block(path.merged);
        let mut payloads = bridges;
        payloads.push((y, x));
        self.cacti
            .join_cactuses(&joined, payloads)
            .expect("blocks have separate cactuses");
    }

    /// `(x, y)` joins two 3-edge-connected components of block `n`.
    fn insert_at_ecc2(&mut self, n: u32, c1: u32, c2: u32, x: VertexId, y: VertexId) {
        let (a, b) = (self.cactus_of(c1), self.cactus_of(c2));
        let r = self
            .cacti
            .compress_cycle_path(a, b)
            .expect("one cactus per block");
        if self.cacti.cactus_size(r.merged).unwrap() == 1 {
            // The whole block became 3-edge-connected.
            let p = self.nodes[n as usize].parent.unwrap();
            let grand = self.nodes[p as usize].parent.unwrap();
            self.counters.condensations += 1;
            if self.nodes[grand as usize].children.len() == 1
                && self.nodes[p as usize].children.len() == 1
            {
                self.condense(grand);
            } else {
                self.condense(n);
                let level = self.nodes[n as usize].level + 1;
                let leaf = self.new_node(NodeKind::Ecc3, n, level);
                let v = self.nodes[n as usize].leaf_vertex.take().unwrap();
                self.nodes[leaf as usize].leaf_vertex = Some(v);
                self.leaves.set_label(ItemId(v.0), leaf);
                self.nodes[leaf as usize].repr = Repr::Cactus(r.merged);
                self.cacti.set_handle(r.merged, leaf).unwrap();
            }
        } else {
            let ds: Vec<u32> = r.handles.iter().map(|h| h.expect("bound handle")).collect();
            self.merge3ecc(&ds, r.payloads, r.merged);
            self.insert(x, y, true);
        }
    }

    /// Merges the 3-edge-connected children `ds` of one block into a node
    /// bound to cactus node `z`, then re-inserts the cactus edges that ran
    /// between them.
    fn merge3ecc(&mut self, ds: &[u32], payloads: Vec<Bridge>, z: CactusNode) -> u32 {
        for &d in ds {
            if self.nodes[d as usize].leaf_vertex.is_some() {
                self.expand_leaf(d);
            }
        }
        let m = self.merge_siblings(ds);
        self.nodes[m as usize].repr = Repr::Cactus(z);
        self.cacti.set_handle(z, m).unwrap();
        for (a, b) in payloads {
            self.insert(a, b, true);
        }
        m
    }

    // ---- tree surgery ----

    fn new_node(&mut self, kind: NodeKind, parent: u32, level: u32) -> u32 {
        let id = self.nodes.len() as u32;
        let slot = self.nodes[parent as usize].children.len() as u32;
        self.nodes[parent as usize].children.push(id);
        self.nodes.push(DecompNode {
            kind,
            parent: Some(parent),
            children: Vec::new(),
            slot,
            level,
            alive: true,
            repr: Repr::None,
            leaf_vertex: None,
            mark: false,
        });
        self.live += 1;
        id
    }

    /// Adds component, block and 3-edge-connected nodes below `parent` with
    /// trivial structures; returns the bottom node.
    fn add_chain(&mut self, parent: u32) -> u32 {
        let level = self.nodes[parent as usize].level;
        let c1 = self.new_node(NodeKind::Ecc1, parent, level + 1);
        let c2 = self.new_node(NodeKind::Ecc2, c1, level + 2);
        let c3 = self.new_node(NodeKind::Ecc3, c2, level + 3);
        let b = self.blocks.new_node(c2);
        self.nodes[c2 as usize].repr = Repr::Block(b);
        let c = self.cacti.new_node(c3);
        self.nodes[c3 as usize].repr = Repr::Cactus(c);
        c3
    }

    /// Pushes a leaf's vertex set one chain deeper so the leaf can take
    /// children.
    fn expand_leaf(&mut self, d: u32) {
        let v = self.nodes[d as usize].leaf_vertex.take().expect("a leaf");
        let leaf = self.add_chain(d);
        self.nodes[leaf as usize].leaf_vertex = Some(v);
        self.leaves.set_label(ItemId(v.0), leaf);
        self.counters.leaf_expansions += 1;
    }

    fn detach(&mut self, c: u32) {
        let p = self.nodes[c as usize].parent.take().expect("non-root");
        let slot = self.nodes[c as usize].slot as usize;
        let kids = &mut self.nodes[p as usize].children;
        kids.swap_remove(slot);
        if let Some(&moved) = kids.get(slot) {
            self.nodes[moved as usize].slot = slot as u32;
        }
    }

    /// Merges same-level siblings by moving every child into the one with the
    /// most children.
    fn merge_siblings(&mut self, group: &[u32]) -> u32 {
        let survivor = group.iter().copied().fold(group[0], |best, g| {
            if self.nodes[g as usize].children.len() > self.nodes[best as usize].children.len() {
                g
            } else {
                best
            }
        });
        for &g in group {
            if g == survivor {
                continue;
            }
            let kids = std::mem::take(&mut self.nodes[g as usize].children);
            self.counters.redirections += kids.len() as u64;
            for k in kids {
                let slot = self.nodes[survivor as usize].children.len() as u32;
                self.nodes[survivor as usize].children.push(k);
                let node = &mut self.nodes[k as usize];
                node.parent = Some(survivor);
                node.slot = slot;
            }
            self.detach(g);
            self.nodes[g as usize].alive = false;
            self.live -= 1;
        }
        survivor
    }

    /// Discards the proper descendants of `top` and makes it a leaf holding
    /// all their vertices.
    fn condense(&mut self, top: u32) {
        let mut leaf_vertices = Vec::new();
        let mut stack = std::mem::take(&mut self.nodes[top as usize].children);
        while let Some(c) = stack.pop() {
            let node = &mut self.nodes[c as usize];
            node.alive = false;
            node.parent = None;
            if let Some(v) = node.leaf_vertex.take() {
                leaf_vertices.push(v);
            }
            stack.append(&mut node.children);
            self.live -= 1;
        }
        let first = leaf_vertices[0];
        for &v in &leaf_vertices[1..] {
            self.leaves.join(ItemId(first.0), ItemId(v.0), top);
        }
        self.leaves.set_label(ItemId(first.0), top);
        self.nodes[top as usize].leaf_vertex = Some(first);
    }

    // ---- lookups ----

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v.index() < self.leaves.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    #[inline]
    fn leaf(&mut self, v: VertexId) -> u32 {
        self.leaves.label(ItemId(v.0))
    }

    fn block_of(&self, n: u32) -> BlockNode {
        match self.nodes[n as usize].repr {
            Repr::Block(b) => b,
            other => panic!("node {n} has no block representative: {other:?}"),
        }
    }

    fn cactus_of(&self, n: u32) -> CactusNode {
        match self.nodes[n as usize].repr {
            Repr::Cactus(c) => c,
            other => panic!("node {n} has no cactus representative: {other:?}"),
        }
    }

    /// The child of `top` on the way up from `from`.
    fn ancestor_below(&self, from: u32, top: u32) -> u32 {
        let mut cur = from;
        loop {
            let p = self.nodes[cur as usize]
                .parent
                .expect("`top` is an ancestor");
            if p == top {
                return cur;
            }
            cur = p;
        }
    }

    /// Nearest common ancestor of two distinct nodes by alternating climbs.
    /// Returns both climbed paths without the ancestor itself.
    fn nca(&mut self, a: u32, b: u32) -> (Vec<u32>, Vec<u32>, u32) {
        let mut pa = vec![a];
        let mut pb = vec![b];
        self.nodes[a as usize].mark = true;
        self.nodes[b as usize].mark = true;
        let (mut ca, mut cb) = (Some(a), Some(b));
        let meet = 'climb: loop {
            for (cur, list) in [(&mut ca, &mut pa), (&mut cb, &mut pb)] {
                let Some(c) = *cur else { continue };
                match self.nodes[c as usize].parent {
                    Some(p) if self.nodes[p as usize].mark => break 'climb p,
                    Some(p) => {
                        self.nodes[p as usize].mark = true;
                        list.push(p);
                        *cur = Some(p);
                    }
                    None => *cur = None,
                }
            }
        };
        for &n in pa.iter().chain(&pb) {
            self.nodes[n as usize].mark = false;
        }
        for list in [&mut pa, &mut pb] {
            if let Some(pos) = list.iter().position(|&n| n == meet) {
                list.truncate(pos);
            }
        }
        (pa, pb, meet)
    }

    // ---- audit ----

    /// Full structural check: kinds and levels, parent/child links, leaves
    /// and their vertex sets, and the bijection between each node's children
    /// and the block tree or cactus it keeps.
    pub fn audit(&mut self) -> Result<(), String> {
        let root = &self.nodes[ROOT as usize];
        if root.kind != NodeKind::Root || root.level != 0 || root.parent.is_some() || !root.alive {
            return Err("malformed root".into());
        }
        let mut live = 0;
        let mut leaf_count = 0;
        for id in 0..self.nodes.len() as u32 {
            let node = self.nodes[id as usize].clone();
            if !node.alive {
                continue;
            }
            live += 1;
            for (slot, &c) in node.children.iter().enumerate() {
                let child = &self.nodes[c as usize];
                if !child.alive || child.parent != Some(id) || child.slot as usize != slot {
                    return Err(format!("node {id}: child {c} is stale or misplaced"));
                }
                if child.kind != node.kind.child_kind() || child.level != node.level + 1 {
                    return Err(format!("node {id}: child {c} breaks kind/level cycling"));
                }
            }
            if let Some(v) = node.leaf_vertex {
                leaf_count += 1;
                if !node.children.is_empty() {
                    return Err(format!("leaf {id} has children"));
                }
                if !matches!(node.kind, NodeKind::Ecc3 | NodeKind::Root) {
                    return Err(format!("leaf {id} has kind {:?}", node.kind));
                }
                if self.leaves.label(ItemId(v.0)) != id {
                    return Err(format!("leaf {id} does not own its vertex {v}"));
                }
            } else if node.children.is_empty() && !(id == ROOT && self.leaves.is_empty()) {
                return Err(format!("childless node {id} is not a leaf"));
            }
            match node.kind {
                NodeKind::Ecc1 => self.audit_blocks(id, &node.children)?,
                NodeKind::Ecc2 => self.audit_cactus(id, &node.children)?,
                _ => {}
            }
            if matches!(node.kind, NodeKind::Root | NodeKind::Ecc3) && node.children.len() == 1 {
                let p = node.children[0];
                let pk = &self.nodes[p as usize].children;
                if pk.len() == 1 {
                    let q = pk[0];
                    let qk = &self.nodes[q as usize].children;
                    if qk.len() == 1 {
                        let l = qk[0];
                        let trivial = id == ROOT && self.leaves.len() == 1;
                        if !trivial {
                            return Err(format!(
                                "node {id} is 3-edge-connected through a single chain to {l} but not a leaf"
                            ));
                        }
                    }
                }
            }
        }
        if live != self.live {
            return Err(format!("live counter {} but {live} live nodes", self.live));
        }
        if leaf_count != self.leaves.set_count() {
            return Err(format!(
                "{leaf_count} leaves but {} vertex classes",
                self.leaves.set_count()
            ));
        }
        for v in 0..self.leaves.len() as u32 {
            let l = self.leaves.label(ItemId(v));
            if !self.nodes[l as usize].alive || self.nodes[l as usize].leaf_vertex.is_none() {
                return Err(format!("vertex {} maps to non-leaf {l}", v + 1));
            }
        }
        Ok(())
    }

    fn audit_blocks(&mut self, id: u32, kids: &[u32]) -> Result<(), String> {
        let mut anchor = None;
        for &c in kids {
            let Repr::Block(b) = self.nodes[c as usize].repr else {
                return Err(format!("block child {c} of {id} has no block node"));
            };
            if !self.blocks.is_live(b) || self.blocks.handle(b).unwrap() != Some(c) {
                return Err(format!("block node of {c} does not point back"));
            }
            let a = *anchor.get_or_insert(b);
            if !self.blocks.same_tree(a, b).unwrap() {
                return Err(format!("children of {id} span several block trees"));
            }
        }
        if let Some(a) = anchor {
            let size = self.blocks.tree_size(a).unwrap();
            if size != kids.len() {
                return Err(format!(
                    "block tree of {id} has {size} nodes for {} children",
                    kids.len()
                ));
            }
        }
        Ok(())
    }

    fn audit_cactus(&mut self, id: u32, kids: &[u32]) -> Result<(), String> {
        let mut anchor = None;
        for &c in kids {
            let Repr::Cactus(x) = self.nodes[c as usize].repr else {
                return Err(format!("child {c} of block {id} has no cactus node"));
            };
            if !self.cacti.is_live(x) || self.cacti.handle(x).unwrap() != Some(c) {
                return Err(format!("cactus node of {c} does not point back"));
            }
            let a = *anchor.get_or_insert(x);
            if !self.cacti.same_cactus(a, x).unwrap() {
                return Err(format!("children of {id} span several cactuses"));
            }
        }
        if let Some(a) = anchor {
            let size = self.cacti.cactus_size(a).unwrap();
            if size != kids.len() {
                return Err(format!(
                    "cactus of {id} has {size} nodes for {} children",
                    kids.len()
                ));
            }
        }
        Ok(())
    }

    /// Validates the block and cactus forests backing the tree.
    pub fn audit_structures(&mut self) -> Result<(), String> {
        self.blocks.validate()?;
        self.cacti.validate()
    }
}
