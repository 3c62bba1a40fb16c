//! Rooted forest of 2-edge-connected blocks joined by bridge edges.
//!
//! Each node stores a raw parent pointer and the payload of the edge to its
//! parent. Merged nodes are collapsed through a [`DsuForest`] whose label is
//! the surviving node, so raw parent pointers into a merged set resolve to the
//! survivor with one `find`.

use thiserror::Error;

use crate::dsu::{DsuForest, ItemId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockNode(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("unknown block node {0:?}")]
    UnknownNode(BlockNode),
    #[error("path endpoints coincide at {0:?}")]
    SameNode(BlockNode),
    #[error("{0:?} and {1:?} lie in different trees")]
    NotSameTree(BlockNode, BlockNode),
    #[error("{0:?} and {1:?} already lie in the same tree")]
    SameTree(BlockNode, BlockNode),
}

/// Result of [`BlockForest::compress_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedPath<H, P> {
    /// Path nodes in order from `x` to `y`.
    pub nodes: Vec<BlockNode>,
    /// Handles of `nodes`, taken before the merge.
    pub handles: Vec<Option<H>>,
    /// Payloads of the path edges in order from `x` to `y`.
    pub payloads: Vec<P>,
    /// The node all of `nodes` were merged into. Its handle is cleared.
    pub merged: BlockNode,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BlockStats {
    /// Nodes on root paths walked by rerooting.
    pub reroot_touched: u64,
    /// Nodes on compressed paths.
    pub path_nodes: u64,
    pub joins: u64,
    pub compressions: u64,
}

#[derive(Debug, Clone)]
struct Slot<H, P> {
    parent: Option<u32>,
    edge: Option<P>,
    handle: Option<H>,
    mark: bool,
}

#[derive(Debug, Clone)]
pub struct BlockForest<H, P> {
    nodes: Vec<Slot<H, P>>,
    merge: DsuForest<u32>,
    // label = number of live nodes in the tree
    trees: DsuForest<u32>,
    stats: BlockStats,
}

impl<H: Copy, P> Default for BlockForest<H, P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<H: Copy, P> BlockForest<H, P> {
    pub fn new() -> Self {
        BlockForest {
            nodes: Vec::new(),
            merge: DsuForest::new(),
            trees: DsuForest::new(),
            stats: BlockStats::default(),
        }
    }

    /// A new single-node tree.
    pub fn new_node(&mut self, handle: H) -> BlockNode {
        let id = self.nodes.len() as u32;
        self.nodes.push(Slot {
            parent: None,
            edge: None,
            handle: Some(handle),
            mark: false,
        });
        self.merge.make_set(id);
        self.trees.make_set(1);
        BlockNode(id)
    }

    /// Total nodes ever created, merged or not.
    pub fn node_bound(&self) -> usize {
        self.nodes.len()
    }

    pub fn stats(&self) -> BlockStats {
        self.stats
    }

    /// The live node that `x` has been merged into.
    pub fn find(&mut self, x: BlockNode) -> Result<BlockNode, BlockError> {
        if x.0 as usize >= self.nodes.len() {
            return Err(BlockError::UnknownNode(x));
        }
        Ok(BlockNode(self.live(x.0)))
    }

    pub fn is_live(&mut self, x: BlockNode) -> bool {
        (x.0 as usize) < self.nodes.len() && self.live(x.0) == x.0
    }

    pub fn parent(&mut self, x: BlockNode) -> Result<Option<BlockNode>, BlockError> {
        let x = self.find(x)?.0;
        Ok(self.parent_of(x).map(BlockNode))
    }

    /// Payload of the edge from `x` to its parent.
    pub fn edge(&mut self, x: BlockNode) -> Result<Option<&P>, BlockError> {
        let x = self.find(x)?.0;
        Ok(self.nodes[x as usize].edge.as_ref())
    }

    pub fn handle(&mut self, x: BlockNode) -> Result<Option<H>, BlockError> {
        let x = self.find(x)?.0;
        Ok(self.nodes[x as usize].handle)
    }

    pub fn set_handle(&mut self, x: BlockNode, handle: H) -> Result<(), BlockError> {
        let x = self.find(x)?.0;
        self.nodes[x as usize].handle = Some(handle);
        Ok(())
    }

    pub fn same_tree(&mut self, x: BlockNode, y: BlockNode) -> Result<bool, BlockError> {
        self.find(x)?;
        self.find(y)?;
        Ok(self.trees.same_set(ItemId(x.0), ItemId(y.0)))
    }

    /// Number of live nodes in the tree containing `x`.
    pub fn tree_size(&mut self, x: BlockNode) -> Result<usize, BlockError> {
        self.find(x)?;
        Ok(self.trees.label(ItemId(x.0)) as usize)
    }

    /// Live nodes in id order.
    pub fn live_nodes(&mut self) -> Vec<BlockNode> {
        (0..self.nodes.len() as u32)
            .filter(|&i| self.live(i) == i)
            .map(BlockNode)
            .collect()
    }

    /// Finds the tree path between `x` and `y`, merges it into one node and
    /// returns its nodes and edge payloads in order.
    pub fn compress_path(
        &mut self,
        x: BlockNode,
        y: BlockNode,
    ) -> Result<CompressedPath<H, P>, BlockError> {
        let x = self.find(x)?.0;
        let y = self.find(y)?.0;
        if x == y {
            return Err(BlockError::SameNode(BlockNode(x)));
        }
        if !self.trees.same_set(ItemId(x), ItemId(y)) {
            return Err(BlockError::NotSameTree(BlockNode(x), BlockNode(y)));
        }

        let mut up_x = vec![x];
        let mut up_y = vec![y];
        self.nodes[x as usize].mark = true;
        self.nodes[y as usize].mark = true;
        let mut cx = Some(x);
        let mut cy = Some(y);
        let meet = 'climb: loop {
            for (cur, list) in [(&mut cx, &mut up_x), (&mut cy, &mut up_y)] {
                let Some(c) = *cur else { continue };
                match self.parent_of(c) {
                    Some(p) if self.nodes[p as usize].mark => break 'climb p,
                    Some(p) => {
                        self.nodes[p as usize].mark = true;
                        list.push(p);
                        *cur = Some(p);
                    }
                    None => *cur = None,
                }
            }
            assert!(cx.is_some() || cy.is_some(), "climbs in one tree must meet");
        };
        for &v in up_x.iter().chain(&up_y) {
            self.nodes[v as usize].mark = false;
        }

        let cut = |list: &mut Vec<u32>| {
            if let Some(pos) = list.iter().position(|&v| v == meet) {
                list.truncate(pos);
            }
        };
        cut(&mut up_x);
        cut(&mut up_y);

        let mut path = up_x.clone();
        path.push(meet);
        path.extend(up_y.iter().rev());

        let handles = path
            .iter()
            .map(|&v| self.nodes[v as usize].handle)
            .collect();
        let mut payloads = Vec::with_capacity(path.len() - 1);
        for &v in &up_x {
            payloads.push(
                self.nodes[v as usize]
                    .edge
                    .take()
                    .expect("non-root has an edge"),
            );
        }
        let mut tail = Vec::with_capacity(up_y.len());
        for &v in &up_y {
            tail.push(
                self.nodes[v as usize]
                    .edge
                    .take()
                    .expect("non-root has an edge"),
            );
        }
        payloads.extend(tail.into_iter().rev());

        for &v in up_x.iter().chain(&up_y) {
            self.nodes[v as usize].handle = None;
            self.nodes[v as usize].parent = None;
            self.merge.join(ItemId(v), ItemId(meet), meet);
        }
        self.nodes[meet as usize].handle = None;
        let size = self.trees.label(ItemId(meet));
        self.trees
            .set_label(ItemId(meet), size - (path.len() as u32 - 1));

        self.stats.compressions += 1;
        self.stats.path_nodes += path.len() as u64;
        Ok(CompressedPath {
            nodes: path.into_iter().map(BlockNode).collect(),
            handles,
            payloads,
            merged: BlockNode(meet),
        })
    }

    /// Links the trees of `x` and `y` with a new edge carrying `payload`.
    /// The smaller tree (ties: `x`'s) is rerooted at its endpoint.
    pub fn join_trees(&mut self, x: BlockNode, y: BlockNode, payload: P) -> Result<(), BlockError> {
        let x = self.find(x)?.0;
        let y = self.find(y)?.0;
        if self.trees.same_set(ItemId(x), ItemId(y)) {
            return Err(BlockError::SameTree(BlockNode(x), BlockNode(y)));
        }
        let sx = self.trees.label(ItemId(x));
        let sy = self.trees.label(ItemId(y));
        let (child, parent) = if sx <= sy { (x, y) } else { (y, x) };
        self.reroot(child);
        let slot = &mut self.nodes[child as usize];
        slot.parent = Some(parent);
        slot.edge = Some(payload);
        self.trees.join(ItemId(x), ItemId(y), sx + sy);
        self.stats.joins += 1;
        Ok(())
    }

    fn reroot(&mut self, x: u32) {
        let mut path = vec![x];
        while let Some(p) = self.parent_of(*path.last().unwrap()) {
            path.push(p);
        }
        self.stats.reroot_touched += path.len() as u64;
        for i in (1..path.len()).rev() {
            let (v, u) = (path[i], path[i - 1]);
            let e = self.nodes[u as usize].edge.take();
            let slot = &mut self.nodes[v as usize];
            slot.parent = Some(u);
            slot.edge = e;
        }
        self.nodes[x as usize].parent = None;
    }

    /// Checks that live parent links form a forest, that exactly the
    /// non-roots carry payloads, and that tree size counters are exact.
    pub fn validate(&mut self) -> Result<(), String> {
        let live = self.live_nodes();
        let bound = live.len() + 1;
        let mut counts = std::collections::HashMap::new();
        for &BlockNode(v) in &live {
            let has_parent = self.parent_of(v).is_some();
            if has_parent != self.nodes[v as usize].edge.is_some() {
                return Err(format!("node {v}: payload present iff non-root violated"));
            }
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent_of(cur) {
                if !self.trees.same_set(ItemId(p), ItemId(cur)) {
                    return Err(format!("node {cur} has parent {p} in another tree"));
                }
                cur = p;
                steps += 1;
                if steps > bound {
                    return Err(format!("cycle through node {v}"));
                }
            }
            let root = self.trees.root(ItemId(v));
            *counts.entry(root).or_insert(0u32) += 1;
        }
        for (root, count) in counts {
            let label = self.trees.label(root);
            if label != count {
                return Err(format!("tree {root:?} counts {label} nodes, found {count}"));
            }
        }
        Ok(())
    }

    #[inline]
    fn live(&mut self, x: u32) -> u32 {
        self.merge.label(ItemId(x))
    }

    #[inline]
    fn parent_of(&mut self, x: u32) -> Option<u32> {
        let p = self.nodes[x as usize].parent?;
        Some(self.live(p))
    }
}
