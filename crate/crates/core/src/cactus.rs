//! Cactuses of 3-edge-connected components.
//!
//! A cactus is stored as a rooted tree alternating between real nodes and
//! cycle nodes. Each cycle owns a circular doubly-linked list with one entry
//! per member; the entry of the cycle's parent is reached only through the
//! cycle's own `parent_entry` pointer. Edge payloads live in slots shared by
//! the two entries they join, so `e.right_edge == e.right.left_edge` holds by
//! construction. Merged real nodes collapse through a [`DsuForest`].

use std::collections::HashMap;

use thiserror::Error;

use crate::dsu::{DsuForest, ItemId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CactusNode(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("unknown cactus node {0:?}")]
    UnknownNode(CactusNode),
    #[error("unknown or dissolved cycle {0:?}")]
    UnknownCycle(CycleId),
    #[error("path endpoints coincide at {0:?}")]
    SameNode(CactusNode),
    #[error("{0:?} and {1:?} lie in different cactuses")]
    NotSameCactus(CactusNode, CactusNode),
    #[error("{0:?} is not on cycle {1:?}")]
    NotOnCycle(CactusNode, CycleId),
    #[error("{0:?} and {1:?} lie in the same cactus")]
    DuplicateCactus(CactusNode, CactusNode),
    #[error("joining needs at least two cactuses")]
    TooFewCactuses,
    #[error("{nodes} nodes but {payloads} payloads")]
    PayloadCount { nodes: usize, payloads: usize },
}

/// Result of [`CactusForest::compress_cycle_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedCyclePath<H, P> {
    /// The cycle-path from `x` to `y`, in order.
    pub nodes: Vec<CactusNode>,
    pub handles: Vec<Option<H>>,
    /// Payloads of cactus edges joining two path members.
    pub payloads: Vec<P>,
    /// The node the path was merged into. Its handle is cleared.
    pub merged: CactusNode,
}

/// Work done on cycles descending from one joined cycle of `size` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OriginStats {
    pub size: usize,
    /// List entries stepped over by segment walks.
    pub walked: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CactusStats {
    pub reroot_touched: u64,
    pub squeezes: u64,
    pub compressions: u64,
    pub joins: u64,
}

#[derive(Debug, Clone)]
struct Real<H> {
    parent_cycle: Option<u32>,
    entry: Option<u32>,
    handle: Option<H>,
    mark: bool,
}

#[derive(Debug, Clone)]
struct Cycle {
    parent_entry: u32,
    len: u32,
    origin: u32,
    alive: bool,
    mark: bool,
}

#[derive(Debug, Clone)]
struct Entry {
    owner: u32,
    cycle: u32,
    left: u32,
    right: u32,
    left_edge: u32,
    right_edge: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TreeNode {
    Real(u32),
    Cycle(u32),
}

#[derive(Debug, Clone)]
pub struct CactusForest<H, P> {
    reals: Vec<Real<H>>,
    cycles: Vec<Cycle>,
    entries: Vec<Entry>,
    edges: Vec<Option<P>>,
    merge: DsuForest<u32>,
    // label = number of live real nodes in the cactus
    cactuses: DsuForest<u32>,
    origins: Vec<OriginStats>,
    stats: CactusStats,
}

impl<H: Copy, P> Default for CactusForest<H, P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<H: Copy, P> CactusForest<H, P> {
    pub fn new() -> Self {
        CactusForest {
            reals: Vec::new(),
            cycles: Vec::new(),
            entries: Vec::new(),
            edges: Vec::new(),
            merge: DsuForest::new(),
            cactuses: DsuForest::new(),
            origins: Vec::new(),
            stats: CactusStats::default(),
        }
    }

    /// A new single-node cactus.
    pub fn new_node(&mut self, handle: H) -> CactusNode {
        let id = self.reals.len() as u32;
        self.reals.push(Real {
            parent_cycle: None,
            entry: None,
            handle: Some(handle),
            mark: false,
        });
        self.merge.make_set(id);
        self.cactuses.make_set(1);
        CactusNode(id)
    }

    pub fn stats(&self) -> CactusStats {
        self.stats
    }

    /// Per joined cycle: its size and the segment-walk work spent on it and
    /// on every cycle split off from it.
    pub fn origin_stats(&self) -> &[OriginStats] {
        &self.origins
    }

    pub fn find(&mut self, x: CactusNode) -> Result<CactusNode, CactusError> {
        if x.0 as usize >= self.reals.len() {
            return Err(CactusError::UnknownNode(x));
        }
        Ok(CactusNode(self.live(x.0)))
    }

    pub fn is_live(&mut self, x: CactusNode) -> bool {
        (x.0 as usize) < self.reals.len() && self.live(x.0) == x.0
    }

    pub fn handle(&mut self, x: CactusNode) -> Result<Option<H>, CactusError> {
        let x = self.find(x)?.0;
        Ok(self.reals[x as usize].handle)
    }

    pub fn set_handle(&mut self, x: CactusNode, handle: H) -> Result<(), CactusError> {
        let x = self.find(x)?.0;
        self.reals[x as usize].handle = Some(handle);
        Ok(())
    }

    pub fn same_cactus(&mut self, x: CactusNode, y: CactusNode) -> Result<bool, CactusError> {
        self.find(x)?;
        self.find(y)?;
        Ok(self.cactuses.same_set(ItemId(x.0), ItemId(y.0)))
    }

    /// Number of live real nodes in the cactus containing `x`.
    pub fn cactus_size(&mut self, x: CactusNode) -> Result<usize, CactusError> {
        self.find(x)?;
        Ok(self.cactuses.label(ItemId(x.0)) as usize)
    }

    /// The cycle `x` hangs from, if `x` is not a root.
    pub fn parent_cycle(&mut self, x: CactusNode) -> Result<Option<CycleId>, CactusError> {
        let x = self.find(x)?.0;
        Ok(self.reals[x as usize].parent_cycle.map(CycleId))
    }

    /// Members of a live cycle, starting at its parent and going right.
    pub fn cycle_members(&mut self, c: CycleId) -> Result<Vec<CactusNode>, CactusError> {
        self.check_cycle(c)?;
        let start = self.cycles[c.0 as usize].parent_entry;
        let mut out = Vec::new();
        let mut e = start;
        loop {
            out.push(CactusNode(self.owner(e)));
            e = self.entries[e as usize].right;
            if e == start {
                break;
            }
        }
        Ok(out)
    }

    pub fn live_nodes(&mut self) -> Vec<CactusNode> {
        (0..self.reals.len() as u32)
            .filter(|&i| self.live(i) == i)
            .map(CactusNode)
            .collect()
    }

    pub fn live_cycles(&self) -> Vec<CycleId> {
        (0..self.cycles.len() as u32)
            .filter(|&c| self.cycles[c as usize].alive)
            .map(CycleId)
            .collect()
    }

    /// The explicit cactus: one `(u, v, payload)` per edge of every live
    /// cycle, walking each list rightwards from the parent entry.
    pub fn expand(&mut self) -> Vec<(CactusNode, CactusNode, &P)> {
        let mut raw = Vec::new();
        for c in self.live_cycles() {
            let start = self.cycles[c.0 as usize].parent_entry;
            let mut e = start;
            loop {
                let r = self.entries[e as usize].right;
                let slot = self.entries[e as usize].right_edge;
                raw.push((self.owner(e), self.owner(r), slot));
                e = r;
                if e == start {
                    break;
                }
            }
        }
        raw.into_iter()
            .map(|(u, v, s)| {
                let p = self.edges[s as usize].as_ref().expect("live edge slot");
                (CactusNode(u), CactusNode(v), p)
            })
            .collect()
    }

    /// Merges `u` and `v`, two members of cycle `c`, splitting `c` into at most
    /// two residual cycles. Returns the payloads of the edges that joined
    /// `u` and `v` directly.
    pub fn squeeze_cycle(
        &mut self,
        u: CactusNode,
        v: CactusNode,
        c: CycleId,
    ) -> Result<Vec<P>, CactusError> {
        self.check_cycle(c)?;
        let u = self.find(u)?;
        let v = self.find(v)?;
        if u == v {
            return Err(CactusError::SameNode(u));
        }
        let eu = self
            .entry_on(u.0, c.0)
            .ok_or(CactusError::NotOnCycle(u, c))?;
        let ev = self
            .entry_on(v.0, c.0)
            .ok_or(CactusError::NotOnCycle(v, c))?;
        let out = self.squeeze(eu, ev, c.0);
        let size = self.cactuses.label(ItemId(u.0));
        self.cactuses.set_label(ItemId(u.0), size - 1);
        let m = self.live(u.0);
        self.reals[m as usize].handle = None;
        Ok(out)
    }

    /// Finds the cycle-path between `x` and `y`, squeezes every cycle it
    /// crosses and merges the path into one node.
    pub fn compress_cycle_path(
        &mut self,
        x: CactusNode,
        y: CactusNode,
    ) -> Result<CompressedCyclePath<H, P>, CactusError> {
        let x = self.find(x)?.0;
        let y = self.find(y)?.0;
        if x == y {
            return Err(CactusError::SameNode(CactusNode(x)));
        }
        if !self.cactuses.same_set(ItemId(x), ItemId(y)) {
            return Err(CactusError::NotSameCactus(CactusNode(x), CactusNode(y)));
        }

        let mut up_x = vec![TreeNode::Real(x)];
        let mut up_y = vec![TreeNode::Real(y)];
        self.set_mark(TreeNode::Real(x), true);
        self.set_mark(TreeNode::Real(y), true);
        let mut cx = Some(TreeNode::Real(x));
        let mut cy = Some(TreeNode::Real(y));
        let meet = 'climb: loop {
            for (cur, list) in [(&mut cx, &mut up_x), (&mut cy, &mut up_y)] {
                let Some(c) = *cur else { continue };
                match self.tree_parent(c) {
                    Some(p) if self.marked(p) => break 'climb p,
                    Some(p) => {
                        self.set_mark(p, true);
                        list.push(p);
                        *cur = Some(p);
                    }
                    None => *cur = None,
                }
            }
            assert!(
                cx.is_some() || cy.is_some(),
                "climbs in one cactus must meet"
            );
        };
        for &t in up_x.iter().chain(&up_y) {
            self.set_mark(t, false);
        }
        for list in [&mut up_x, &mut up_y] {
            if let Some(pos) = list.iter().position(|&t| t == meet) {
                list.truncate(pos);
            }
        }

        let reals_of = |list: &[TreeNode]| -> Vec<u32> {
            list.iter()
                .filter_map(|t| match *t {
                    TreeNode::Real(r) => Some(r),
                    TreeNode::Cycle(_) => None,
                })
                .collect()
        };
        let xs = reals_of(&up_x);
        let ys = reals_of(&up_y);
        let mut path = xs.clone();
        if let TreeNode::Real(z) = meet {
            path.push(z);
        }
        path.extend(ys.iter().rev());
        let handles = path
            .iter()
            .map(|&r| self.reals[r as usize].handle)
            .collect();

        let mut payloads = self.squeeze_upwards(&up_x);
        let mut tail = self.squeeze_upwards(&up_y);
        if let TreeNode::Cycle(z) = meet {
            let a = *xs.last().expect("x side reaches the meet cycle");
            let b = *ys.last().expect("y side reaches the meet cycle");
            let ea = self.reals[a as usize].entry.expect("child of meet cycle");
            let eb = self.reals[b as usize].entry.expect("child of meet cycle");
            payloads.extend(self.squeeze(ea, eb, z));
        }
        tail.reverse();
        payloads.extend(tail);

        let merged = self.live(x);
        debug_assert_eq!(merged, self.live(y));
        self.reals[merged as usize].handle = None;
        let size = self.cactuses.label(ItemId(merged));
        self.cactuses
            .set_label(ItemId(merged), size - (path.len() as u32 - 1));
        self.stats.compressions += 1;
        Ok(CompressedCyclePath {
            nodes: path.into_iter().map(CactusNode).collect(),
            handles,
            payloads,
            merged: CactusNode(merged),
        })
    }

    /// Links the cactuses of `xs` with a new cycle `xs[0], xs[1], …` where
    /// `payloads[i]` rides on the edge `(xs[i], xs[(i + 1) % k])`. Every
    /// cactus except the first largest one is rerooted at its member.
    pub fn join_cactuses(
        &mut self,
        xs: &[CactusNode],
        payloads: Vec<P>,
    ) -> Result<(), CactusError> {
        let k = xs.len();
        if k < 2 {
            return Err(CactusError::TooFewCactuses);
        }
        if payloads.len() != k {
            return Err(CactusError::PayloadCount {
                nodes: k,
                payloads: payloads.len(),
            });
        }
        let mut live = Vec::with_capacity(k);
        let mut seen: HashMap<ItemId, CactusNode> = HashMap::with_capacity(k);
        for &x in xs {
            let l = self.find(x)?.0;
            let root = self.cactuses.root(ItemId(l));
            if let Some(&prev) = seen.get(&root) {
                return Err(CactusError::DuplicateCactus(prev, x));
            }
            seen.insert(root, x);
            live.push(l);
        }
        let sizes: Vec<u32> = live
            .iter()
            .map(|&l| self.cactuses.label(ItemId(l)))
            .collect();
        let largest = (0..k).fold(0, |best, i| if sizes[i] > sizes[best] { i } else { best });
        for (i, &l) in live.iter().enumerate() {
            if i != largest {
                self.reroot(l);
            }
        }

        let c = self.cycles.len() as u32;
        let origin = self.origins.len() as u32;
        self.origins.push(OriginStats { size: k, walked: 0 });
        let base_entry = self.entries.len() as u32;
        let base_edge = self.edges.len() as u32;
        self.edges.extend(payloads.into_iter().map(Some));
        for (i, &l) in live.iter().enumerate() {
            let i = i as u32;
            let k = k as u32;
            self.entries.push(Entry {
                owner: l,
                cycle: c,
                left: base_entry + (i + k - 1) % k,
                right: base_entry + (i + 1) % k,
                left_edge: base_edge + (i + k - 1) % k,
                right_edge: base_edge + i,
            });
        }
        self.cycles.push(Cycle {
            parent_entry: base_entry + largest as u32,
            len: k as u32,
            origin,
            alive: true,
            mark: false,
        });
        for (i, &l) in live.iter().enumerate() {
            if i != largest {
                let r = &mut self.reals[l as usize];
                r.parent_cycle = Some(c);
                r.entry = Some(base_entry + i as u32);
            }
        }
        let total: u32 = sizes.iter().sum();
        for &l in &live[1..] {
            self.cactuses.join(ItemId(live[0]), ItemId(l), total);
        }
        self.stats.joins += 1;
        Ok(())
    }

    /// Structural check of the live structure: list links, shared edge slots,
    /// entry ownership, alternating acyclic parent chains and size counters.
    pub fn validate(&mut self) -> Result<(), String> {
        let mut children_seen: HashMap<u32, usize> = HashMap::new();
        for c in self.live_cycles() {
            let c = c.0;
            let start = self.cycles[c as usize].parent_entry;
            let mut e = start;
            let mut len = 0u32;
            let mut owners = Vec::new();
            loop {
                let entry = self.entries[e as usize].clone();
                if entry.cycle != c {
                    return Err(format!(
                        "entry {e} lists cycle {} but sits on {c}",
                        entry.cycle
                    ));
                }
                if self.entries[entry.right as usize].left != e {
                    return Err(format!("entry {e}: right.left is not itself"));
                }
                if self.entries[entry.right as usize].left_edge != entry.right_edge {
                    return Err(format!("entry {e}: rightEdge differs from right.leftEdge"));
                }
                if self.edges[entry.right_edge as usize].is_none() {
                    return Err(format!("entry {e}: right edge slot is empty"));
                }
                let owner = self.owner(e);
                owners.push(owner);
                if e != start {
                    let r = &self.reals[owner as usize];
                    if r.parent_cycle != Some(c) || r.entry != Some(e) {
                        return Err(format!(
                            "real {owner} and its entry {e} on cycle {c} disagree"
                        ));
                    }
                    *children_seen.entry(c).or_insert(0) += 1;
                }
                len += 1;
                if len as usize > self.entries.len() {
                    return Err(format!("list of cycle {c} does not close"));
                }
                e = entry.right;
                if e == start {
                    break;
                }
            }
            if len < 2 {
                return Err(format!("cycle {c} has {len} entries"));
            }
            if len != self.cycles[c as usize].len {
                return Err(format!(
                    "cycle {c} records length {} but has {len}",
                    self.cycles[c as usize].len
                ));
            }
            owners.sort_unstable();
            if owners.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("cycle {c} lists a node twice"));
            }
        }

        let live = self.live_nodes();
        let bound = live.len() + self.cycles.len() + 1;
        let mut counts: HashMap<ItemId, u32> = HashMap::new();
        let mut children_expected: HashMap<u32, usize> = HashMap::new();
        for &CactusNode(v) in &live {
            if let Some(c) = self.reals[v as usize].parent_cycle {
                if !self.cycles[c as usize].alive {
                    return Err(format!("real {v} hangs from dissolved cycle {c}"));
                }
                *children_expected.entry(c).or_insert(0) += 1;
            } else if self.reals[v as usize].entry.is_some() {
                return Err(format!("root {v} keeps an entry"));
            }
            let mut cur = TreeNode::Real(v);
            let mut steps = 0;
            while let Some(p) = self.tree_parent(cur) {
                match (cur, p) {
                    (TreeNode::Real(_), TreeNode::Cycle(_))
                    | (TreeNode::Cycle(_), TreeNode::Real(_)) => {}
                    _ => return Err("parent chain does not alternate".into()),
                }
                if let TreeNode::Real(r) = p {
                    if !self.cactuses.same_set(ItemId(r), ItemId(v)) {
                        return Err(format!("real {v} climbs into another cactus"));
                    }
                }
                cur = p;
                steps += 1;
                if steps > bound {
                    return Err(format!("cycle in parent chain from {v}"));
                }
            }
            *counts.entry(self.cactuses.root(ItemId(v))).or_insert(0) += 1;
        }
        if children_expected != children_seen {
            return Err("child entries and parent pointers disagree".into());
        }
        for (root, count) in counts {
            let label = self.cactuses.label(root);
            if label != count {
                return Err(format!(
                    "cactus {root:?} counts {label} nodes, found {count}"
                ));
            }
        }
        Ok(())
    }

    // ---- internals ----

    #[inline]
    fn live(&mut self, x: u32) -> u32 {
        self.merge.label(ItemId(x))
    }

    #[inline]
    fn owner(&mut self, e: u32) -> u32 {
        let o = self.entries[e as usize].owner;
        self.live(o)
    }

    fn check_cycle(&self, c: CycleId) -> Result<(), CactusError> {
        match self.cycles.get(c.0 as usize) {
            Some(cy) if cy.alive => Ok(()),
            _ => Err(CactusError::UnknownCycle(c)),
        }
    }

    /// The entry of live real `r` on cycle `c`, if it is a member.
    fn entry_on(&mut self, r: u32, c: u32) -> Option<u32> {
        let pe = self.cycles[c as usize].parent_entry;
        if self.owner(pe) == r {
            return Some(pe);
        }
        let real = &self.reals[r as usize];
        (real.parent_cycle == Some(c)).then(|| real.entry.unwrap())
    }

    fn tree_parent(&mut self, t: TreeNode) -> Option<TreeNode> {
        match t {
            TreeNode::Real(r) => self.reals[r as usize].parent_cycle.map(TreeNode::Cycle),
            TreeNode::Cycle(c) => {
                let pe = self.cycles[c as usize].parent_entry;
                Some(TreeNode::Real(self.owner(pe)))
            }
        }
    }

    fn marked(&self, t: TreeNode) -> bool {
        match t {
            TreeNode::Real(r) => self.reals[r as usize].mark,
            TreeNode::Cycle(c) => self.cycles[c as usize].mark,
        }
    }

    fn set_mark(&mut self, t: TreeNode, on: bool) {
        match t {
            TreeNode::Real(r) => self.reals[r as usize].mark = on,
            TreeNode::Cycle(c) => self.cycles[c as usize].mark = on,
        }
    }

    /// Ancestor squeezes along one climbed side: each `real, cycle` pair is
    /// squeezed against the cycle's parent, which is the next real up (or the
    /// meet node).
    fn squeeze_upwards(&mut self, side: &[TreeNode]) -> Vec<P> {
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < side.len() {
            let TreeNode::Real(r) = side[i] else {
                unreachable!("sides alternate from a real")
            };
            let TreeNode::Cycle(c) = side[i + 1] else {
                unreachable!("sides alternate from a real")
            };
            let er = self.reals[r as usize].entry.expect("child of its cycle");
            let pe = self.cycles[c as usize].parent_entry;
            out.extend(self.squeeze(er, pe, c));
            i += 2;
        }
        out
    }

    /// Core squeeze on the list of cycle `c` at entries `a` (from `u`) and `b`
    /// (from `v`). The list reads `a, arc1…, b, arc2…` going right.
    fn squeeze(&mut self, a: u32, b: u32, c: u32) -> Vec<P> {
        self.stats.squeezes += 1;
        let pe = self.cycles[c as usize].parent_entry;
        let ru = self.owner(a);
        let rv = self.owner(b);
        let len = self.cycles[c as usize].len;
        let arc1_empty = self.entries[a as usize].right == b;
        let arc2_empty = self.entries[b as usize].right == a;

        // Size the arcs. With both non-empty, walk left from `a` (covering
        // arc2) and from `b` (covering arc1) in turn; the first to arrive has
        // walked the shorter arc, and `a`'s walk wins ties.
        let mut walked_arc2: Option<Vec<u32>> = None;
        let mut walked_arc1: Option<Vec<u32>> = None;
        if !arc1_empty && !arc2_empty {
            let mut seg_a = Vec::new();
            let mut seg_b = Vec::new();
            let mut pa = self.entries[a as usize].left;
            let mut pb = self.entries[b as usize].left;
            let mut steps = 0u64;
            loop {
                steps += 1;
                if pa == b {
                    walked_arc2 = Some(seg_a);
                    break;
                }
                seg_a.push(pa);
                pa = self.entries[pa as usize].left;
                steps += 1;
                if pb == a {
                    walked_arc1 = Some(seg_b);
                    break;
                }
                seg_b.push(pb);
                pb = self.entries[pb as usize].left;
            }
            let origin = self.cycles[c as usize].origin as usize;
            self.origins[origin].walked += steps;
        }

        // Relink. Entry `a` becomes the merged node's entry on the residual
        // cycle of arc1, entry `b` on that of arc2.
        let a_left = self.entries[a as usize].left;
        let a_left_edge = self.entries[a as usize].left_edge;
        let b_left = self.entries[b as usize].left;
        let b_left_edge = self.entries[b as usize].left_edge;
        let mut out = Vec::new();
        if arc1_empty {
            out.push(self.take_edge(self.entries[a as usize].right_edge));
        } else {
            self.entries[a as usize].left = b_left;
            self.entries[a as usize].left_edge = b_left_edge;
            self.entries[b_left as usize].right = a;
        }
        if arc2_empty {
            out.push(self.take_edge(self.entries[b as usize].right_edge));
        } else {
            self.entries[b as usize].left = a_left;
            self.entries[b as usize].left_edge = a_left_edge;
            self.entries[a_left as usize].right = b;
        }

        // Residuals as (m-entry, arc length, walked arc entries). The moved
        // residual is the walked one; a lone residual stays in place.
        let ancestor = a == pe || b == pe;
        let survivor = if ancestor { self.owner(pe) } else { rv };
        struct Residual {
            m_entry: u32,
            len: u32,
            arc: Option<Vec<u32>>,
        }
        let (kept, moved) = match (arc1_empty, arc2_empty) {
            (true, true) => (None, None),
            (false, true) => (
                Some(Residual {
                    m_entry: a,
                    len: len - 1,
                    arc: None,
                }),
                None,
            ),
            (true, false) => (
                Some(Residual {
                    m_entry: b,
                    len: len - 1,
                    arc: None,
                }),
                None,
            ),
            (false, false) => {
                if let Some(arc) = walked_arc2 {
                    let l2 = arc.len() as u32;
                    (
                        Some(Residual {
                            m_entry: a,
                            len: len - l2 - 1,
                            arc: None,
                        }),
                        Some(Residual {
                            m_entry: b,
                            len: l2 + 1,
                            arc: Some(arc),
                        }),
                    )
                } else {
                    let arc = walked_arc1.expect("one walk finished");
                    let l1 = arc.len() as u32;
                    (
                        Some(Residual {
                            m_entry: b,
                            len: len - l1 - 1,
                            arc: None,
                        }),
                        Some(Residual {
                            m_entry: a,
                            len: l1 + 1,
                            arc: Some(arc),
                        }),
                    )
                }
            }
        };
        if kept.is_none() {
            self.cycles[c as usize].alive = false;
        }
        let moved_id = moved.as_ref().map(|m| {
            let id = self.cycles.len() as u32;
            let origin = self.cycles[c as usize].origin;
            self.cycles.push(Cycle {
                parent_entry: m.m_entry,
                len: m.len,
                origin,
                alive: true,
                mark: false,
            });
            self.entries[m.m_entry as usize].cycle = id;
            for &e in m.arc.as_ref().unwrap() {
                self.entries[e as usize].cycle = id;
                if e != pe {
                    let r = self.owner(e);
                    self.reals[r as usize].parent_cycle = Some(id);
                }
            }
            id
        });
        if let Some(k) = &kept {
            self.cycles[c as usize].len = k.len;
        }

        if ancestor {
            if let Some(k) = &kept {
                self.cycles[c as usize].parent_entry = k.m_entry;
            }
            // the moved residual already points at its m-entry
        } else {
            let up_is_moved = moved
                .as_ref()
                .is_some_and(|m| m.arc.as_ref().unwrap().contains(&pe));
            let s = &mut self.reals[survivor as usize];
            if up_is_moved {
                let m = moved.as_ref().unwrap();
                let id = moved_id.unwrap();
                self.cycles[id as usize].parent_entry = pe;
                s.parent_cycle = Some(id);
                s.entry = Some(m.m_entry);
                let k = kept.as_ref().expect("residual without the parent exists");
                self.cycles[c as usize].parent_entry = k.m_entry;
            } else {
                let k = kept.as_ref().expect("residual with the parent exists");
                s.parent_cycle = Some(c);
                s.entry = Some(k.m_entry);
                // c keeps `pe`; the moved residual hangs below the survivor
            }
        }

        self.merge.join(ItemId(ru), ItemId(rv), survivor);
        out
    }

    fn take_edge(&mut self, slot: u32) -> P {
        self.edges[slot as usize]
            .take()
            .expect("edge slot taken twice")
    }

    fn reroot(&mut self, x: u32) {
        let mut reals = vec![x];
        let mut cycles = Vec::new();
        while let Some(c) = self.reals[*reals.last().unwrap() as usize].parent_cycle {
            cycles.push(c);
            let pe = self.cycles[c as usize].parent_entry;
            let up = self.owner(pe);
            reals.push(up);
        }
        self.stats.reroot_touched += reals.len() as u64;
        for j in (0..cycles.len()).rev() {
            let c = cycles[j];
            let (child, up) = (reals[j], reals[j + 1]);
            let old_pe = self.cycles[c as usize].parent_entry;
            let old_entry = self.reals[child as usize].entry.unwrap();
            self.cycles[c as usize].parent_entry = old_entry;
            let r = &mut self.reals[up as usize];
            r.parent_cycle = Some(c);
            r.entry = Some(old_pe);
        }
        let r = &mut self.reals[x as usize];
        r.parent_cycle = None;
        r.entry = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Forest = CactusForest<u32, &'static str>;

    fn cycle(f: &mut Forest, names: &[&'static str], payloads: &[&'static str]) -> Vec<CactusNode> {
        let nodes: Vec<_> = (0..names.len() as u32).map(|i| f.new_node(i)).collect();
        f.join_cactuses(&nodes, payloads.to_vec()).unwrap();
        nodes
    }

    fn edge_pairs(f: &mut Forest) -> Vec<(CactusNode, CactusNode, &'static str)> {
        let mut v: Vec<_> = f
            .expand()
            .into_iter()
            .map(|(a, b, &p)| if a <= b { (a, b, p) } else { (b, a, p) })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn singleton_rejections() {
        let mut f = Forest::new();
        let a = f.new_node(0);
        let b = f.new_node(1);
        assert_eq!(
            f.compress_cycle_path(a, a).unwrap_err(),
            CactusError::SameNode(a)
        );
        assert_eq!(
            f.compress_cycle_path(a, b).unwrap_err(),
            CactusError::NotSameCactus(a, b)
        );
        assert_eq!(
            f.join_cactuses(&[a], vec!["x"]).unwrap_err(),
            CactusError::TooFewCactuses
        );
    }

    #[test]
    fn two_cycle_returns_both_payloads() {
        let mut f = Forest::new();
        let n = cycle(&mut f, &["a", "b"], &["p", "q"]);
        f.validate().unwrap();
        let mut r = f.compress_cycle_path(n[0], n[1]).unwrap();
        r.payloads.sort();
        assert_eq!(r.payloads, vec!["p", "q"]);
        assert!(f.live_cycles().is_empty());
        assert_eq!(f.cactus_size(n[0]).unwrap(), 1);
        f.validate().unwrap();
    }

    #[test]
    fn triangle_any_pair_one_payload() {
        for (i, j) in [(0, 1), (1, 2), (2, 0), (1, 0)] {
            let mut f = Forest::new();
            let n = cycle(&mut f, &["a", "b", "c"], &["ab", "bc", "ca"]);
            let r = f.compress_cycle_path(n[i], n[j]).unwrap();
            assert_eq!(r.payloads.len(), 1);
            assert_eq!(r.nodes, vec![n[i], n[j]]);
            f.validate().unwrap();
            assert_eq!(f.expand().len(), 2);
        }
    }

    #[test]
    fn four_cycle_opposite() {
        let mut f = Forest::new();
        let n = cycle(&mut f, &["a", "b", "c", "d"], &["ab", "bc", "cd", "da"]);
        let r = f.compress_cycle_path(n[0], n[2]).unwrap();
        assert!(r.payloads.is_empty());
        assert_eq!(r.nodes, vec![n[0], n[2]]);
        f.validate().unwrap();
        assert_eq!(f.live_cycles().len(), 2);
        let z = r.merged;
        let (b, d) = (n[1], n[3]);
        let mut want = vec![
            (z.min(b), z.max(b), "ab"),
            (z.min(b), z.max(b), "bc"),
            (z.min(d), z.max(d), "cd"),
            (z.min(d), z.max(d), "da"),
        ];
        want.sort();
        assert_eq!(edge_pairs(&mut f), want);
    }

    #[test]
    fn four_cycle_adjacent() {
        let mut f = Forest::new();
        let n = cycle(&mut f, &["a", "b", "c", "d"], &["ab", "bc", "cd", "da"]);
        let r = f.compress_cycle_path(n[0], n[1]).unwrap();
        assert_eq!(r.payloads, vec!["ab"]);
        f.validate().unwrap();
        assert_eq!(f.live_cycles().len(), 1);
        assert_eq!(f.expand().len(), 3);
    }

    #[test]
    fn two_triangles_sharing_a_node() {
        let mut f = Forest::new();
        let t1 = cycle(&mut f, &["x", "m", "p"], &["xm", "mp", "px"]);
        let y = f.new_node(10);
        let q = f.new_node(11);
        // second triangle through m
        f.join_cactuses(&[t1[1], y, q], vec!["my", "yq", "qm"])
            .unwrap();
        f.validate().unwrap();
        let r = f.compress_cycle_path(t1[0], y).unwrap();
        assert_eq!(r.nodes, vec![t1[0], t1[1], y]);
        assert_eq!(r.payloads.len(), 2);
        f.validate().unwrap();
    }

    #[test]
    fn sibling_squeeze_opposite_children() {
        // 6-cycle rooted at r; squeeze two children with the parent on the
        // long side and on the short side.
        for (i, j) in [(1, 3), (2, 5), (1, 4), (5, 2)] {
            let mut f = Forest::new();
            let n = cycle(
                &mut f,
                &["r", "a", "b", "c", "d", "e"],
                &["1", "2", "3", "4", "5", "6"],
            );
            let r = f.compress_cycle_path(n[i], n[j]).unwrap();
            assert_eq!(r.nodes.len(), 2);
            assert!(r.payloads.is_empty());
            f.validate().unwrap();
            assert_eq!(f.expand().len(), 6);
        }
    }

    #[test]
    fn join_reroots_deep_member() {
        let mut f = Forest::new();
        let big = cycle(&mut f, &["a", "b", "c", "d"], &["1", "2", "3", "4"]);
        let small = cycle(&mut f, &["e", "g"], &["5", "6"]);
        let h = f.new_node(9);
        f.join_cactuses(&[small[1], h], vec!["7", "8"]).unwrap();
        // `h`'s cactus now has 3 nodes; join it at h, deep below its root
        f.join_cactuses(&[h, big[2]], vec!["9", "10"]).unwrap();
        f.validate().unwrap();
        assert_eq!(f.cactus_size(h).unwrap(), 7);
        let r = f.compress_cycle_path(small[0], big[0]).unwrap();
        assert_eq!(r.nodes, vec![small[0], small[1], h, big[2], big[0]]);
        f.validate().unwrap();
    }
}
