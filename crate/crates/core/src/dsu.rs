//! Union-find with caller-chosen representatives.
//!
//! Union is by size with path compression; the label stored at a root is
//! independent of which internal item ends up as the root, so callers decide
//! which handle survives a merge without giving up balance. Every set also
//! threads a circular member list so it can be enumerated in time
//! proportional to its size.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DsuError {
    #[error("unknown item {0:?}")]
    UnknownItem(ItemId),
    #[error("{0:?} is not a set root")]
    NotARoot(ItemId),
}

#[derive(Debug, Clone, Default)]
pub struct DsuForest<L> {
    parent: Vec<u32>,
    size: Vec<u32>,
    next: Vec<u32>,
    label: Vec<L>,
    sets: usize,
}

impl<L: Copy> DsuForest<L> {
    pub fn new() -> Self {
        DsuForest {
            parent: Vec::new(),
            size: Vec::new(),
            next: Vec::new(),
            label: Vec::new(),
            sets: 0,
        }
    }

    pub fn make_set(&mut self, label: L) -> ItemId {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.size.push(1);
        self.next.push(id);
        self.label.push(label);
        self.sets += 1;
        ItemId(id)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets.
    #[inline]
    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn contains(&self, x: ItemId) -> bool {
        x.index() < self.parent.len()
    }

    /// Root and label of the set containing `x`.
    pub fn find(&mut self, x: ItemId) -> Result<(ItemId, L), DsuError> {
        if !self.contains(x) {
            return Err(DsuError::UnknownItem(x));
        }
        let r = self.root(x);
        Ok((r, self.label[r.index()]))
    }

    /// Merges the sets of `a` and `b` and labels the result `label`.
    /// Returns whether two distinct sets were joined; uniting items that are
    /// already together only relabels.
    pub fn unite(&mut self, a: ItemId, b: ItemId, label: L) -> Result<bool, DsuError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(DsuError::UnknownItem(x));
            }
        }
        Ok(self.join(a, b, label))
    }

    /// All items in the set rooted at `root`.
    pub fn members(&self, root: ItemId) -> Result<Vec<ItemId>, DsuError> {
        if !self.contains(root) {
            return Err(DsuError::UnknownItem(root));
        }
        if self.parent[root.index()] != root.0 {
            return Err(DsuError::NotARoot(root));
        }
        let mut out = Vec::with_capacity(self.size[root.index()] as usize);
        let mut cur = root.0;
        loop {
            out.push(ItemId(cur));
            cur = self.next[cur as usize];
            if cur == root.0 {
                break;
            }
        }
        Ok(out)
    }

    /// Size of the set containing `x`.
    pub fn set_size(&mut self, x: ItemId) -> usize {
        let r = self.root(x);
        self.size[r.index()] as usize
    }

    /// Current set roots, in item order.
    pub fn roots(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p as usize == i)
            .map(|(i, _)| ItemId(i as u32))
    }

    // Infallible variants for callers that only ever pass ids they were given.

    pub fn root(&mut self, x: ItemId) -> ItemId {
        let mut r = x.0;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut cur = x.0;
        while self.parent[cur as usize] != r {
            let up = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = up;
        }
        ItemId(r)
    }

    #[inline]
    pub fn label(&mut self, x: ItemId) -> L {
        let r = self.root(x);
        self.label[r.index()]
    }

    pub fn set_label(&mut self, x: ItemId, label: L) {
        let r = self.root(x);
        self.label[r.index()] = label;
    }

    pub fn same_set(&mut self, a: ItemId, b: ItemId) -> bool {
        self.root(a) == self.root(b)
    }

    pub fn join(&mut self, a: ItemId, b: ItemId, label: L) -> bool {
        let ra = self.root(a);
        let rb = self.root(b);
        if ra == rb {
            self.label[ra.index()] = label;
            return false;
        }
        let (big, small) = if self.size[ra.index()] >= self.size[rb.index()] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small.index()] = big.0;
        self.size[big.index()] += self.size[small.index()];
        self.next.swap(big.index(), small.index());
        self.label[big.index()] = label;
        self.sets -= 1;
        true
    }
}
