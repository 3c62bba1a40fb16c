//! Explicit reference models for the block and cactus forests, plus a
//! structural cactus check on edge lists.

#![allow(dead_code)]

use std::collections::VecDeque;

use eccforge_core::{BlockForest, BlockNode, CactusForest, CactusNode};
use rand::Rng;

pub type Payload = u32;

#[derive(Debug, Clone, Copy, Default)]
pub struct Episode {
    pub ops: usize,
    pub joins: usize,
    pub compressions: usize,
}

/// Nodes merged into classes by naive relabelling, joined by an explicit
/// list of payload-carrying edges over original node ids.
#[derive(Debug, Clone, Default)]
pub struct ShadowGraph {
    class_of: Vec<usize>,
    pub handle: Vec<u32>,
    edges: Vec<(usize, usize, Payload)>,
}

impl ShadowGraph {
    pub fn add_node(&mut self, handle: u32) -> usize {
        let id = self.class_of.len();
        self.class_of.push(id);
        self.handle.push(handle);
        id
    }

    pub fn node_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn live_classes(&self) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&i| self.class_of[i] == i)
            .collect()
    }

    pub fn add_edge(&mut self, a: usize, b: usize, p: Payload) {
        self.edges.push((a, b, p));
    }

    /// `(class, class, payload)` per edge, endpoints ordered, sorted.
    pub fn edge_multiset(&self) -> Vec<(usize, usize, Payload)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b, p)| {
                let (a, b) = (self.class(a), self.class(b));
                (a.min(b), a.max(b), p)
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn adjacency(&self, skip: Option<usize>) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.class_of.len()];
        for (i, &(a, b, _)) in self.edges.iter().enumerate() {
            let (a, b) = (self.class(a), self.class(b));
            if Some(a) == skip || Some(b) == skip {
                continue;
            }
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        adj
    }

    /// BFS distances and parent edges from class `s`, avoiding class `skip`.
    fn bfs(&self, s: usize, skip: Option<usize>) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let adj = self.adjacency(skip);
        let mut dist = vec![usize::MAX; self.class_of.len()];
        let mut via = vec![None; self.class_of.len()];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &(w, e) in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = Some((u, e));
                    q.push_back(w);
                }
            }
        }
        (dist, via)
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.bfs(self.class(a), None).0[self.class(b)] != usize::MAX
    }

    pub fn component_size(&self, a: usize) -> usize {
        let dist = self.bfs(self.class(a), None).0;
        self.live_classes()
            .into_iter()
            .filter(|&c| dist[c] != usize::MAX)
            .count()
    }

    /// Merges `classes` into the first one; drops and returns the payloads of
    /// edges that became loops.
    fn merge(&mut self, classes: &[usize]) -> Vec<Payload> {
        let target = classes[0];
        for c in self.class_of.iter_mut() {
            if classes.contains(c) {
                *c = target;
            }
        }
        let mut loops = Vec::new();
        let class_of = &self.class_of;
        self.edges.retain(|&(a, b, p)| {
            let keep = class_of[a] != class_of[b];
            if !keep {
                loops.push(p);
            }
            keep
        });
        loops
    }

    /// Tree path between the classes of `x` and `y`: merges it, returns the
    /// path classes and the payloads along it, both from `x` to `y`.
    pub fn compress_tree_path(&mut self, x: usize, y: usize) -> (Vec<usize>, Vec<Payload>) {
        let (cx, cy) = (self.class(x), self.class(y));
        let (_, via) = self.bfs(cx, None);
        let mut path = vec![cy];
        let mut payloads = Vec::new();
        let mut cur = cy;
        while cur != cx {
            let (p, e) = via[cur].expect("same tree");
            payloads.push(self.edges[e].2);
            path.push(p);
            cur = p;
        }
        path.reverse();
        payloads.reverse();
        let loops = self.merge(&path);
        assert_eq!(loops.len(), payloads.len(), "shadow forest has a cycle");
        (path, payloads)
    }

    /// The endpoints plus every class whose removal separates them, ordered
    /// from `x` to `y`; merges them and returns the classes and the payloads
    /// of edges between them (sorted).
    pub fn compress_separators(&mut self, x: usize, y: usize) -> (Vec<usize>, Vec<Payload>) {
        let (cx, cy) = (self.class(x), self.class(y));
        let (dist, _) = self.bfs(cx, None);
        let mut q: Vec<usize> = self
            .live_classes()
            .into_iter()
            .filter(|&c| {
                c == cx
                    || c == cy
                    || (dist[c] != usize::MAX && self.bfs(cx, Some(c)).0[cy] == usize::MAX)
            })
            .collect();
        q.sort_by_key(|&c| dist[c]);
        let mut loops = self.merge(&q);
        loops.sort_unstable();
        (q, loops)
    }
}

/// Whether every edge of the multigraph lies on exactly one simple cycle:
/// each biconnected block must have as many edges as vertices, and at least
/// two edges.
pub fn is_cactus_edge_set(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return Err(format!("loop at {a}"));
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    struct Walk<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    }
    fn dfs(w: &mut Walk, u: usize, parent_edge: Option<usize>) {
        w.time += 1;
        w.disc[u] = w.time;
        w.low[u] = w.time;
        for i in 0..w.adj[u].len() {
            let (v, e) = w.adj[u][i];
            if Some(e) == parent_edge {
                continue;
            }
            if w.disc[v] == 0 {
                w.stack.push(e);
                dfs(w, v, Some(e));
                w.low[u] = w.low[u].min(w.low[v]);
                if w.low[v] >= w.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = w.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    w.blocks.push(block);
                }
            } else if w.disc[v] < w.disc[u] {
                w.stack.push(e);
                w.low[u] = w.low[u].min(w.disc[v]);
            }
        }
    }
    let mut w = Walk {
        adj: &adj,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..n {
        if w.disc[s] == 0 {
            dfs(&mut w, s, None);
        }
    }
    for block in &w.blocks {
        let mut vs: Vec<usize> = block
            .iter()
            .flat_map(|&e| [edges[e].0, edges[e].1])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        if block.len() < 2 || block.len() != vs.len() {
            return Err(format!("block on {vs:?} has {} edges", block.len()));
        }
    }
    Ok(())
}

#[test]
fn cactus_check_examples() {
    assert!(is_cactus_edge_set(3, &[(0, 1), (1, 2), (2, 0)]).is_ok());
    assert!(is_cactus_edge_set(2, &[(0, 1), (1, 0)]).is_ok());
    assert!(is_cactus_edge_set(2, &[(0, 1)]).is_err());
    assert!(is_cactus_edge_set(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).is_err());
    assert!(is_cactus_edge_set(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).is_ok());
}

/// Random block-forest operations checked against a shadow after each one.
/// Returns the number of operations performed.
pub fn block_episode<R: Rng>(rng: &mut R, ops: usize) -> Result<Episode, String> {
    let mut ep = Episode::default();
    let mut real: BlockForest<u32, Payload> = BlockForest::new();
    let mut shadow = ShadowGraph::default();
    let mut next_payload = 0;
    let mut step = 0;
    while step < ops {
        let n = shadow.node_count();
        if n < 2 || rng.gen_bool(0.15) {
            let id = shadow.add_node(n as u32);
            let b = real.new_node(id as u32);
            if b.0 as usize != id {
                return Err("node ids diverge".into());
            }
        } else {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if shadow.class(a) == shadow.class(b) {
                continue;
            }
            if shadow.connected(a, b) {
                let r = real
                    .compress_path(BlockNode(a as u32), BlockNode(b as u32))
                    .map_err(|e| format!("step {step}: {e}"))?;
                let (path, payloads) = shadow.compress_tree_path(a, b);
                let want: Vec<Option<u32>> = path.iter().map(|&c| Some(c as u32)).collect();
                if r.handles != want || r.payloads != payloads {
                    return Err(format!(
                        "step {step}: path {:?}/{:?}, shadow {want:?}/{payloads:?}",
                        r.handles, r.payloads
                    ));
                }
                real.set_handle(r.merged, shadow.class(a) as u32).unwrap();
                ep.compressions += 1;
            } else {
                next_payload += 1;
                real.join_trees(BlockNode(a as u32), BlockNode(b as u32), next_payload)
                    .map_err(|e| format!("step {step}: {e}"))?;
                shadow.add_edge(a, b, next_payload);
                ep.joins += 1;
            }
        }
        real.validate().map_err(|e| format!("step {step}: {e}"))?;
        check_blocks(&mut real, &shadow).map_err(|e| format!("step {step}: {e}"))?;
        step += 1;
    }
    ep.ops = ops;
    Ok(ep)
}

fn check_blocks(real: &mut BlockForest<u32, Payload>, shadow: &ShadowGraph) -> Result<(), String> {
    let mut edges = Vec::new();
    for x in real.live_nodes() {
        let hx = real.handle(x).unwrap().ok_or("live node without handle")? as usize;
        if hx != shadow.class(x.0 as usize) {
            return Err(format!("{x:?} has handle {hx}"));
        }
        if let Some(p) = real.parent(x).unwrap() {
            let hp = real.handle(p).unwrap().unwrap() as usize;
            let e = *real.edge(x).unwrap().expect("edge to parent");
            edges.push((hx.min(hp), hx.max(hp), e));
        }
    }
    edges.sort_unstable();
    if edges != shadow.edge_multiset() {
        return Err("tree edges differ".into());
    }
    for c in shadow.live_classes() {
        let size = real.tree_size(BlockNode(c as u32)).unwrap();
        if size != shadow.component_size(c) {
            return Err(format!("tree of {c} has {size} nodes"));
        }
    }
    Ok(())
}

/// Random cactus-forest operations checked against a shadow after each one.
pub fn cactus_episode<R: Rng>(rng: &mut R, ops: usize) -> Result<Episode, String> {
    let mut ep = Episode::default();
    let mut real: CactusForest<u32, Payload> = CactusForest::new();
    let mut shadow = ShadowGraph::default();
    let mut next_payload = 0;
    let mut step = 0;
    while step < ops {
        let n = shadow.node_count();
        if n < 2 || rng.gen_bool(0.15) {
            let id = shadow.add_node(n as u32);
            real.new_node(id as u32);
        } else if rng.gen_bool(0.5) {
            let want = rng.gen_range(2..=4);
            let mut picked: Vec<usize> = Vec::new();
            for _ in 0..4 * want {
                let c = rng.gen_range(0..n);
                if picked.len() < want && picked.iter().all(|&p| !shadow.connected(p, c)) {
                    picked.push(c);
                }
            }
            if picked.len() < 2 {
                continue;
            }
            let xs: Vec<CactusNode> = picked.iter().map(|&c| CactusNode(c as u32)).collect();
            let payloads: Vec<Payload> = (0..picked.len())
                .map(|i| next_payload + 1 + i as u32)
                .collect();
            next_payload += picked.len() as u32;
            real.join_cactuses(&xs, payloads.clone())
                .map_err(|e| format!("step {step}: {e}"))?;
            for i in 0..picked.len() {
                shadow.add_edge(picked[i], picked[(i + 1) % picked.len()], payloads[i]);
            }
            ep.joins += 1;
        } else {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if shadow.class(a) == shadow.class(b) || !shadow.connected(a, b) {
                continue;
            }
            let r = real
                .compress_cycle_path(CactusNode(a as u32), CactusNode(b as u32))
                .map_err(|e| format!("step {step}: {e}"))?;
            let (path, payloads) = shadow.compress_separators(a, b);
            let want: Vec<Option<u32>> = path.iter().map(|&c| Some(c as u32)).collect();
            let mut got = r.payloads.clone();
            got.sort_unstable();
            if r.handles != want || got != payloads {
                return Err(format!(
                    "step {step}: path {:?}/{got:?}, shadow {want:?}/{payloads:?}",
                    r.handles
                ));
            }
            real.set_handle(r.merged, shadow.class(a) as u32).unwrap();
            ep.compressions += 1;
        }
        real.validate().map_err(|e| format!("step {step}: {e}"))?;
        check_cactus(&mut real, &shadow).map_err(|e| format!("step {step}: {e}"))?;
        step += 1;
    }
    ep.ops = ops;
    Ok(ep)
}

fn check_cactus(real: &mut CactusForest<u32, Payload>, shadow: &ShadowGraph) -> Result<(), String> {
    let raw: Vec<(CactusNode, CactusNode, Payload)> = real
        .expand()
        .into_iter()
        .map(|(u, v, &p)| (u, v, p))
        .collect();
    let mut edges = Vec::with_capacity(raw.len());
    for (u, v, p) in raw {
        let hu = real.handle(u).unwrap().ok_or("live node without handle")? as usize;
        let hv = real.handle(v).unwrap().ok_or("live node without handle")? as usize;
        edges.push((hu.min(hv), hu.max(hv), p));
    }
    edges.sort_unstable();
    if edges != shadow.edge_multiset() {
        return Err("cactus edges differ".into());
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
    is_cactus_edge_set(shadow.node_count(), &pairs)?;
    for c in shadow.live_classes() {
        let size = real.cactus_size(CactusNode(c as u32)).unwrap();
        if size != shadow.component_size(c) {
            return Err(format!("cactus of {c} has {size} nodes"));
        }
    }
    Ok(())
}
