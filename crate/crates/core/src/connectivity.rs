//! Blocks, bridges, relative connectivity and small cuts.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ek, Edge, PlaneGraph, WalkSeq, V};

/// A subgraph given by its vertex and edge sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sub {
    pub verts: BTreeSet<V>,
    pub edges: BTreeSet<Edge>,
}

impl Sub {
    pub fn from_verts(verts: impl IntoIterator<Item = V>) -> Self {
        Sub { verts: verts.into_iter().collect(), edges: BTreeSet::new() }
    }

    /// Vertices and edges of a walk (closing edge included when closed).
    pub fn from_walk(w: &WalkSeq) -> Self {
        Sub { verts: w.verts.iter().copied().collect(), edges: w.edges() }
    }

    pub fn from_path(p: &[V]) -> Self {
        Self::from_walk(&WalkSeq::open(p.to_vec()))
    }

    pub fn from_cycle(c: &[V]) -> Self {
        Self::from_walk(&WalkSeq::closed(c.to_vec()))
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().map(|(a, b)| ek(a, b)).collect();
        let verts = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Sub { verts, edges }
    }

    pub fn union(&self, other: &Sub) -> Sub {
        Sub {
            verts: self.verts.union(&other.verts).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn with_vert(mut self, v: V) -> Sub {
        self.verts.insert(v);
        self
    }
}

/// An `H`-bridge: a chord of `H` or a component of `G - V(H)` with the edges
/// joining it to `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeRec {
    pub vertex_set: BTreeSet<V>,
    pub edge_set: BTreeSet<Edge>,
    pub attachments: BTreeSet<V>,
    pub trivial: bool,
}

impl BridgeRec {
    /// Smallest edge; bridges are edge-disjoint so this identifies the bridge.
    pub fn key(&self) -> Edge {
        *self.edge_set.iter().next().expect("bridge without edges")
    }

    pub fn internal(&self) -> impl Iterator<Item = &V> {
        self.vertex_set.iter().filter(move |v| !self.attachments.contains(v))
    }
}

/// A chain of blocks `b_0, B_1, b_1, ..., B_n, b_n`.
#[derive(Debug, Clone)]
pub struct BlockChain {
    pub cuts: Vec<V>,
    pub blocks: Vec<PlaneGraph>,
}

impl BlockChain {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn start(&self) -> V {
        self.cuts[0]
    }

    pub fn end(&self) -> V {
        *self.cuts.last().unwrap()
    }
}

/// Biconnected decomposition as edge lists, plus isolated vertices as
/// one-vertex blocks. Blocks are ordered by their smallest edge.
pub fn block_edge_sets(g: &PlaneGraph) -> (Vec<Vec<Edge>>, BTreeSet<V>, Vec<V>) {
    let cap = g.cap();
    let mut disc = vec![usize::MAX; cap];
    let mut low = vec![0usize; cap];
    let mut timer = 0;
    let mut blocks: Vec<Vec<Edge>> = Vec::new();
    let mut cut = BTreeSet::new();
    let mut isolated = Vec::new();
    let mut estack: Vec<Edge> = Vec::new();
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            isolated.push(root);
            disc[root] = timer;
            timer += 1;
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(V, V, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            let nbrs = g.rotation(v);
            if *idx < nbrs.len() {
                let w = nbrs[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            cut.insert(p);
                        }
                        let mut blk = Vec::new();
                        while let Some(e) = estack.pop() {
                            blk.push(ek(e.0, e.1));
                            if e == (p, v) {
                                break;
                            }
                        }
                        blk.sort_unstable();
                        blocks.push(blk);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(root);
        }
    }
    blocks.sort();
    (blocks, cut, isolated)
}

/// Blocks of `g` (with inherited embeddings) and its cutvertices.
pub fn blocks(g: &PlaneGraph) -> (Vec<PlaneGraph>, BTreeSet<V>) {
    let (bl, cut, isolated) = block_edge_sets(g);
    let mut out: Vec<PlaneGraph> = bl
        .iter()
        .map(|b| g.edge_subgraph(&b.iter().copied().collect(), &BTreeSet::new(), None))
        .collect();
    for v in isolated {
        out.push(g.induced(&BTreeSet::from([v])));
    }
    (out, cut)
}

/// All `H`-bridges of `g`, sorted by key.
pub fn bridges_of(g: &PlaneGraph, h: &Sub) -> Vec<BridgeRec> {
    let cap = g.cap();
    let mut in_h = vec![false; cap];
    for &v in &h.verts {
        if v < cap {
            in_h[v] = true;
        }
    }
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        if in_h[a] && in_h[b] && !h.edges.contains(&(a, b)) {
            out.push(BridgeRec {
                vertex_set: BTreeSet::from([a, b]),
                edge_set: BTreeSet::from([(a, b)]),
                attachments: BTreeSet::from([a, b]),
                trivial: true,
            });
        }
    }
    let mut seen = vec![false; cap];
    for s in g.vertices() {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut verts = BTreeSet::from([s]);
        let mut edges = BTreeSet::new();
        let mut att = BTreeSet::new();
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in g.rotation(x) {
                edges.insert(ek(x, y));
                if in_h[y] {
                    att.insert(y);
                    verts.insert(y);
                } else if !seen[y] {
                    seen[y] = true;
                    verts.insert(y);
                    q.push_back(y);
                }
            }
        }
        out.push(BridgeRec { vertex_set: verts, edge_set: edges, attachments: att, trivial: false });
    }
    out.sort_by_key(|b| b.edge_set.iter().next().copied());
    out
}

/// Number of paths from `src` to the set `targets`, pairwise disjoint except
/// at `src`, counted up to `limit`.
fn disjoint_paths_to_set(g: &PlaneGraph, src: V, targets: &[bool], limit: usize) -> usize {
    // split graph: v_in = 2v, v_out = 2v+1, sink = 2*cap
    let cap = g.cap();
    let sink = 2 * cap;
    let n = 2 * cap + 1;
    let mut head: Vec<usize> = vec![usize::MAX; n];
    let mut to: Vec<usize> = Vec::new();
    let mut capa: Vec<i32> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    let mut add = |a: usize, b: usize, c: i32, head: &mut Vec<usize>| {
        to.push(b);
        capa.push(c);
        next.push(head[a]);
        head[a] = to.len() - 1;
        to.push(a);
        capa.push(0);
        next.push(head[b]);
        head[b] = to.len() - 1;
    };
    for v in g.vertices() {
        let inner = if v == src { limit as i32 } else { 1 };
        add(2 * v, 2 * v + 1, inner, &mut head);
        for &w in g.rotation(v) {
            add(2 * v + 1, 2 * w, 1, &mut head);
        }
        if targets[v] {
            add(2 * v + 1, sink, 1, &mut head);
        }
    }
    let s = 2 * src + 1;
    let mut flow = 0;
    while flow < limit {
        let mut prev_edge = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == sink {
                break;
            }
            let mut e = head[x];
            while e != usize::MAX {
                let y = to[e];
                if capa[e] > 0 && !seen[y] {
                    seen[y] = true;
                    prev_edge[y] = e;
                    q.push_back(y);
                }
                e = next[e];
            }
        }
        if !seen[sink] {
            break;
        }
        let mut y = sink;
        while y != s {
            let e = prev_edge[y];
            capa[e] -= 1;
            capa[e ^ 1] += 1;
            y = to[e ^ 1];
        }
        flow += 1;
    }
    flow
}

/// `(k, S)`-connectivity: for every `T` with `|T| < k`, every component of
/// `g - T` meets `S`. Decided with the apex construction, one vertex-disjoint
/// path computation per vertex outside `S`.
pub fn is_ks_connected(g: &PlaneGraph, k: usize, s: &BTreeSet<V>) -> Result<bool> {
    Ok(ks_violation(g, k, s)?.is_none())
}

/// The smallest vertex outside `s` with fewer than `k` disjoint paths to `s`.
pub fn ks_violation(g: &PlaneGraph, k: usize, s: &BTreeSet<V>) -> Result<Option<V>> {
    if s.is_empty() {
        return Err(Error::EmptyS);
    }
    if k == 0 {
        return Ok(None);
    }
    let mut target = vec![false; g.cap()];
    for &v in s {
        if v < target.len() && g.has_vertex(v) {
            target[v] = true;
        }
    }
    for v in g.vertices() {
        if target[v] {
            continue;
        }
        if g.degree(v) < k || disjoint_paths_to_set(g, v, &target, k) < k {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Articulation points of `g` restricted to vertices with `alive[v]`.
pub fn articulation_points(g: &PlaneGraph, alive: &[bool]) -> Vec<V> {
    let cap = g.cap();
    let mut disc = vec![usize::MAX; cap];
    let mut low = vec![0usize; cap];
    let mut is_cut = vec![false; cap];
    let mut timer = 0;
    for root in g.vertices() {
        if !alive[root] || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut children = 0;
        let mut stack: Vec<(V, V, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            let nbrs = g.rotation(v);
            if *idx < nbrs.len() {
                let w = nbrs[*idx];
                *idx += 1;
                if w == parent || !alive[w] {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if children > 1 {
            is_cut[root] = true;
        }
    }
    (0..cap).filter(|&v| is_cut[v]).collect()
}

fn count_components(g: &PlaneGraph, alive: &[bool]) -> usize {
    g.components_avoiding(&|v| !alive[v]).len()
}

/// The smallest cutset containing `v` of size at most `max_size`, ties broken
/// by the sorted vertex list. Exhaustive over sets containing `v`.
pub fn find_small_cut_containing(g: &PlaneGraph, v: V, max_size: usize) -> Option<Vec<V>> {
    if !g.has_vertex(v) || max_size == 0 {
        return None;
    }
    let mut alive: Vec<bool> = (0..g.cap()).map(|x| g.has_vertex(x)).collect();
    alive[v] = false;
    if count_components(g, &alive) >= 2 {
        return Some(vec![v]);
    }
    if max_size < 2 {
        return None;
    }
    // g - v is connected (or empty) from here on
    let mut best: Option<Vec<V>> = None;
    for w in articulation_points(g, &alive) {
        let mut c = vec![v, w];
        c.sort_unstable();
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    if best.is_some() || max_size < 3 {
        return best;
    }
    let others: Vec<V> = g.vertices().filter(|&x| x != v).collect();
    for &w in &others {
        alive[w] = false;
        for x in articulation_points(g, &alive) {
            let mut c = vec![v, w, x];
            c.sort_unstable();
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        alive[w] = true;
    }
    best
}

/// All 3-cuts `A` of `g` such that `g - A` has a component avoiding the
/// outer walk. Each cut is returned sorted; the list is sorted.
pub fn internal_3cuts(g: &PlaneGraph) -> Vec<[V; 3]> {
    let outer: BTreeSet<V> = g.outer_walk_verts().into_iter().collect();
    let verts: Vec<V> = g.vertices().collect();
    let mut alive: Vec<bool> = (0..g.cap()).map(|x| g.has_vertex(x)).collect();
    let mut out = Vec::new();
    let n = verts.len();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let a = [verts[i], verts[j], verts[l]];
                for &x in &a {
                    alive[x] = false;
                }
                let comps = g.components_avoiding(&|v| !alive[v]);
                if comps.len() >= 2 && comps.iter().any(|c| c.iter().all(|v| !outer.contains(v))) {
                    out.push(a);
                }
                for &x in &a {
                    alive[x] = true;
                }
            }
        }
    }
    out
}

/// Block index of every edge.
fn edge_block_index(g: &PlaneGraph) -> (Vec<Vec<Edge>>, HashMap<Edge, usize>) {
    let (bl, _, _) = block_edge_sets(g);
    let mut idx = HashMap::new();
    for (i, b) in bl.iter().enumerate() {
        for &e in b {
            idx.insert(e, i);
        }
    }
    (bl, idx)
}

/// The minimal union of blocks of `g` containing the path `p`, in path order.
pub fn chain_along_path(g: &PlaneGraph, p: &[V]) -> Result<BlockChain> {
    if !WalkSeq::open(p.to_vec()).is_path_in(g) {
        return Err(Error::NotAPath(format!("{p:?}")));
    }
    if p.len() == 1 {
        return Ok(BlockChain { cuts: vec![p[0]], blocks: vec![] });
    }
    let (bl, idx) = edge_block_index(g);
    let mut order: Vec<usize> = Vec::new();
    let mut cuts = vec![p[0]];
    for w in p.windows(2) {
        let b = idx[&ek(w[0], w[1])];
        if order.last() != Some(&b) {
            if !order.is_empty() {
                cuts.push(w[0]);
            }
            if order.contains(&b) {
                return Err(Error::NotAPath("path re-enters a block".into()));
            }
            order.push(b);
        }
    }
    cuts.push(*p.last().unwrap());
    let blocks = order
        .iter()
        .map(|&b| g.edge_subgraph(&bl[b].iter().copied().collect(), &BTreeSet::new(), None))
        .collect();
    Ok(BlockChain { cuts, blocks })
}

/// Some shortest `ab`-path by BFS with smallest-id tie-breaking.
pub fn bfs_path(g: &PlaneGraph, a: V, b: V, alive: &dyn Fn(V) -> bool) -> Option<Vec<V>> {
    let mut prev = vec![usize::MAX; g.cap()];
    prev[a] = a;
    let mut q = VecDeque::from([a]);
    while let Some(x) = q.pop_front() {
        if x == b {
            break;
        }
        let mut nb: Vec<V> = g.rotation(x).to_vec();
        nb.sort_unstable();
        for y in nb {
            if prev[y] == usize::MAX && alive(y) {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    Some(path)
}

/// Reads `g` as a chain of blocks from `a` to `b`; fails unless every block
/// of `g` lies on the chain.
pub fn as_chain(g: &PlaneGraph, a: V, b: V) -> Result<BlockChain> {
    if !g.has_vertex(a) || !g.has_vertex(b) {
        return Err(Error::PreconditionFailed(format!("chain ends {a},{b} not in graph")));
    }
    if a == b {
        if g.vertex_count() == 1 {
            return Ok(BlockChain { cuts: vec![a], blocks: vec![] });
        }
        return Err(Error::PreconditionFailed("degenerate chain with extra vertices".into()));
    }
    let p = bfs_path(g, a, b, &|_| true)
        .ok_or_else(|| Error::PreconditionFailed(format!("no path from {a} to {b}")))?;
    let ch = chain_along_path(g, &p)?;
    let covered: usize = ch.blocks.iter().map(|blk| blk.edge_count()).sum();
    let nv: BTreeSet<V> = ch.blocks.iter().flat_map(|blk| blk.vertices()).collect();
    if covered != g.edge_count() || nv.len() != g.vertex_count() {
        return Err(Error::PreconditionFailed(format!("graph is not a chain of blocks from {a} to {b}")));
    }
    Ok(ch)
}

/// Vertex sets of the components of `g - del`.
pub fn components_without(g: &PlaneGraph, del: &HashSet<V>) -> Vec<Vec<V>> {
    g.components_avoiding(&|v| del.contains(&v))
}
