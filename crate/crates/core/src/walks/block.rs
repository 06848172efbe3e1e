//! Exact search for closed 2-walks in small circuit blocks.

use std::collections::{BTreeMap, HashSet};

use crate::circuit::is_circuit_block;
use crate::connectivity::{components_without, internal_3cuts};
use crate::error::{Error, Result};
use crate::graph::{segment, PlaneGraph, WalkSeq, V};

use super::TwoWalk;

/// Largest block the search accepts.
pub const MAX_BLOCK: usize = 14;
const STATE_BUDGET: usize = 4_000_000;

/// A closed 2-walk of a block with, for each twice-visited vertex, the cut of
/// the block that allows it.
#[derive(Debug, Clone)]
pub struct BlockWalk {
    pub walk: TwoWalk,
    pub cuts: BTreeMap<V, Vec<V>>,
}

/// A closed spanning 2-walk of the circuit block `g` starting at `x`, visiting
/// `x` and `y` once. A vertex may be visited twice only if it lies in an
/// internal 3-cut of `g` or in a 2-cut inside `X_g[x, y]` or `X_g[y, x]`.
pub fn two_walk_circuit_block(g: &PlaneGraph, x: V, y: V) -> Result<TwoWalk> {
    Ok(block_walk(g, x, y)?.walk)
}

pub fn block_walk(g: &PlaneGraph, x: V, y: V) -> Result<BlockWalk> {
    if x == y {
        return Err(Error::PreconditionFailed("x and y must differ".into()));
    }
    let n = g.vertex_count();
    if n > MAX_BLOCK {
        return Err(Error::PreconditionFailed(format!("block has {n} vertices, the search takes at most {MAX_BLOCK}")));
    }
    if !is_circuit_block(g) {
        return Err(Error::PreconditionFailed("not a circuit block".into()));
    }
    let ow = g.outer_walk_verts();
    if !ow.contains(&x) || !ow.contains(&y) {
        return Err(Error::PreconditionFailed(format!("{x} and {y} must lie on the outer cycle")));
    }
    let cuts = allowed_twice(g, &ow, x, y)?;
    let verts: Vec<V> = g.vertices().collect();
    let idx = |v: V| verts.binary_search(&v).expect("vertex");
    let adj: Vec<Vec<usize>> = verts.iter().map(|&v| {
        let mut a: Vec<usize> = g.rotation(v).iter().map(|&w| idx(w)).collect();
        a.sort_unstable();
        a
    }).collect();
    let cap: Vec<u8> = verts
        .iter()
        .map(|&v| if v != x && v != y && cuts.contains_key(&v) { 2 } else { 1 })
        .collect();
    let mut s = Search { adj, cap, start: idx(x), failed: HashSet::new() };
    let mut counts = vec![0u8; n];
    counts[s.start] = 1;
    let mut path = vec![s.start];
    if !s.dfs(&mut counts, 0, &mut path, n - 1)? {
        return Err(Error::SearchExhausted(format!("no closed 2-walk through {x} and {y}")));
    }
    let walk = TwoWalk::new(WalkSeq::closed(path.into_iter().map(|i| verts[i]).collect()));
    let cuts = walk.twice_used().into_iter().map(|v| (v, cuts[&v].clone())).collect();
    Ok(BlockWalk { walk, cuts })
}

/// Vertices that may be visited twice, each with the smallest justifying cut.
fn allowed_twice(g: &PlaneGraph, ow: &[V], x: V, y: V) -> Result<BTreeMap<V, Vec<V>>> {
    let mut out: BTreeMap<V, Vec<V>> = BTreeMap::new();
    for side in [segment(ow, x, y)?, segment(ow, y, x)?] {
        let mut s = side.clone();
        s.sort_unstable();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let del: HashSet<V> = HashSet::from([s[i], s[j]]);
                if components_without(g, &del).len() >= 2 {
                    for v in [s[i], s[j]] {
                        let c = vec![s[i], s[j]];
                        out.entry(v).and_modify(|b| *b = (*b).clone().min(c.clone())).or_insert(c);
                    }
                }
            }
        }
    }
    for a in internal_3cuts(g) {
        for v in a {
            out.entry(v).or_insert_with(|| a.to_vec());
        }
    }
    Ok(out)
}

struct Search {
    adj: Vec<Vec<usize>>,
    cap: Vec<u8>,
    start: usize,
    failed: HashSet<(usize, u64)>,
}

impl Search {
    fn dfs(&mut self, counts: &mut [u8], code: u64, path: &mut Vec<usize>, unvisited: usize) -> Result<bool> {
        let cur = *path.last().expect("nonempty");
        if unvisited == 0 && cur != self.start && self.adj[cur].contains(&self.start) {
            return Ok(true);
        }
        if !self.failed.insert((cur, code)) {
            return Ok(false);
        }
        if self.failed.len() > STATE_BUDGET {
            return Err(Error::SearchExhausted("state budget exceeded".into()));
        }
        if !self.can_finish(counts, cur) {
            return Ok(false);
        }
        // fresh vertices first
        let mut next: Vec<usize> =
            self.adj[cur].iter().copied().filter(|&w| w != self.start && counts[w] < self.cap[w]).collect();
        next.sort_by_key(|&w| (counts[w], w));
        for w in next {
            let fresh = counts[w] == 0;
            counts[w] += 1;
            path.push(w);
            let c = code + 3u64.pow(w as u32);
            if self.dfs(counts, c, path, unvisited - usize::from(fresh))? {
                return Ok(true);
            }
            path.pop();
            counts[w] -= 1;
        }
        Ok(false)
    }

    /// Every unvisited vertex and some neighbour of the start must still be
    /// reachable through vertices with spare capacity.
    fn can_finish(&self, counts: &[u8], cur: usize) -> bool {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        seen[cur] = true;
        let mut stack = vec![cur];
        let mut home = self.adj[cur].contains(&self.start);
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if w == self.start {
                    home = true;
                    continue;
                }
                if !seen[w] && counts[w] < self.cap[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        home && (0..n).all(|v| counts[v] > 0 || seen[v])
    }
}
